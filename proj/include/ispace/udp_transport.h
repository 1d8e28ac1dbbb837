// Copyright 2026 The ispace-nav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// UDP datagram transport for Packets (POSIX sockets, IPv4).

#ifndef ISPACE_UDP_TRANSPORT_H_
#define ISPACE_UDP_TRANSPORT_H_

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "ispace/delay_line.h"
#include "ispace/wire.h"

namespace ispace {

class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct UdpAddress {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;  // 0 binds an ephemeral port
};

// One bound socket. Send and Receive may be called from different threads.
class UdpEndpoint {
 public:
  explicit UdpEndpoint(const UdpAddress& bind_address);
  ~UdpEndpoint();
  UdpEndpoint(const UdpEndpoint&) = delete;
  UdpEndpoint& operator=(const UdpEndpoint&) = delete;

  // Actual bound address, with the ephemeral port resolved.
  const UdpAddress& local() const { return local_; }

  // Fire-and-forget. Throws TransportError only on local send failure; an
  // absent peer is not an error.
  void Send(const Packet& packet, const UdpAddress& peer);

  // Waits up to `timeout` for one datagram. A timeout means the packet is
  // treated as lost. Malformed datagrams are skipped.
  std::optional<Packet> Receive(std::chrono::microseconds timeout);

 private:
  int fd_ = -1;
  UdpAddress local_;
};

// Channel over a real UDP hop: Push sends from `tx` to `rx`, Poll drains
// whatever `rx` has received. Outstanding datagrams are waited for up to
// `timeout` per poll, after which they count as lost.
class UdpChannel : public Channel {
 public:
  explicit UdpChannel(std::chrono::microseconds timeout = std::chrono::milliseconds(20));

  void Push(const Packet& packet, double now) override;
  std::vector<Delivery> Poll(double now) override;

  std::uint64_t lost() const { return lost_; }

 private:
  UdpEndpoint rx_;
  UdpEndpoint tx_;
  std::chrono::microseconds timeout_;
  std::uint64_t outstanding_ = 0;
  std::uint64_t lost_ = 0;
};

}  // namespace ispace

#endif  // ISPACE_UDP_TRANSPORT_H_
