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

#include "ispace/udp_transport.h"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

namespace ispace {

namespace {

sockaddr_in ToSockaddr(const UdpAddress& address) {
  sockaddr_in sa{};
  sa.sin_family = AF_INET;
  sa.sin_port = htons(address.port);
  if (inet_pton(AF_INET, address.host.c_str(), &sa.sin_addr) != 1) {
    throw TransportError("invalid IPv4 address '" + address.host + "'");
  }
  return sa;
}

std::string Errno(const char* what) { return std::string(what) + ": " + std::strerror(errno); }

}  // namespace

UdpEndpoint::UdpEndpoint(const UdpAddress& bind_address) {
  const sockaddr_in sa = ToSockaddr(bind_address);
  fd_ = ::socket(AF_INET, SOCK_DGRAM, 0);
  if (fd_ < 0) throw TransportError(Errno("socket"));
  if (::bind(fd_, reinterpret_cast<const sockaddr*>(&sa), sizeof(sa)) != 0) {
    const std::string msg = Errno("bind");
    ::close(fd_);
    throw TransportError(msg + " (" + bind_address.host + ":" +
                         std::to_string(bind_address.port) + ")");
  }
  sockaddr_in bound{};
  socklen_t len = sizeof(bound);
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&bound), &len);
  local_ = {bind_address.host, ntohs(bound.sin_port)};
}

UdpEndpoint::~UdpEndpoint() {
  if (fd_ >= 0) ::close(fd_);
}

void UdpEndpoint::Send(const Packet& packet, const UdpAddress& peer) {
  const std::vector<std::uint8_t> bytes = EncodePacket(packet);
  const sockaddr_in sa = ToSockaddr(peer);
  const ssize_t n = ::sendto(fd_, bytes.data(), bytes.size(), 0,
                             reinterpret_cast<const sockaddr*>(&sa), sizeof(sa));
  if (n < 0) {
    // A closed peer shows up as ECONNREFUSED on some stacks; UDP ignores it.
    if (errno == ECONNREFUSED) return;
    throw TransportError(Errno("sendto"));
  }
}

std::optional<Packet> UdpEndpoint::Receive(std::chrono::microseconds timeout) {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  std::uint8_t buffer[256];
  while (true) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    pollfd pfd{fd_, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(std::max<long long>(0, left.count())));
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw TransportError(Errno("poll"));
    }
    if (ready == 0) return std::nullopt;
    const ssize_t n = ::recv(fd_, buffer, sizeof(buffer), 0);
    if (n < 0) {
      if (errno == EINTR || errno == ECONNREFUSED) continue;
      throw TransportError(Errno("recv"));
    }
    try {
      return DecodePacket(buffer, static_cast<std::size_t>(n));
    } catch (const WireError&) {
      if (std::chrono::steady_clock::now() >= deadline) return std::nullopt;
    }
  }
}

UdpChannel::UdpChannel(std::chrono::microseconds timeout)
    : rx_(UdpAddress{}), tx_(UdpAddress{}), timeout_(timeout) {}

void UdpChannel::Push(const Packet& packet, double /*now*/) {
  tx_.Send(packet, rx_.local());
  ++outstanding_;
}

std::vector<Delivery> UdpChannel::Poll(double now) {
  std::vector<Delivery> out;
  while (outstanding_ > 0) {
    const auto packet = rx_.Receive(timeout_);
    if (!packet) {
      lost_ += outstanding_;
      outstanding_ = 0;
      break;
    }
    --outstanding_;
    out.push_back({*packet, packet->send_time(), now});
  }
  return out;
}

}  // namespace ispace
