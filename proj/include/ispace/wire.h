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

// Little-endian datagram format shared by the delay line and UDP transport.
//
//   offset  size  field
//   0       4     magic "ISPC"
//   4       1     version (1)
//   5       1     kind (1 = POSE, 2 = CMD)
//   6       4     sequence, u32
//   10      8     send time in microseconds, u64
//   18      24/16 payload: f64 x, y, theta (POSE) or f64 v, omega (CMD)

#ifndef ISPACE_WIRE_H_
#define ISPACE_WIRE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ispace {

inline constexpr std::uint8_t kWireVersion = 1;
inline constexpr std::size_t kWireHeaderSize = 18;

enum class PacketKind : std::uint8_t { kPose = 1, kCommand = 2 };

struct Packet {
  PacketKind kind = PacketKind::kPose;
  std::uint32_t sequence = 0;
  std::uint64_t send_time_us = 0;
  // POSE uses all three slots, CMD the first two.
  std::array<double, 3> payload{};

  double send_time() const { return static_cast<double>(send_time_us) * 1e-6; }
  bool operator==(const Packet&) const = default;
};

std::size_t PayloadSize(PacketKind kind);

// Rounds seconds to the nearest microsecond; negative times are rejected.
std::uint64_t ToMicros(double seconds);

class WireError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> EncodePacket(const Packet& packet);
// Throws WireError on a short buffer, bad magic/version/kind or trailing bytes.
Packet DecodePacket(const std::uint8_t* data, std::size_t size);
inline Packet DecodePacket(const std::vector<std::uint8_t>& bytes) {
  return DecodePacket(bytes.data(), bytes.size());
}

}  // namespace ispace

#endif  // ISPACE_WIRE_H_
