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

#include "ispace/wire.h"

#include <bit>
#include <cmath>
#include <cstring>

namespace ispace {

namespace {

constexpr char kMagic[4] = {'I', 'S', 'P', 'C'};

template <typename T>
void PutLe(std::vector<std::uint8_t>& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
  }
}

template <typename T>
T GetLe(const std::uint8_t* p) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(p[i]) << (8 * i);
  return value;
}

}  // namespace

std::size_t PayloadSize(PacketKind kind) {
  switch (kind) {
    case PacketKind::kPose:
      return 24;
    case PacketKind::kCommand:
      return 16;
  }
  throw WireError("unknown packet kind");
}

std::uint64_t ToMicros(double seconds) {
  if (!(seconds >= 0.0) || !std::isfinite(seconds)) {
    throw WireError("send time must be finite and non-negative");
  }
  return static_cast<std::uint64_t>(std::llround(seconds * 1e6));
}

std::vector<std::uint8_t> EncodePacket(const Packet& packet) {
  const std::size_t payload = PayloadSize(packet.kind);
  std::vector<std::uint8_t> out;
  out.reserve(kWireHeaderSize + payload);
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(kWireVersion);
  out.push_back(static_cast<std::uint8_t>(packet.kind));
  PutLe<std::uint32_t>(out, packet.sequence);
  PutLe<std::uint64_t>(out, packet.send_time_us);
  for (std::size_t i = 0; i < payload / 8; ++i) {
    PutLe<std::uint64_t>(out, std::bit_cast<std::uint64_t>(packet.payload[i]));
  }
  return out;
}

Packet DecodePacket(const std::uint8_t* data, std::size_t size) {
  if (size < kWireHeaderSize) throw WireError("datagram shorter than header");
  if (std::memcmp(data, kMagic, 4) != 0) throw WireError("bad magic");
  if (data[4] != kWireVersion) {
    throw WireError("unsupported version " + std::to_string(data[4]));
  }
  Packet packet;
  if (data[5] == 1) {
    packet.kind = PacketKind::kPose;
  } else if (data[5] == 2) {
    packet.kind = PacketKind::kCommand;
  } else {
    throw WireError("unknown packet kind " + std::to_string(data[5]));
  }
  const std::size_t payload = PayloadSize(packet.kind);
  if (size < kWireHeaderSize + payload) throw WireError("truncated payload");
  if (size > kWireHeaderSize + payload) throw WireError("trailing bytes after payload");
  packet.sequence = GetLe<std::uint32_t>(data + 6);
  packet.send_time_us = GetLe<std::uint64_t>(data + 10);
  for (std::size_t i = 0; i < payload / 8; ++i) {
    packet.payload[i] =
        std::bit_cast<double>(GetLe<std::uint64_t>(data + kWireHeaderSize + 8 * i));
  }
  return packet;
}

}  // namespace ispace
