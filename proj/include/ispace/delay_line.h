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

// One-way channel model: constant latency, uniform jitter, random drops and
// a packet deadline, driven by simulation time.

#ifndef ISPACE_DELAY_LINE_H_
#define ISPACE_DELAY_LINE_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "ispace/wire.h"

namespace ispace {

struct Delivery {
  Packet packet;
  double send_time = 0.0;
  double deliver_time = 0.0;
};

// A one-way link the control loop pushes into and polls from.
class Channel {
 public:
  virtual ~Channel() = default;
  // now >= the packet's send time.
  virtual void Push(const Packet& packet, double now) = 0;
  // Packets deliverable at or before `now`, in delivery order.
  virtual std::vector<Delivery> Poll(double now) = 0;
};

struct LinkModel {
  double delay_s = 0.0;
  double jitter_s = 0.0;  // delay drawn from [delay - jitter, delay + jitter], >= 0
  double drop_prob = 0.0;
  double deadline_s = std::numeric_limits<double>::infinity();

  void Validate() const;
};

struct LinkStats {
  std::uint64_t pushed = 0;
  std::uint64_t dropped = 0;
  std::uint64_t expired = 0;
  std::uint64_t delivered = 0;
};

class DelayLine : public Channel {
 public:
  DelayLine(const LinkModel& model, std::uint64_t seed);

  void Push(const Packet& packet, double now) override;
  std::vector<Delivery> Poll(double now) override;

  std::optional<double> NextDeliveryTime() const;
  std::size_t in_flight() const { return queue_.size(); }
  const LinkStats& stats() const { return stats_; }

 private:
  struct Entry {
    Delivery delivery;
    std::uint64_t order;
  };

  LinkModel model_;
  std::mt19937_64 rng_;
  std::vector<Entry> queue_;
  std::uint64_t next_order_ = 0;
  LinkStats stats_;
};

}  // namespace ispace

#endif  // ISPACE_DELAY_LINE_H_
