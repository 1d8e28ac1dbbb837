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

#include "ispace/delay_line.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ispace {

void LinkModel::Validate() const {
  if (!(delay_s >= 0.0) || !std::isfinite(delay_s)) {
    throw std::invalid_argument("link delay must be finite and >= 0");
  }
  if (!(jitter_s >= 0.0) || !std::isfinite(jitter_s)) {
    throw std::invalid_argument("link jitter must be finite and >= 0");
  }
  if (!(drop_prob >= 0.0 && drop_prob <= 1.0)) {
    throw std::invalid_argument("drop probability must lie in [0, 1]");
  }
  if (!(deadline_s > 0.0)) throw std::invalid_argument("packet deadline must be > 0");
}

DelayLine::DelayLine(const LinkModel& model, std::uint64_t seed)
    : model_(model), rng_(seed) {
  model_.Validate();
}

void DelayLine::Push(const Packet& packet, double now) {
  ++stats_.pushed;
  // Both draws happen for every packet so the stream position does not
  // depend on earlier outcomes.
  const double u_jitter = std::generate_canonical<double, 53>(rng_);
  const double u_drop = std::generate_canonical<double, 53>(rng_);
  if (u_drop < model_.drop_prob) {
    ++stats_.dropped;
    return;
  }
  double delay = model_.delay_s;
  if (model_.jitter_s > 0.0) {
    delay = std::max(0.0, delay + (2.0 * u_jitter - 1.0) * model_.jitter_s);
  }
  if (delay > model_.deadline_s) {
    ++stats_.expired;
    return;
  }
  queue_.push_back({{packet, now, now + delay}, next_order_++});
}

std::vector<Delivery> DelayLine::Poll(double now) {
  std::vector<Entry> ready;
  std::vector<Entry> waiting;
  for (Entry& e : queue_) {
    (e.delivery.deliver_time <= now ? ready : waiting).push_back(std::move(e));
  }
  queue_ = std::move(waiting);
  std::sort(ready.begin(), ready.end(), [](const Entry& a, const Entry& b) {
    if (a.delivery.deliver_time != b.delivery.deliver_time) {
      return a.delivery.deliver_time < b.delivery.deliver_time;
    }
    return a.order < b.order;
  });
  std::vector<Delivery> out;
  out.reserve(ready.size());
  for (Entry& e : ready) out.push_back(std::move(e.delivery));
  stats_.delivered += out.size();
  return out;
}

std::optional<double> DelayLine::NextDeliveryTime() const {
  if (queue_.empty()) return std::nullopt;
  double t = queue_.front().delivery.deliver_time;
  for (const Entry& e : queue_) t = std::min(t, e.delivery.deliver_time);
  return t;
}

}  // namespace ispace
