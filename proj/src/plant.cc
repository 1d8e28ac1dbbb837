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

#include "ispace/plant.h"

#include <cmath>
#include <stdexcept>

namespace ispace::plant {

void CameraModel::Validate() const {
  if (!(rate_hz > 0.0) || !std::isfinite(rate_hz)) {
    throw std::invalid_argument("camera.rate_hz must be > 0");
  }
}

WorldPose Step(const WorldPose& pose, double v, double omega, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("plant step needs dt > 0");
  WorldPose next = pose;
  if (std::abs(omega) < 1e-9) {
    next.x += v * dt * std::cos(pose.theta);
    next.y += v * dt * std::sin(pose.theta);
    return next;
  }
  const double radius = v / omega;
  const double theta_end = pose.theta + omega * dt;
  next.x += radius * (std::sin(theta_end) - std::sin(pose.theta));
  next.y += radius * (-std::cos(theta_end) + std::cos(pose.theta));
  next.theta = NormalizeAngle(theta_end);
  return next;
}

WorldPose Observe(const WorldPose& pose, const CameraModel& camera,
                  const WorkspaceFrame& frame) {
  const Cell cell = frame.WorldToPixel(pose.position());
  if (!camera.quantize) return pose;
  const Point2 center = frame.PixelToWorld(cell);
  return {center.x, center.y, pose.theta};
}

bool Collides(const WorldPose& pose, const hpf::BoundaryGrid& boundary,
              const WorkspaceFrame& frame) {
  if (!frame.InBounds(pose.position())) return true;
  return boundary.IsObstacle(frame.WorldToPixel(pose.position()));
}

}  // namespace ispace::plant
