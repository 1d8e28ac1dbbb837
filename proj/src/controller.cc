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

#include "ispace/controller.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ispace::controller {

void UgvParams::Validate() const {
  if (!(wheel_radius > 0.0)) throw std::invalid_argument("ugv.r must be > 0");
  if (!(track_width > 0.0)) throw std::invalid_argument("ugv.W must be > 0");
  if (!(alpha > 0.0)) throw std::invalid_argument("controller.alpha must be > 0");
  if (!(v_limit > 0.0)) throw std::invalid_argument("controller.v_limit must be > 0");
  if (!(omega_limit > 0.0)) {
    throw std::invalid_argument("controller.omega_limit must be > 0");
  }
}

BodyError BodyErrors(const WorldPose& pose, Point2 reference) {
  const double dx = reference.x - pose.x;
  const double dy = reference.y - pose.y;
  const double c = std::cos(pose.theta);
  const double s = std::sin(pose.theta);
  BodyError e;
  e.ex = c * dx + s * dy;
  e.ey = -s * dx + c * dy;
  e.etheta = NormalizeAngle(std::atan2(dy, dx) - pose.theta);
  return e;
}

double CurveCoeff(const BodyError& e) {
  if (std::abs(e.ex) < kMinForwardError) return Sign(e.ey) * kCurveCoeffCap;
  return Sign(e.ex) * e.ey / (e.ex * e.ex);
}

ControlCommand Command(double curve_coeff, const BodyError& e,
                       const UgvParams& params) {
  const double gain = Sign(e.ex) * params.alpha / (1.0 + std::abs(curve_coeff));
  ControlCommand cmd;
  cmd.v = gain;
  cmd.omega = 2.0 * curve_coeff * gain;
  double scale = 1.0;
  if (std::abs(cmd.v) > params.v_limit) {
    scale = std::min(scale, params.v_limit / std::abs(cmd.v));
  }
  if (std::abs(cmd.omega) > params.omega_limit) {
    scale = std::min(scale, params.omega_limit / std::abs(cmd.omega));
  }
  cmd.v *= scale;
  cmd.omega *= scale;
  return cmd;
}

WheelSpeeds ToWheelSpeeds(const ControlCommand& cmd, const UgvParams& params) {
  const double r = params.wheel_radius;
  const double half_track = params.track_width / (2.0 * r);
  return {cmd.v / r + half_track * cmd.omega, cmd.v / r - half_track * cmd.omega};
}

ControlCommand FromWheelSpeeds(const WheelSpeeds& wheels, const UgvParams& params) {
  ControlCommand cmd;
  cmd.v = params.wheel_radius * (wheels.right + wheels.left) / 2.0;
  cmd.omega = params.wheel_radius * (wheels.right - wheels.left) / params.track_width;
  return cmd;
}

}  // namespace ispace::controller
