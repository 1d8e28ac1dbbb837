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

// Quadratic-curve path tracking: the reference point is expressed in the
// vehicle frame, a parabola y = A x^2 through the vehicle origin is fitted to
// it, and (v, omega) are chosen so the vehicle starts along that parabola.
//
// Body frame: x forward along the heading, y lateral (rotated +90 degrees
// from x, toward +y of the world frame at theta = 0).

#ifndef ISPACE_CONTROLLER_H_
#define ISPACE_CONTROLLER_H_

#include <cstdint>

#include "ispace/grid.h"
#include "ispace/workspace.h"

namespace ispace::controller {

struct BodyError {
  double ex = 0.0;     // forward, m
  double ey = 0.0;     // lateral, m
  double etheta = 0.0; // bearing to reference minus heading, rad; logged only
};

struct ControlCommand {
  double v = 0.0;      // m/s
  double omega = 0.0;  // rad/s
  double timestamp = 0.0;
  std::uint32_t sequence = 0;
};

struct UgvParams {
  double wheel_radius = 0.05;  // r, m
  double track_width = 0.3;    // W, m
  double v_limit = 0.3;
  double omega_limit = 2.0;
  double alpha = 0.2;  // m/s

  void Validate() const;
};

// Below this forward error the parabola degenerates.
inline constexpr double kMinForwardError = 1e-6;
// |A| substituted for a purely lateral reference.
inline constexpr double kCurveCoeffCap = 1e3;

// sign(0) = +1.
inline double Sign(double x) { return x < 0.0 ? -1.0 : 1.0; }

BodyError BodyErrors(const WorldPose& pose, Point2 reference);

// A = sign(e_x) * e_y / e_x^2 in 1/m. For |e_x| < kMinForwardError returns
// sign(e_y) * kCurveCoeffCap.
double CurveCoeff(const BodyError& e);

// K_n = sign(e_x) * alpha / (1 + |A|), v = K_n, omega = 2 A K_n, then scaled
// down uniformly (preserving omega / v) until both limits hold.
ControlCommand Command(double curve_coeff, const BodyError& e,
                       const UgvParams& params);

struct WheelSpeeds {
  double right = 0.0;  // rad/s
  double left = 0.0;
};

WheelSpeeds ToWheelSpeeds(const ControlCommand& cmd, const UgvParams& params);
// Inverse of ToWheelSpeeds; returns (v, omega) with zero timestamp.
ControlCommand FromWheelSpeeds(const WheelSpeeds& wheels, const UgvParams& params);

}  // namespace ispace::controller

#endif  // ISPACE_CONTROLLER_H_
