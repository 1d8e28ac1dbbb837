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

// Goal-seeking guidance: the reference point for the path-tracking
// controller is found by hopping along the harmonic guidance field from the
// current position, so no reference path is ever computed. The hop count (the
// look-ahead) shrinks with the curvature of the parabola fitted to a one-hop
// probe.

#ifndef ISPACE_GUIDANCE_H_
#define ISPACE_GUIDANCE_H_

#include "ispace/controller.h"
#include "ispace/hpf.h"
#include "ispace/workspace.h"

namespace ispace::guidance {

enum class LookaheadMode { kFixed, kDynamic };

struct GuidanceParams {
  double d_max = 0.1;  // m
  double beta = 1.0;
  LookaheadMode mode = LookaheadMode::kDynamic;
  int fixed_hops = 8;   // used in kFixed mode
  int max_hops = 32;    // dynamic upper clamp

  void Validate(double gd) const;
};

struct RefPointResult {
  Point2 point;  // continuous cell coordinates
  Cell cell;
  int hops = 0;  // hops actually taken
  bool flat = false;
  bool at_target = false;
};

// Applies the guidance hop `hops` times from `start` (continuous cell
// coordinates). Stops early on a flat cell (flat flag) or on the target cell.
// Throws std::invalid_argument if `start` lies on an obstacle.
RefPointResult RefPoint(const hpf::NavigationField& field, Point2 start, int hops);
RefPointResult RefPoint(const hpf::NavigationField& field, Cell start, int hops);

struct Lookahead {
  double d0 = 0.0;  // m
  int hops = 1;     // delta L, pixels
};

// d_0 = d_max / (1 + beta |A|), delta L = floor(d_0 / G_D) clamped to
// [1, max_hops].
Lookahead ComputeLookahead(double curve_coeff, const GuidanceParams& params,
                           double gd);

struct ReferencePoint {
  Point2 world;
  int hops = 0;
  double d0 = 0.0;
  bool flat = false;
  controller::BodyError probe_error;
  double probe_curve_coeff = 0.0;
};

// One control sample: probe one hop ahead, fit the parabola, pick the
// look-ahead, hop that far. A flat probe yields the current position with
// the flat flag set.
ReferencePoint GuidanceStep(const hpf::NavigationField& field,
                            const WorkspaceFrame& frame, const WorldPose& pose,
                            const GuidanceParams& params);

}  // namespace ispace::guidance

#endif  // ISPACE_GUIDANCE_H_
