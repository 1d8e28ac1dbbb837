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

#include "ispace/guidance.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ispace::guidance {

void GuidanceParams::Validate(double gd) const {
  if (!(d_max >= gd)) throw std::invalid_argument("controller.d_max must be >= G_D");
  if (!(beta >= 0.0)) throw std::invalid_argument("controller.beta must be >= 0");
  if (max_hops < 1) throw std::invalid_argument("lookahead max hops must be >= 1");
  if (mode == LookaheadMode::kFixed && fixed_hops < 1) {
    throw std::invalid_argument("lookahead must be >= 1");
  }
}

RefPointResult RefPoint(const hpf::NavigationField& field, Point2 start, int hops) {
  if (hops < 1) throw std::invalid_argument("look-ahead must be >= 1 hop");
  const Cell start_cell = ContainingCell(start);
  if (!field.boundary.labels().Contains(start_cell) ||
      field.boundary.IsObstacle(start_cell)) {
    throw std::invalid_argument("reference search starts on obstacle cell (" +
                                std::to_string(start_cell.x) + ", " +
                                std::to_string(start_cell.y) + ")");
  }
  RefPointResult out;
  Point2 p = start;
  for (int i = 0; i < hops; ++i) {
    const hpf::Hop hop = hpf::HopOnce(field, p);
    if (hop.stop == hpf::HopStop::kTarget) {
      out.at_target = true;
      break;
    }
    if (hop.stop == hpf::HopStop::kFlat) {
      out.flat = true;
      break;
    }
    p = hop.point;
    ++out.hops;
  }
  out.point = p;
  out.cell = ContainingCell(p);
  return out;
}

RefPointResult RefPoint(const hpf::NavigationField& field, Cell start, int hops) {
  return RefPoint(field, CellCenter(start), hops);
}

Lookahead ComputeLookahead(double curve_coeff, const GuidanceParams& params,
                           double gd) {
  Lookahead out;
  out.d0 = params.d_max / (1.0 + params.beta * std::abs(curve_coeff));
  // The relative slack keeps exact ratios such as 0.1 / 0.0125 from
  // flooring to 7.
  const double ratio = out.d0 / gd;
  const double hops = std::floor(ratio * (1.0 + 1e-12));
  out.hops = static_cast<int>(std::clamp(hops, 1.0, static_cast<double>(params.max_hops)));
  return out;
}

ReferencePoint GuidanceStep(const hpf::NavigationField& field,
                            const WorkspaceFrame& frame, const WorldPose& pose,
                            const GuidanceParams& params) {
  const Point2 start = frame.WorldToGrid(pose.position());
  ReferencePoint out;
  const Point2 target_world = frame.PixelToWorld(field.boundary.target());
  const auto to_world = [&](const RefPointResult& r) {
    return r.at_target ? target_world : frame.GridToWorld(r.point);
  };

  int hops = params.fixed_hops;
  out.d0 = hops * frame.gd();
  if (params.mode == LookaheadMode::kDynamic) {
    const RefPointResult probe = RefPoint(field, start, 1);
    if (probe.flat) {
      out.world = pose.position();
      out.flat = true;
      out.hops = 0;
      return out;
    }
    out.probe_error = controller::BodyErrors(pose, to_world(probe));
    out.probe_curve_coeff = controller::CurveCoeff(out.probe_error);
    const Lookahead la = ComputeLookahead(out.probe_curve_coeff, params, frame.gd());
    hops = la.hops;
    out.d0 = la.d0;
  }
  const RefPointResult ref = RefPoint(field, start, hops);
  if (ref.flat && ref.hops == 0) {
    out.world = pose.position();
    out.flat = true;
    out.hops = 0;
    return out;
  }
  out.world = to_world(ref);
  out.hops = hops;
  return out;
}

}  // namespace ispace::guidance
