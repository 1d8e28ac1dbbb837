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

// Comparison baseline: a fast-marching shortest-path planner whose output
// path is tracked by the same quadratic-curve controller, plus the operation
// count formulas used to compare the two pipelines.

#ifndef ISPACE_FM_BASELINE_H_
#define ISPACE_FM_BASELINE_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ispace/grid.h"
#include "ispace/hpf.h"
#include "ispace/workspace.h"

namespace ispace::fm {

struct ArrivalField {
  // Arrival time in cell units; +infinity on obstacles and on cells not
  // connected to the target.
  Grid<double> time;
  // Cell indices in the order they were accepted (frozen).
  std::vector<std::size_t> acceptance_order;

  double operator[](Cell c) const { return time[c]; }
};

// First-order upwind fast marching with unit speed from the target outward.
// Each update takes the better of the axis-aligned and diagonal stencils;
// diagonals never cut an obstacle corner.
ArrivalField FmArrival(const hpf::BoundaryGrid& boundary);

struct ReferencePath {
  std::vector<Point2> points;  // world, meters; start first, target last
  std::vector<double> arrival;  // arrival time attached to each point
  std::size_t size() const { return points.size(); }
};

// Steepest descent on the arrival field from `start`, hops of
// step_fraction * G_D, until within 1.5 cells of the target. Throws
// std::invalid_argument if `start` is not connected to the target.
ReferencePath FmPath(const ArrivalField& arrival, const hpf::BoundaryGrid& boundary,
                     const WorkspaceFrame& frame, Cell start,
                     double step_fraction = 0.5);

struct PathReferenceResult {
  Point2 reference;
  std::size_t closest_index = 0;
  std::size_t reference_index = 0;
  std::size_t checks = 0;  // points examined by the closest-point scan
};

// Closest path point by full linear scan, then the first later point whose
// arc length from it is >= d0 (the last point if none).
PathReferenceResult PathReference(const ReferencePath& path, Point2 position,
                                  double d0);

struct CostRatio {
  std::int64_t template_matching = 0;  // C_TM
  std::int64_t edge_detection = 0;     // C_ED
  double ratio = 0.0;                  // C_TM / C_ED
};

// C_TM = (m - t)(n - t) t^2, C_ED = (m - k)(n - k) k^2.
CostRatio ComputeCostRatio(int m, int n, int template_side, int kernel_side);

// lambda_p = N_p / delta L.
double Speedup(std::size_t path_points, int hops);

}  // namespace ispace::fm

#endif  // ISPACE_FM_BASELINE_H_
