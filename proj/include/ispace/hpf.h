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

// Harmonic potential field planner.
//
// The edge map becomes a Dirichlet problem on the image grid: edge cells and
// the image frame are held at potential 1, the target cell at 0, and every
// free cell relaxes to the mean of its four neighbors. The normalized
// negative gradient of the solution is a region-to-point guidance field: from
// any free cell connected to the target it leads to the target without
// entering an obstacle. Free components that do not contain the target relax
// to the constant 1 and their guidance vanishes.

#ifndef ISPACE_HPF_H_
#define ISPACE_HPF_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "ispace/grid.h"
#include "ispace/workspace.h"

namespace ispace::hpf {

enum class Label : std::uint8_t { kFree = 0, kObstacle = 1, kTarget = 2 };

class BoundaryGrid {
 public:
  BoundaryGrid(Grid<Label> labels, std::optional<Cell> target);

  int width() const { return labels_.width(); }
  int height() const { return labels_.height(); }
  const Grid<Label>& labels() const { return labels_; }
  Label operator[](Cell c) const { return labels_[c]; }
  bool IsObstacle(Cell c) const { return labels_[c] == Label::kObstacle; }
  bool IsFree(Cell c) const { return labels_[c] == Label::kFree; }
  bool has_target() const { return target_.has_value(); }
  Cell target() const { return target_.value(); }

  std::size_t Count(Label label) const;

 private:
  Grid<Label> labels_;
  std::optional<Cell> target_;
};

// Edge cells dilated by a Chebyshev radius, plus the image frame, become
// obstacles. Throws std::invalid_argument naming the cell if the target is out
// of bounds or lands on an obstacle.
BoundaryGrid BuildBoundary(const EdgeMap& edges, Cell target, int dilation);

// Obstacle-only grid (no target) from a 0/1 mask; the frame is an obstacle.
BoundaryGrid BoundaryFromMask(const Grid<std::uint8_t>& mask, int dilation = 0);

struct SolverParams {
  double omega = 1.8;
  double tolerance = 1e-10;
  // 0 selects 20 * max(m, n).
  int max_iterations = 0;
  double flat_epsilon = 1e-12;

  int EffectiveMaxIterations(int width, int height) const;
  void Validate() const;
};

enum class StopReason { kConverged, kIterationCap };

struct PotentialField {
  Grid<double> phi;
  // 1 - phi, solved for directly. Far from the target phi rounds to 1 in
  // double precision while this keeps its full relative precision, so
  // gradients and comparisons use it.
  Grid<double> rise;
  int iterations = 0;
  // Largest |mean of 4 neighbors - rise| / |rise| over free cells in the
  // final sweep. Relative, so cells whose rise is far below the tolerance
  // still converge.
  double residual = 0.0;
  StopReason stop = StopReason::kIterationCap;

  double operator[](Cell c) const { return phi[c]; }
};

// Gauss-Seidel sweeps with over-relaxation. Free cells start from `initial`
// when given (warm start; must match the grid), else from phi = 1. Fixed
// cells are always reset to their boundary values.
PotentialField Relax(const BoundaryGrid& boundary, const SolverParams& params,
                     const PotentialField* initial = nullptr);

struct GradientField {
  // Unit vector along -grad(phi), or exactly (0, 0) when flat.
  Grid<Point2> direction;
  // |grad(phi)| before normalization.
  Grid<double> magnitude;
  Grid<std::uint8_t> flat;

  Point2 operator[](Cell c) const { return direction[c]; }
  bool IsFlat(Cell c) const { return flat[c] != 0; }
};

// Central differences on free cells, using boundary values of fixed
// neighbors. Fixed cells (obstacle and target) carry a zero vector and the
// flat flag, as does any free cell whose raw gradient is zero or below
// flat_epsilon times the largest rise in its 4-neighborhood. A component
// without a target has rise exactly 0 after a cold start.
GradientField Gradient(const PotentialField& potential,
                       const BoundaryGrid& boundary, double flat_epsilon);

// Everything the planner produces for one static scene.
struct NavigationField {
  BoundaryGrid boundary;
  PotentialField potential;
  GradientField gradient;
};

NavigationField Solve(BoundaryGrid boundary, const SolverParams& params);

enum class HopStop { kMoved, kTarget, kFlat };

struct Hop {
  Point2 point;  // continuous cell coordinates
  HopStop stop = HopStop::kMoved;
};

// One step p <- p + V(cell of p). If the landing cell is an obstacle, lies
// outside the grid, or has a higher potential than the current cell, the
// step instead moves to the center of the lowest-potential 4-neighbor, so a
// hop never climbs the potential and never enters an obstacle.
Hop HopOnce(const NavigationField& field, Point2 p);

enum class DescentReason { kReached, kFlat, kExhausted };

struct Descent {
  std::vector<Point2> points;  // continuous cell coordinates, start first
  std::vector<Cell> cells;
  DescentReason reason = DescentReason::kExhausted;
};

inline constexpr double kReachRadiusCells = 1.5;

// Gradient descent from the center of `start` until within 1.5 cells of the
// target, a flat cell, or max_steps hops. Throws std::invalid_argument if the
// start cell is an obstacle.
Descent Descend(const NavigationField& field, Cell start, int max_steps);

// False iff the cell and all of its in-bounds 4-neighbors are flat.
bool IsReachable(const GradientField& gradient, Cell cell);

void SavePotentialCsv(const std::filesystem::path& path, const PotentialField& potential);
void SaveGradientCsv(const std::filesystem::path& path, const GradientField& gradient);

}  // namespace ispace::hpf

#endif  // ISPACE_HPF_H_
