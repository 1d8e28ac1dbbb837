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

#include "ispace/hpf.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>

namespace ispace::hpf {

namespace {

std::string CellString(Cell c) {
  return "(" + std::to_string(c.x) + ", " + std::to_string(c.y) + ")";
}

constexpr int kDx4[4] = {1, -1, 0, 0};
constexpr int kDy4[4] = {0, 0, 1, -1};
// Residual recorded while a cell with zero rise is still changing.
constexpr double kUnresolved = std::numeric_limits<double>::infinity();

}  // namespace

BoundaryGrid::BoundaryGrid(Grid<Label> labels, std::optional<Cell> target)
    : labels_(std::move(labels)), target_(target) {
  if (target_) {
    if (!labels_.Contains(*target_) || labels_[*target_] != Label::kTarget) {
      throw std::invalid_argument("boundary target cell " + CellString(*target_) +
                                  " is not labeled TARGET");
    }
  }
}

std::size_t BoundaryGrid::Count(Label label) const {
  return static_cast<std::size_t>(
      std::count(labels_.values().begin(), labels_.values().end(), label));
}

namespace {

Grid<Label> DilatedObstacles(const Grid<std::uint8_t>& marks, int dilation) {
  if (dilation < 0) throw std::invalid_argument("dilation must be >= 0");
  const int w = marks.width();
  const int h = marks.height();
  Grid<Label> labels(w, h, Label::kFree);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (marks(x, y) == 0) continue;
      for (int dy = -dilation; dy <= dilation; ++dy) {
        for (int dx = -dilation; dx <= dilation; ++dx) {
          if (labels.Contains(x + dx, y + dy)) {
            labels(x + dx, y + dy) = Label::kObstacle;
          }
        }
      }
    }
  }
  for (int x = 0; x < w; ++x) {
    labels(x, 0) = Label::kObstacle;
    labels(x, h - 1) = Label::kObstacle;
  }
  for (int y = 0; y < h; ++y) {
    labels(0, y) = Label::kObstacle;
    labels(w - 1, y) = Label::kObstacle;
  }
  return labels;
}

}  // namespace

BoundaryGrid BuildBoundary(const EdgeMap& edges, Cell target, int dilation) {
  Grid<Label> labels = DilatedObstacles(edges, dilation);
  if (!labels.Contains(target)) {
    throw std::invalid_argument("target cell " + CellString(target) +
                                " outside the " + std::to_string(edges.width()) +
                                "x" + std::to_string(edges.height()) + " grid");
  }
  if (labels[target] == Label::kObstacle) {
    throw std::invalid_argument("target cell " + CellString(target) +
                                " lies on an obstacle cell " + CellString(target));
  }
  labels[target] = Label::kTarget;
  return BoundaryGrid(std::move(labels), target);
}

BoundaryGrid BoundaryFromMask(const Grid<std::uint8_t>& mask, int dilation) {
  return BoundaryGrid(DilatedObstacles(mask, dilation), std::nullopt);
}

int SolverParams::EffectiveMaxIterations(int width, int height) const {
  return max_iterations > 0 ? max_iterations : 20 * std::max(width, height);
}

void SolverParams::Validate() const {
  if (!(omega >= 1.0 && omega < 2.0)) {
    throw std::invalid_argument("solver.omega must lie in [1, 2)");
  }
  if (!(tolerance > 0.0)) throw std::invalid_argument("solver.tolerance must be > 0");
  if (max_iterations < 0) {
    throw std::invalid_argument("solver.max_iterations must be >= 1 (0 = auto)");
  }
  if (!(flat_epsilon >= 0.0)) {
    throw std::invalid_argument("solver.flat_epsilon must be >= 0");
  }
}

PotentialField Relax(const BoundaryGrid& boundary, const SolverParams& params,
                     const PotentialField* initial) {
  params.Validate();
  const int w = boundary.width();
  const int h = boundary.height();
  if (initial != nullptr && !initial->rise.SameShape(w, h)) {
    throw std::invalid_argument("warm-start field does not match boundary grid");
  }
  PotentialField out;
  out.rise = initial != nullptr ? initial->rise : Grid<double>(w, h, 0.0);
  // Free cells grouped into contiguous row runs [begin, end).
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      switch (boundary.labels()(x, y)) {
        case Label::kObstacle:
          out.rise(x, y) = 0.0;
          break;
        case Label::kTarget:
          out.rise(x, y) = 1.0;
          break;
        case Label::kFree: {
          // The frame is always fixed, so free cells have four neighbors.
          const std::size_t i = out.rise.Index(x, y);
          if (!runs.empty() && runs.back().second == i) {
            ++runs.back().second;
          } else {
            runs.emplace_back(i, i + 1);
          }
          break;
        }
      }
    }
  }

  double* u = out.rise.values().data();
  const std::size_t stride = static_cast<std::size_t>(w);
  const double omega = params.omega;
  const int max_iterations = params.EffectiveMaxIterations(w, h);
  out.stop = StopReason::kIterationCap;
  for (int it = 1; it <= max_iterations; ++it) {
    double residual = 0.0;
    for (const auto& [begin, end] : runs) {
      for (std::size_t i = begin; i < end; ++i) {
        const double mean = 0.25 * (u[i - 1] + u[i + 1] + u[i - stride] + u[i + stride]);
        const double delta = mean - u[i];
        if (std::abs(delta) > residual * std::abs(u[i])) {
          residual = u[i] != 0.0 ? std::abs(delta / u[i]) : kUnresolved;
        }
        u[i] += omega * delta;
      }
    }
    out.iterations = it;
    out.residual = residual;
    if (residual <= params.tolerance) {
      out.stop = StopReason::kConverged;
      break;
    }
  }
  out.phi = Grid<double>(w, h, 1.0);
  for (std::size_t i = 0; i < out.rise.size(); ++i) {
    out.phi.values()[i] = 1.0 - out.rise.values()[i];
  }
  return out;
}

GradientField Gradient(const PotentialField& potential,
                       const BoundaryGrid& boundary, double flat_epsilon) {
  const int w = boundary.width();
  const int h = boundary.height();
  GradientField out{Grid<Point2>(w, h, Point2{}), Grid<double>(w, h, 0.0),
                    Grid<std::uint8_t>(w, h, 1)};
  const Grid<double>& u = potential.rise;
  for (int y = 1; y < h - 1; ++y) {
    for (int x = 1; x < w - 1; ++x) {
      if (boundary.labels()(x, y) != Label::kFree) continue;
      const double gx = 0.5 * (u(x + 1, y) - u(x - 1, y));
      const double gy = 0.5 * (u(x, y + 1) - u(x, y - 1));
      const double mag = std::hypot(gx, gy);
      out.magnitude(x, y) = mag;
      const double scale = std::max({u(x, y), u(x + 1, y), u(x - 1, y), u(x, y + 1),
                                     u(x, y - 1)});
      if (mag == 0.0 || mag < flat_epsilon * scale) continue;
      out.direction(x, y) = {gx / mag, gy / mag};
      out.flat(x, y) = 0;
    }
  }
  return out;
}

NavigationField Solve(BoundaryGrid boundary, const SolverParams& params) {
  PotentialField potential = Relax(boundary, params);
  GradientField gradient = Gradient(potential, boundary, params.flat_epsilon);
  return {std::move(boundary), std::move(potential), std::move(gradient)};
}

Hop HopOnce(const NavigationField& field, Point2 p) {
  const Cell c = ContainingCell(p);
  const BoundaryGrid& boundary = field.boundary;
  if (!boundary.labels().Contains(c)) return {p, HopStop::kFlat};
  if (boundary[c] == Label::kTarget) return {p, HopStop::kTarget};
  if (field.gradient.IsFlat(c)) return {p, HopStop::kFlat};

  const Grid<double>& rise = field.potential.rise;
  const double here = rise[c];
  const Point2 q = p + field.gradient[c];
  const Cell cq = ContainingCell(q);
  if (boundary.labels().Contains(cq) && boundary[cq] != Label::kObstacle &&
      rise[cq] >= here) {
    return {q, HopStop::kMoved};
  }
  // Fall back to the steepest 4-neighbor.
  Cell best = c;
  double best_rise = here;
  for (int k = 0; k < 4; ++k) {
    const Cell n{c.x + kDx4[k], c.y + kDy4[k]};
    if (!boundary.labels().Contains(n) || boundary[n] == Label::kObstacle) continue;
    if (rise[n] > best_rise) {
      best = n;
      best_rise = rise[n];
    }
  }
  if (best == c) return {p, HopStop::kFlat};
  return {CellCenter(best), HopStop::kMoved};
}

Descent Descend(const NavigationField& field, Cell start, int max_steps) {
  const BoundaryGrid& boundary = field.boundary;
  if (!boundary.labels().Contains(start)) {
    throw std::invalid_argument("descent start " + CellString(start) +
                                " outside the grid");
  }
  if (boundary.IsObstacle(start)) {
    throw std::invalid_argument("descent start " + CellString(start) +
                                " is an obstacle cell");
  }
  if (!boundary.has_target()) {
    throw std::invalid_argument("descent requires a boundary with a target");
  }
  const Point2 goal = CellCenter(boundary.target());
  Descent out;
  Point2 p = CellCenter(start);
  out.points.push_back(p);
  out.cells.push_back(start);
  for (int step = 0;; ++step) {
    if (std::hypot(p.x - goal.x, p.y - goal.y) <= kReachRadiusCells) {
      out.reason = DescentReason::kReached;
      return out;
    }
    if (step >= max_steps) {
      out.reason = DescentReason::kExhausted;
      return out;
    }
    const Hop hop = HopOnce(field, p);
    if (hop.stop == HopStop::kTarget) {
      out.reason = DescentReason::kReached;
      return out;
    }
    if (hop.stop == HopStop::kFlat) {
      out.reason = DescentReason::kFlat;
      return out;
    }
    p = hop.point;
    out.points.push_back(p);
    out.cells.push_back(ContainingCell(p));
  }
}

bool IsReachable(const GradientField& gradient, Cell cell) {
  const auto directed = [&](Cell c) { return gradient.flat.Contains(c) && !gradient.IsFlat(c); };
  if (directed(cell)) return true;
  for (int k = 0; k < 4; ++k) {
    if (directed({cell.x + kDx4[k], cell.y + kDy4[k]})) return true;
  }
  return false;
}

void SavePotentialCsv(const std::filesystem::path& path, const PotentialField& potential) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.precision(17);
  for (int y = 0; y < potential.phi.height(); ++y) {
    for (int x = 0; x < potential.phi.width(); ++x) {
      out << (x ? "," : "") << potential.phi(x, y);
    }
    out << '\n';
  }
}

void SaveGradientCsv(const std::filesystem::path& path, const GradientField& gradient) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.precision(17);
  out << "x,y,vx,vy,flat\n";
  for (int y = 0; y < gradient.direction.height(); ++y) {
    for (int x = 0; x < gradient.direction.width(); ++x) {
      const Point2 v = gradient.direction(x, y);
      out << x << ',' << y << ',' << v.x << ',' << v.y << ','
          << int{gradient.flat(x, y)} << '\n';
    }
  }
}

}  // namespace ispace::hpf
