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

#include "ispace/fm_baseline.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>

namespace ispace::fm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr double kSqrt2 = 1.4142135623730951;

// Solves (T - a)^2 + (T - b)^2 = h^2 upwind, falling back to the one-sided
// update when the two neighbors are too far apart.
double UpwindUpdate(double a, double b, double h) {
  if (a > b) std::swap(a, b);
  if (b - a >= h) return a + h;
  return 0.5 * (a + b + std::sqrt(2.0 * h * h - (a - b) * (a - b)));
}

}  // namespace

ArrivalField FmArrival(const hpf::BoundaryGrid& boundary) {
  if (!boundary.has_target()) {
    throw std::invalid_argument("fast marching requires a target cell");
  }
  const int w = boundary.width();
  const int h = boundary.height();
  ArrivalField out{Grid<double>(w, h, kInf), {}};
  Grid<std::uint8_t> known(w, h, 0);

  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  const Cell target = boundary.target();
  out.time[target] = 0.0;
  heap.push({0.0, out.time.Index(target.x, target.y)});

  const auto free = [&](int x, int y) {
    return known.Contains(x, y) && boundary.labels()(x, y) != hpf::Label::kObstacle;
  };
  const auto known_time = [&](int x, int y) {
    return known.Contains(x, y) && known(x, y) ? out.time(x, y) : kInf;
  };
  // Diagonal neighbors count only when both orthogonal cells between are free.
  const auto diag_time = [&](int x, int y, int dx, int dy) {
    return free(x + dx, y) && free(x, y + dy) ? known_time(x + dx, y + dy) : kInf;
  };
  // Axis-aligned and 45-degree stencils; the smaller candidate wins.
  const auto update = [&](int x, int y) {
    const double a = std::min(known_time(x - 1, y), known_time(x + 1, y));
    const double b = std::min(known_time(x, y - 1), known_time(x, y + 1));
    const double p = std::min(diag_time(x, y, 1, 1), diag_time(x, y, -1, -1));
    const double q = std::min(diag_time(x, y, 1, -1), diag_time(x, y, -1, 1));
    return std::min(UpwindUpdate(a, b, 1.0), UpwindUpdate(p, q, kSqrt2));
  };

  while (!heap.empty()) {
    const auto [t, index] = heap.top();
    heap.pop();
    const int x = static_cast<int>(index % w);
    const int y = static_cast<int>(index / w);
    if (known(x, y) || t > out.time(x, y)) continue;
    known(x, y) = 1;
    out.acceptance_order.push_back(index);
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const int nx = x + dx;
        const int ny = y + dy;
        if (!free(nx, ny) || known(nx, ny)) continue;
        const double candidate = update(nx, ny);
        if (candidate < out.time(nx, ny)) {
          out.time(nx, ny) = candidate;
          heap.push({candidate, out.time.Index(nx, ny)});
        }
      }
    }
  }
  return out;
}

namespace {

// Central difference of T at a cell, one-sided where a neighbor is infinite.
Point2 CellGradient(const Grid<double>& t, int x, int y) {
  const auto axis = [&](double minus, double here, double plus) {
    const bool has_minus = std::isfinite(minus);
    const bool has_plus = std::isfinite(plus);
    if (has_minus && has_plus) return 0.5 * (plus - minus);
    if (has_plus) return plus - here;
    if (has_minus) return here - minus;
    return 0.0;
  };
  const auto at = [&](int i, int j) { return t.Contains(i, j) ? t(i, j) : kInf; };
  return {axis(at(x - 1, y), t(x, y), at(x + 1, y)),
          axis(at(x, y - 1), t(x, y), at(x, y + 1))};
}

struct Sample {
  double time = kInf;
  Point2 gradient;
};

// Bilinear interpolation over the surrounding cell centers with finite
// arrival time, weights renormalized over those corners.
Sample Interpolate(const Grid<double>& t, Point2 p) {
  const double gx = p.x - 0.5;
  const double gy = p.y - 0.5;
  const int x0 = static_cast<int>(std::floor(gx));
  const int y0 = static_cast<int>(std::floor(gy));
  const double fx = gx - x0;
  const double fy = gy - y0;
  double weight = 0.0;
  Sample s{0.0, {}};
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < 2; ++i) {
      const int cx = x0 + i;
      const int cy = y0 + j;
      if (!t.Contains(cx, cy) || !std::isfinite(t(cx, cy))) continue;
      const double wgt = (i ? fx : 1.0 - fx) * (j ? fy : 1.0 - fy);
      if (wgt <= 0.0) continue;
      const Point2 g = CellGradient(t, cx, cy);
      s.time += wgt * t(cx, cy);
      s.gradient.x += wgt * g.x;
      s.gradient.y += wgt * g.y;
      weight += wgt;
    }
  }
  if (weight <= 0.0) return {kInf, {}};
  s.time /= weight;
  s.gradient = (1.0 / weight) * s.gradient;
  return s;
}

}  // namespace

ReferencePath FmPath(const ArrivalField& arrival, const hpf::BoundaryGrid& boundary,
                     const WorkspaceFrame& frame, Cell start, double step_fraction) {
  const Grid<double>& t = arrival.time;
  if (!t.Contains(start) || !std::isfinite(t[start])) {
    throw std::invalid_argument("path start (" + std::to_string(start.x) + ", " +
                                std::to_string(start.y) +
                                ") is not connected to the target");
  }
  if (!(step_fraction > 0.0 && step_fraction <= 1.0)) {
    throw std::invalid_argument("path step must be in (0, 1] cells");
  }
  const Point2 goal = CellCenter(boundary.target());
  ReferencePath path;
  Point2 p = CellCenter(start);
  double time_here = t[start];
  const auto emit = [&](Point2 q, double tq) {
    path.points.push_back(frame.GridToWorld(q));
    path.arrival.push_back(tq);
  };
  emit(p, time_here);

  const std::size_t max_points = 4 * t.size();
  while (path.size() < max_points) {
    if (std::hypot(p.x - goal.x, p.y - goal.y) <= hpf::kReachRadiusCells) {
      if (!(p == goal)) emit(goal, 0.0);
      return path;
    }
    const Sample here = Interpolate(t, p);
    const double norm = std::hypot(here.gradient.x, here.gradient.y);
    if (norm > 0.0) {
      const Point2 q = p - (step_fraction / norm) * here.gradient;
      const Cell cq = ContainingCell(q);
      if (t.Contains(cq) && boundary[cq] != hpf::Label::kObstacle &&
          std::isfinite(t[cq])) {
        const double tq = Interpolate(t, q).time;
        if (tq < time_here) {
          p = q;
          time_here = tq;
          emit(p, time_here);
          continue;
        }
      }
    }
    // Discrete fallback: lowest 8-neighbor, diagonals only between two free
    // orthogonal cells.
    const Cell c = ContainingCell(p);
    Cell best = c;
    double best_time = t[c];
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const Cell n{c.x + dx, c.y + dy};
        if (!t.Contains(n) || !std::isfinite(t[n])) continue;
        if (dx != 0 && dy != 0 &&
            (!std::isfinite(t[Cell{c.x + dx, c.y}]) ||
             !std::isfinite(t[Cell{c.x, c.y + dy}]))) {
          continue;
        }
        if (t[n] < best_time) {
          best = n;
          best_time = t[n];
        }
      }
    }
    if (best == c) {
      throw std::runtime_error("fast-marching descent stalled");
    }
    p = CellCenter(best);
    if (best_time < time_here) {
      time_here = best_time;
      emit(p, time_here);
    }
  }
  throw std::runtime_error("fast-marching descent did not reach the target");
}

PathReferenceResult PathReference(const ReferencePath& path, Point2 position,
                                  double d0) {
  if (path.points.empty()) throw std::invalid_argument("empty reference path");
  PathReferenceResult out;
  double best = kInf;
  for (std::size_t i = 0; i < path.points.size(); ++i) {
    const Point2 d = path.points[i] - position;
    const double dist2 = d.x * d.x + d.y * d.y;
    if (dist2 < best) {
      best = dist2;
      out.closest_index = i;
    }
    ++out.checks;
  }
  out.reference_index = path.points.size() - 1;
  double arc = 0.0;
  for (std::size_t i = out.closest_index + 1; i < path.points.size(); ++i) {
    const Point2 d = path.points[i] - path.points[i - 1];
    arc += std::hypot(d.x, d.y);
    if (arc >= d0) {
      out.reference_index = i;
      break;
    }
  }
  out.reference = path.points[out.reference_index];
  return out;
}

CostRatio ComputeCostRatio(int m, int n, int template_side, int kernel_side) {
  const int min_side = std::min(m, n);
  if (template_side <= 0 || kernel_side <= 0 || template_side >= min_side ||
      kernel_side >= min_side) {
    throw std::invalid_argument("template and kernel sides must be in [1, min(m, n))");
  }
  const auto count = [&](std::int64_t side) {
    return (static_cast<std::int64_t>(m) - side) * (static_cast<std::int64_t>(n) - side) *
           side * side;
  };
  CostRatio out;
  out.template_matching = count(template_side);
  out.edge_detection = count(kernel_side);
  out.ratio = static_cast<double>(out.template_matching) /
              static_cast<double>(out.edge_detection);
  return out;
}

double Speedup(std::size_t path_points, int hops) {
  if (path_points < 1 || hops < 1) {
    throw std::invalid_argument("speedup needs N_p >= 1 and delta L >= 1");
  }
  return static_cast<double>(path_points) / hops;
}

}  // namespace ispace::fm
