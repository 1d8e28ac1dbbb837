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

#include "ispace/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ispace {

double PointSegmentDistance(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const Point2 ap = p - a;
  const double len2 = ab.x * ab.x + ab.y * ab.y;
  double s = 0.0;
  if (len2 > 0.0) s = std::clamp((ap.x * ab.x + ap.y * ab.y) / len2, 0.0, 1.0);
  const Point2 d = ap - s * ab;
  return std::hypot(d.x, d.y);
}

double DistanceToPolyline(Point2 p, const std::vector<Point2>& polyline) {
  if (polyline.empty()) throw std::invalid_argument("empty polyline");
  if (polyline.size() == 1) {
    const Point2 d = p - polyline.front();
    return std::hypot(d.x, d.y);
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < polyline.size(); ++i) {
    best = std::min(best, PointSegmentDistance(p, polyline[i - 1], polyline[i]));
  }
  return best;
}

double PolylineLength(const std::vector<Point2>& polyline) {
  double total = 0.0;
  for (std::size_t i = 1; i < polyline.size(); ++i) {
    const Point2 d = polyline[i] - polyline[i - 1];
    total += std::hypot(d.x, d.y);
  }
  return total;
}

}  // namespace ispace
