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

#ifndef ISPACE_GEOMETRY_H_
#define ISPACE_GEOMETRY_H_

#include <vector>

#include "ispace/grid.h"

namespace ispace {

double PointSegmentDistance(Point2 p, Point2 a, Point2 b);

// Minimum distance from p to any segment of the polyline. A single-vertex
// polyline degenerates to point distance. Throws on an empty polyline.
double DistanceToPolyline(Point2 p, const std::vector<Point2>& polyline);

double PolylineLength(const std::vector<Point2>& polyline);

}  // namespace ispace

#endif  // ISPACE_GEOMETRY_H_
