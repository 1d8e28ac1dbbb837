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

// Deterministic SVG output: scene overlays and simple line charts.

#ifndef ISPACE_RENDER_H_
#define ISPACE_RENDER_H_

#include <filesystem>
#include <string>
#include <vector>

#include "ispace/netloop.h"
#include "ispace/scenario.h"

namespace ispace {

struct RenderSpec {
  bool image = true;
  bool edges = false;
  bool obstacles = false;
  bool gradient = false;
  bool ideal_path = true;
  bool trajectory = true;
  bool markers = true;
  int width_px = 640;  // height follows the workspace aspect ratio
  int arrow_stride = 16;  // cells between gradient arrows

  bool AnyLayer() const;
  void Validate() const;
};

// Parses a comma-separated layer list: image, edges, obstacles, gradient,
// ideal, trajectory, markers, or "all".
RenderSpec ParseLayers(const std::string& list);

struct Trajectory {
  std::string label;
  std::vector<Point2> points;  // m
};

std::vector<Point2> TrajectoryOf(const RunLog& log);
// Reads the x, y columns of a runlog CSV.
std::vector<Point2> ReadTrajectoryCsv(const std::filesystem::path& path);

std::string RenderScene(const PreparedScene& scene, const Scenario& scenario,
                        const std::vector<Trajectory>& trajectories,
                        const RenderSpec& spec);

struct ChartSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

std::string RenderChart(const std::string& title, const std::string& x_label,
                        const std::string& y_label, const std::vector<ChartSeries>& series,
                        int width_px = 640, int height_px = 400);

void WriteText(const std::filesystem::path& path, const std::string& text);

}  // namespace ispace

#endif  // ISPACE_RENDER_H_
