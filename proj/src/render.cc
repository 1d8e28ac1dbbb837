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

#include "ispace/render.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ispace {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string Escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Polyline(const std::vector<Point2>& pts, double scale, const char* color,
                     double stroke, const char* dash = nullptr) {
  std::string out = "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                    "\" stroke-width=\"" + Num(stroke) + "\"";
  if (dash) out += std::string(" stroke-dasharray=\"") + dash + "\"";
  out += " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ' ';
    out += Num(pts[i].x * scale) + "," + Num(pts[i].y * scale);
  }
  return out + "\"/>\n";
}

}  // namespace

bool RenderSpec::AnyLayer() const {
  return image || edges || obstacles || gradient || ideal_path || trajectory || markers;
}

void RenderSpec::Validate() const {
  if (!AnyLayer()) throw std::invalid_argument("render needs at least one layer");
  if (width_px < 16) throw std::invalid_argument("render width must be >= 16 px");
  if (arrow_stride < 1) throw std::invalid_argument("arrow stride must be >= 1");
}

RenderSpec ParseLayers(const std::string& list) {
  RenderSpec spec;
  spec.image = spec.edges = spec.obstacles = spec.gradient = false;
  spec.ideal_path = spec.trajectory = spec.markers = false;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item == "image") spec.image = true;
    else if (item == "edges") spec.edges = true;
    else if (item == "obstacles") spec.obstacles = true;
    else if (item == "gradient") spec.gradient = true;
    else if (item == "ideal") spec.ideal_path = true;
    else if (item == "trajectory") spec.trajectory = true;
    else if (item == "markers") spec.markers = true;
    else if (item == "all") {
      spec.image = spec.edges = spec.obstacles = spec.gradient = true;
      spec.ideal_path = spec.trajectory = spec.markers = true;
    } else {
      throw std::invalid_argument("unknown render layer '" + item + "'");
    }
  }
  spec.Validate();
  return spec;
}

std::vector<Point2> TrajectoryOf(const RunLog& log) {
  std::vector<Point2> out;
  out.reserve(log.records.size());
  for (const RunRecord& r : log.records) out.push_back(r.truth.position());
  return out;
}

std::vector<Point2> ReadTrajectoryCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,x,y,", 0) != 0) {
    throw std::runtime_error(path.string() + " is not a runlog CSV");
  }
  std::vector<Point2> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string t, x, y;
    std::getline(row, t, ',');
    std::getline(row, x, ',');
    std::getline(row, y, ',');
    try {
      out.push_back({std::stod(x), std::stod(y)});
    } catch (const std::exception&) {
      throw std::runtime_error(path.string() + ": malformed row '" + line + "'");
    }
  }
  return out;
}

std::string RenderScene(const PreparedScene& scene, const Scenario& scenario,
                        const std::vector<Trajectory>& trajectories,
                        const RenderSpec& spec) {
  spec.Validate();
  const int m = scene.frame.width();
  const int n = scene.frame.height();
  const double cell_px = static_cast<double>(spec.width_px) / m;
  const double meter_px = cell_px / scene.frame.gd();
  const int height_px = static_cast<int>(std::lround(n * cell_px));
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width_px
      << "\" height=\"" << height_px << "\" viewBox=\"0 0 " << spec.width_px << ' '
      << height_px << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  // Raster layers are drawn in blocks keeping at most ~100 columns.
  const int block = std::max(1, (m + 99) / 100);
  const auto blocks = [&](auto&& value, auto&& emit) {
    for (int by = 0; by < n; by += block) {
      for (int bx = 0; bx < m; bx += block) {
        double sum = 0.0;
        int count = 0;
        for (int y = by; y < std::min(n, by + block); ++y) {
          for (int x = bx; x < std::min(m, bx + block); ++x) {
            sum += value(x, y);
            ++count;
          }
        }
        emit(bx, by, sum / count);
      }
    }
  };
  const auto rect = [&](int bx, int by, const std::string& fill) {
    svg << "<rect x=\"" << Num(bx * cell_px) << "\" y=\"" << Num(by * cell_px)
        << "\" width=\"" << Num(block * cell_px) << "\" height=\"" << Num(block * cell_px)
        << "\" fill=\"" << fill << "\"/>\n";
  };
  if (spec.image) {
    svg << "<g id=\"image\">\n";
    blocks([&](int x, int y) { return double(scene.image(x, y)); },
           [&](int bx, int by, double v) {
             char fill[16];
             const int g = static_cast<int>(std::lround(v));
             std::snprintf(fill, sizeof(fill), "#%02x%02x%02x", g, g, g);
             rect(bx, by, fill);
           });
    svg << "</g>\n";
  }
  if (spec.obstacles) {
    svg << "<g id=\"obstacles\" fill-opacity=\"0.5\">\n";
    blocks([&](int x, int y) { return double(scene.occupied(x, y) != 0); },
           [&](int bx, int by, double v) {
             if (v > 0.0) rect(bx, by, "#7f3f00");
           });
    svg << "</g>\n";
  }
  if (spec.edges) {
    svg << "<g id=\"edges\">\n";
    blocks([&](int x, int y) { return double(scene.edges(x, y) != 0); },
           [&](int bx, int by, double v) {
             if (v > 0.0) rect(bx, by, "#000000");
           });
    svg << "</g>\n";
  }
  if (spec.gradient) {
    svg << "<g id=\"gradient\" stroke=\"#555555\" stroke-width=\"1\">\n";
    const double len = 0.4 * spec.arrow_stride * cell_px;
    for (int y = spec.arrow_stride / 2; y < n; y += spec.arrow_stride) {
      for (int x = spec.arrow_stride / 2; x < m; x += spec.arrow_stride) {
        if (scene.field.gradient.IsFlat({x, y})) continue;
        const Point2 d = scene.field.gradient[Cell{x, y}];
        const double x0 = (x + 0.5) * cell_px;
        const double y0 = (y + 0.5) * cell_px;
        const double x1 = x0 + len * d.x;
        const double y1 = y0 + len * d.y;
        // Two short barbs at the tip.
        const double bx = -d.x * 0.3 * len;
        const double by = -d.y * 0.3 * len;
        svg << "<path d=\"M" << Num(x0) << ' ' << Num(y0) << " L" << Num(x1) << ' '
            << Num(y1) << " M" << Num(x1) << ' ' << Num(y1) << " l"
            << Num(bx - 0.5 * by) << ' ' << Num(by + 0.5 * bx) << " M" << Num(x1) << ' '
            << Num(y1) << " l" << Num(bx + 0.5 * by) << ' ' << Num(by - 0.5 * bx)
            << "\"/>\n";
      }
    }
    svg << "</g>\n";
  }
  if (spec.ideal_path && !scene.ideal_path.empty()) {
    svg << "<g id=\"ideal\">\n"
        << Polyline(scene.ideal_path, meter_px, "#00a000", 1.5, "4 3") << "</g>\n";
  }
  if (spec.trajectory) {
    svg << "<g id=\"trajectory\">\n";
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
      svg << "<!-- " << Escape(trajectories[i].label) << " -->\n"
          << Polyline(trajectories[i].points, meter_px, kPalette[i % 8], 2.0);
    }
    svg << "</g>\n";
  }
  if (spec.markers) {
    svg << "<g id=\"markers\">\n";
    const auto start_marker = [&](const WorldPose& p) {
      svg << "<circle cx=\"" << Num(p.x * meter_px) << "\" cy=\"" << Num(p.y * meter_px)
          << "\" r=\"5\" fill=\"#2ca02c\"/>\n";
    };
    const auto target_marker = [&](Cell c) {
      const Point2 w = scene.frame.PixelToWorld(c);
      const double x = w.x * meter_px;
      const double y = w.y * meter_px;
      svg << "<path stroke=\"#d62728\" stroke-width=\"2\" d=\"M" << Num(x - 5) << ' '
          << Num(y - 5) << " L" << Num(x + 5) << ' ' << Num(y + 5) << " M" << Num(x - 5)
          << ' ' << Num(y + 5) << " L" << Num(x + 5) << ' ' << Num(y - 5) << "\"/>\n";
    };
    if (scenario.multi.agents.empty()) {
      start_marker(scenario.start);
      target_marker(scenario.target);
    } else {
      for (const AgentSpec& a : scenario.multi.agents) {
        start_marker(a.start);
        target_marker(a.target);
      }
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string RenderChart(const std::string& title, const std::string& x_label,
                        const std::string& y_label, const std::vector<ChartSeries>& series,
                        int width_px, int height_px) {
  double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
  bool first = true;
  for (const ChartSeries& s : series) {
    if (s.x.size() != s.y.size()) throw std::invalid_argument("chart series length mismatch");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (first) {
        x_min = x_max = s.x[i];
        y_min = y_max = s.y[i];
        first = false;
      }
      x_min = std::min(x_min, s.x[i]);
      x_max = std::max(x_max, s.x[i]);
      y_min = std::min(y_min, s.y[i]);
      y_max = std::max(y_max, s.y[i]);
    }
  }
  y_min = std::min(y_min, 0.0);
  if (x_max <= x_min) x_max = x_min + 1.0;
  if (y_max <= y_min) y_max = y_min + 1.0;
  const double left = 70, right = 20, top = 40, bottom = 50;
  const double pw = width_px - left - right;
  const double ph = height_px - top - bottom;
  const auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * pw; };
  const auto py = [&](double y) { return top + ph - (y - y_min) / (y_max - y_min) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_px << "\" height=\""
      << height_px << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  svg << "<text x=\"" << Num(width_px / 2.0) << "\" y=\"20\" text-anchor=\"middle\">"
      << Escape(title) << "</text>\n";
  svg << "<rect x=\"" << Num(left) << "\" y=\"" << Num(top) << "\" width=\"" << Num(pw)
      << "\" height=\"" << Num(ph) << "\" fill=\"none\" stroke=\"#000000\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x_min + (x_max - x_min) * i / 4.0;
    const double yv = y_min + (y_max - y_min) * i / 4.0;
    char label[32];
    std::snprintf(label, sizeof(label), "%.3g", xv);
    svg << "<text x=\"" << Num(px(xv)) << "\" y=\"" << Num(top + ph + 16)
        << "\" text-anchor=\"middle\">" << label << "</text>\n";
    std::snprintf(label, sizeof(label), "%.3g", yv);
    svg << "<text x=\"" << Num(left - 6) << "\" y=\"" << Num(py(yv) + 4)
        << "\" text-anchor=\"end\">" << label << "</text>\n";
  }
  svg << "<text x=\"" << Num(left + pw / 2) << "\" y=\"" << Num(height_px - 10.0)
      << "\" text-anchor=\"middle\">" << Escape(x_label) << "</text>\n";
  svg << "<text x=\"14\" y=\"" << Num(top + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
      << Num(top + ph / 2) << ")\">" << Escape(y_label) << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const ChartSeries& s = series[k];
    const char* color = kPalette[k % 8];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    bool sep = false;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      svg << (sep ? " " : "") << Num(px(s.x[i])) << ',' << Num(py(s.y[i]));
      sep = true;
    }
    svg << "\"/>\n";
    svg << "<text x=\"" << Num(left + 10) << "\" y=\"" << Num(top + 16 + 14.0 * k)
        << "\" fill=\"" << color << "\">" << Escape(s.label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace ispace
