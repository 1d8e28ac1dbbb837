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

#include "ispace/workspace.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

namespace ispace {

double NormalizeAngle(double angle) {
  double a = std::remainder(angle, 2.0 * kPi);
  // remainder() yields [-pi, pi]; fold -pi onto +pi.
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

std::size_t EdgeMap::CountEdges() const {
  return static_cast<std::size_t>(
      std::count(values().begin(), values().end(), std::uint8_t{1}));
}

namespace {

// Reads one whitespace-delimited header token, skipping '#' comments.
bool NextHeaderToken(const std::string& bytes, std::size_t& pos,
                     std::string& token) {
  token.clear();
  while (pos < bytes.size()) {
    const char c = bytes[pos];
    if (c == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
    } else {
      break;
    }
  }
  while (pos < bytes.size() &&
         !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    token.push_back(bytes[pos++]);
  }
  return !token.empty();
}

int ParseHeaderInt(const std::string& token, const char* field) {
  if (token.empty() ||
      !std::all_of(token.begin(), token.end(),
                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
      token.size() > 9) {
    throw PgmError(PgmError::Kind::kMalformedHeader,
                   std::string("PGM header: invalid ") + field + " '" + token +
                       "'");
  }
  return std::stoi(token);
}

}  // namespace

GridImage ParsePgm(const std::string& bytes) {
  std::size_t pos = 0;
  std::string token;
  if (!NextHeaderToken(bytes, pos, token) || token != "P5") {
    throw PgmError(PgmError::Kind::kBadMagic,
                   "not a binary PGM (expected magic P5)");
  }
  if (!NextHeaderToken(bytes, pos, token)) {
    throw PgmError(PgmError::Kind::kMalformedHeader, "PGM header: missing width");
  }
  const int width = ParseHeaderInt(token, "width");
  if (!NextHeaderToken(bytes, pos, token)) {
    throw PgmError(PgmError::Kind::kMalformedHeader, "PGM header: missing height");
  }
  const int height = ParseHeaderInt(token, "height");
  if (!NextHeaderToken(bytes, pos, token)) {
    throw PgmError(PgmError::Kind::kMalformedHeader,
                   "PGM header: missing max value");
  }
  const int max_value = ParseHeaderInt(token, "max value");
  if (width <= 0 || height <= 0) {
    throw PgmError(PgmError::Kind::kMalformedHeader,
                   "PGM header: dimensions must be positive");
  }
  if (max_value != 255) {
    throw PgmError(PgmError::Kind::kUnsupportedMaxValue,
                   "PGM max value " + std::to_string(max_value) +
                       " unsupported (only 255)");
  }
  // Exactly one whitespace byte separates the header from the raster.
  if (pos >= bytes.size() ||
      !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    throw PgmError(PgmError::Kind::kTruncatedPayload,
                   "PGM payload missing after header");
  }
  ++pos;
  const std::size_t expected = static_cast<std::size_t>(width) * height;
  const std::size_t available = bytes.size() - pos;
  if (available < expected) {
    throw PgmError(PgmError::Kind::kTruncatedPayload,
                   "PGM payload truncated: expected " + std::to_string(expected) +
                       " bytes, found " + std::to_string(available));
  }
  if (available > expected) {
    throw PgmError(PgmError::Kind::kTrailingData,
                   "PGM payload has " + std::to_string(available - expected) +
                       " bytes beyond the declared " + std::to_string(width) +
                       "x" + std::to_string(height) + " raster");
  }
  std::vector<std::uint8_t> pixels(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                                   bytes.end());
  return GridImage(width, height, std::move(pixels));
}

GridImage LoadPgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw PgmError(PgmError::Kind::kIo, "cannot open " + path.string());
  }
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return ParsePgm(bytes);
}

std::string EncodePgm(const Grid<std::uint8_t>& image) {
  std::string out = "P5\n" + std::to_string(image.width()) + " " +
                    std::to_string(image.height()) + "\n255\n";
  out.append(image.values().begin(), image.values().end());
  return out;
}

void SavePgm(const std::filesystem::path& path, const Grid<std::uint8_t>& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const std::string bytes = EncodePgm(image);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

namespace {

template <typename Paint>
void VisitShapeCells(const Shape& shape, int width, int height, Paint paint) {
  if (const auto* rect = std::get_if<RectShape>(&shape)) {
    if (rect->x0 > rect->x1 || rect->y0 > rect->y1 || rect->x0 < 0 ||
        rect->y0 < 0 || rect->x1 >= width || rect->y1 >= height) {
      std::ostringstream msg;
      msg << "rectangle [" << rect->x0 << "," << rect->x1 << "]x[" << rect->y0
          << "," << rect->y1 << "] outside " << width << "x" << height;
      throw std::out_of_range(msg.str());
    }
    for (int y = rect->y0; y <= rect->y1; ++y) {
      for (int x = rect->x0; x <= rect->x1; ++x) paint(x, y, rect->intensity);
    }
    return;
  }
  const auto& disc = std::get<DiscShape>(shape);
  if (!(disc.radius >= 0.0) || disc.cx - disc.radius < 0.0 ||
      disc.cy - disc.radius < 0.0 || disc.cx + disc.radius > width ||
      disc.cy + disc.radius > height) {
    std::ostringstream msg;
    msg << "disc center (" << disc.cx << "," << disc.cy << ") radius "
        << disc.radius << " outside " << width << "x" << height;
    throw std::out_of_range(msg.str());
  }
  const int x_lo = std::max(0, static_cast<int>(std::floor(disc.cx - disc.radius)));
  const int x_hi = std::min(width - 1, static_cast<int>(std::ceil(disc.cx + disc.radius)));
  const int y_lo = std::max(0, static_cast<int>(std::floor(disc.cy - disc.radius)));
  const int y_hi = std::min(height - 1, static_cast<int>(std::ceil(disc.cy + disc.radius)));
  const double r2 = disc.radius * disc.radius;
  for (int y = y_lo; y <= y_hi; ++y) {
    for (int x = x_lo; x <= x_hi; ++x) {
      const double dx = x + 0.5 - disc.cx;
      const double dy = y + 0.5 - disc.cy;
      if (dx * dx + dy * dy <= r2) paint(x, y, disc.intensity);
    }
  }
}

}  // namespace

GridImage Rasterize(const std::vector<Shape>& shapes, int width, int height,
                    std::uint8_t background) {
  GridImage image(width, height, background);
  for (const Shape& shape : shapes) {
    VisitShapeCells(shape, width, height,
                    [&](int x, int y, std::uint8_t v) { image(x, y) = v; });
  }
  return image;
}

Grid<std::uint8_t> ShapeMask(const std::vector<Shape>& shapes, int width,
                             int height) {
  Grid<std::uint8_t> mask(width, height, 0);
  for (const Shape& shape : shapes) {
    VisitShapeCells(shape, width, height,
                    [&](int x, int y, std::uint8_t) { mask(x, y) = 1; });
  }
  return mask;
}

WorkspaceFrame::WorkspaceFrame(int width, int height, double gd)
    : width_(width), height_(height), gd_(gd) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("workspace dimensions must be positive");
  }
  if (!(gd > 0.0) || !std::isfinite(gd)) {
    throw std::invalid_argument("G_D must be positive");
  }
}

Point2 WorkspaceFrame::PixelToWorld(Cell cell) const {
  return {(cell.x + 0.5) * gd_, (cell.y + 0.5) * gd_};
}

bool WorkspaceFrame::InBounds(Point2 world) const {
  return world.x >= 0.0 && world.y >= 0.0 && world.x < extent_x() &&
         world.y < extent_y();
}

Cell WorkspaceFrame::WorldToPixel(Point2 world) const {
  if (!InBounds(world)) {
    std::ostringstream msg;
    msg << "world point (" << world.x << ", " << world.y
        << ") outside workspace [0, " << extent_x() << ") x [0, " << extent_y()
        << ")";
    throw std::out_of_range(msg.str());
  }
  Cell c{static_cast<int>(std::floor(world.x / gd_)),
         static_cast<int>(std::floor(world.y / gd_))};
  // Guard the x_a - ulp case where the division rounds up to m.
  c.x = std::min(c.x, width_ - 1);
  c.y = std::min(c.y, height_ - 1);
  return c;
}

Cell ContainingCell(Point2 grid_point) {
  return {static_cast<int>(std::floor(grid_point.x)),
          static_cast<int>(std::floor(grid_point.y))};
}

}  // namespace ispace
