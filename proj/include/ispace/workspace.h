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

// Workspace data model: the overhead grayscale image, binary edge maps, world
// poses and the pixel <-> world mapping.
//
// Frame convention: x grows rightward along image columns, y grows downward
// along image rows, origin at the top-left image corner. The world frame is
// the pixel frame scaled by the resolution G_D (meters per pixel). Headings
// are measured from +x, positive toward +y.

#ifndef ISPACE_WORKSPACE_H_
#define ISPACE_WORKSPACE_H_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ispace/grid.h"

namespace ispace {

inline constexpr double kPi = 3.14159265358979323846;

// Wraps an angle into (-pi, pi].
double NormalizeAngle(double angle);

struct WorldPose {
  double x = 0.0;      // meters
  double y = 0.0;      // meters
  double theta = 0.0;  // radians, (-pi, pi]

  Point2 position() const { return {x, y}; }
};

// Grayscale workspace image I(x, y).
class GridImage : public Grid<std::uint8_t> {
 public:
  using Grid<std::uint8_t>::Grid;
};

// Binary edge map E; cells equal to 1 form the boundary set.
class EdgeMap : public Grid<std::uint8_t> {
 public:
  using Grid<std::uint8_t>::Grid;

  std::size_t CountEdges() const;
};

// Thrown by LoadPgm. Each malformed-input class has its own kind.
class PgmError : public std::runtime_error {
 public:
  enum class Kind {
    kIo,
    kBadMagic,
    kMalformedHeader,
    kUnsupportedMaxValue,
    kTruncatedPayload,
    kTrailingData,
  };

  PgmError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Reads a binary (P5) 8-bit PGM. Header comments are accepted.
GridImage LoadPgm(const std::filesystem::path& path);
GridImage ParsePgm(const std::string& bytes);
std::string EncodePgm(const Grid<std::uint8_t>& image);
void SavePgm(const std::filesystem::path& path, const Grid<std::uint8_t>& image);

// Inclusive pixel rectangle [x0, x1] x [y0, y1].
struct RectShape {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;
  std::uint8_t intensity = 0;
};

// Cells whose center offset from (cx, cy) has length <= radius.
struct DiscShape {
  double cx = 0.0;
  double cy = 0.0;
  double radius = 0.0;
  std::uint8_t intensity = 0;
};

using Shape = std::variant<RectShape, DiscShape>;

// Draws shapes in order over a uniform background. Throws
// std::out_of_range if any shape extends past the image.
GridImage Rasterize(const std::vector<Shape>& shapes, int width, int height,
                    std::uint8_t background);

// Marks every cell covered by any shape (1) or not (0). Same bounds rules as
// Rasterize.
Grid<std::uint8_t> ShapeMask(const std::vector<Shape>& shapes, int width,
                             int height);

// Pixel <-> world mapping for an m x n image at resolution G_D.
class WorkspaceFrame {
 public:
  WorkspaceFrame(int width, int height, double gd);

  int width() const { return width_; }
  int height() const { return height_; }
  double gd() const { return gd_; }
  double extent_x() const { return width_ * gd_; }
  double extent_y() const { return height_ * gd_; }

  // Center of the cell, in meters.
  Point2 PixelToWorld(Cell cell) const;
  // Containing cell. Throws std::out_of_range outside [0, x_a) x [0, y_a).
  Cell WorldToPixel(Point2 world) const;
  bool InBounds(Point2 world) const;
  bool SameGeometry(const WorkspaceFrame& other) const {
    return width_ == other.width_ && height_ == other.height_ && gd_ == other.gd_;
  }

  // Continuous cell coordinates (pixel units) and back.
  Point2 WorldToGrid(Point2 world) const { return {world.x / gd_, world.y / gd_}; }
  Point2 GridToWorld(Point2 grid) const { return {grid.x * gd_, grid.y * gd_}; }

 private:
  int width_;
  int height_;
  double gd_;
};

// Nearest cell to a continuous cell coordinate (floor, since cell (i, j)
// spans [i, i+1) x [j, j+1)).
Cell ContainingCell(Point2 grid_point);
inline Point2 CellCenter(Cell c) { return {c.x + 0.5, c.y + 0.5}; }

}  // namespace ispace

#endif  // ISPACE_WORKSPACE_H_
