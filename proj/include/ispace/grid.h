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

#ifndef ISPACE_GRID_H_
#define ISPACE_GRID_H_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ispace {

// Integer pixel coordinate. x indexes columns (rightward), y indexes rows
// (downward).
struct Cell {
  int x = 0;
  int y = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

// Continuous 2-D point. Used both for world coordinates (meters) and for
// continuous cell coordinates (pixel units, cell (i, j) spans [i, i+1)).
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }

// Dense row-major 2-D array.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(int width, int height, T fill = T{})
      : width_(width), height_(height) {
    if (width <= 0 || height <= 0) {
      throw std::invalid_argument("grid dimensions must be positive, got " +
                                  std::to_string(width) + "x" +
                                  std::to_string(height));
    }
    data_.assign(static_cast<std::size_t>(width) * height, fill);
  }
  Grid(int width, int height, std::vector<T> data)
      : width_(width), height_(height), data_(std::move(data)) {
    if (width <= 0 || height <= 0) {
      throw std::invalid_argument("grid dimensions must be positive");
    }
    if (data_.size() != static_cast<std::size_t>(width) * height) {
      throw std::invalid_argument("grid data size does not match dimensions");
    }
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }

  bool Contains(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  bool Contains(Cell c) const { return Contains(c.x, c.y); }
  bool OnFrame(Cell c) const {
    return c.x == 0 || c.y == 0 || c.x == width_ - 1 || c.y == height_ - 1;
  }

  std::size_t Index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  T& operator()(int x, int y) { return data_[Index(x, y)]; }
  const T& operator()(int x, int y) const { return data_[Index(x, y)]; }
  T& operator[](Cell c) { return data_[Index(c.x, c.y)]; }
  const T& operator[](Cell c) const { return data_[Index(c.x, c.y)]; }

  std::span<T> values() { return data_; }
  std::span<const T> values() const { return data_; }

  bool SameShape(int width, int height) const {
    return width_ == width && height_ == height;
  }
  template <typename U>
  bool SameShape(const Grid<U>& other) const {
    return SameShape(other.width(), other.height());
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

}  // namespace ispace

#endif  // ISPACE_GRID_H_
