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

#include <cmath>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

namespace ispace {
namespace {

std::string Pgm(const std::string& header, const std::string& payload) {
  return header + payload;
}

TEST(Pgm, ParsesTwoByTwoPayload) {
  const std::string bytes = Pgm("P5\n2 2\n255\n", std::string("\x00\xff\x80\x40", 4));
  const GridImage img = ParsePgm(bytes);
  ASSERT_EQ(img.width(), 2);
  ASSERT_EQ(img.height(), 2);
  EXPECT_EQ(img(0, 0), 0);
  EXPECT_EQ(img(1, 0), 255);
  EXPECT_EQ(img(0, 1), 128);
  EXPECT_EQ(img(1, 1), 64);
}

TEST(Pgm, ParsesFullResolutionImage) {
  const GridImage img = ParsePgm(Pgm("P5\n# overhead camera\n320 240\n255\n",
                                     std::string(76800, '\x07')));
  EXPECT_EQ(img.width(), 320);
  EXPECT_EQ(img.height(), 240);
  EXPECT_EQ(img(319, 239), 7);
}

PgmError::Kind KindOf(const std::string& bytes) {
  try {
    ParsePgm(bytes);
  } catch (const PgmError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error";
  return PgmError::Kind::kIo;
}

TEST(Pgm, RejectsMalformedInput) {
  EXPECT_EQ(KindOf(Pgm("P5\n4 4\n255\n", std::string(15, 'a'))),
            PgmError::Kind::kTruncatedPayload);
  EXPECT_EQ(KindOf(Pgm("P2\n4 4\n255\n", std::string(16, 'a'))), PgmError::Kind::kBadMagic);
  EXPECT_EQ(KindOf(Pgm("P5\n4 4\n65535\n", std::string(32, 'a'))),
            PgmError::Kind::kUnsupportedMaxValue);
  EXPECT_EQ(KindOf(Pgm("P5\n4 x\n255\n", std::string(16, 'a'))),
            PgmError::Kind::kMalformedHeader);
  EXPECT_EQ(KindOf(Pgm("P5\n4 4\n255\n", std::string(17, 'a'))),
            PgmError::Kind::kTrailingData);
}

TEST(Pgm, SaveLoadRoundTrip) {
  GridImage img(5, 3, 0);
  for (std::size_t i = 0; i < img.size(); ++i) img.values()[i] = static_cast<std::uint8_t>(i * 17);
  const auto path = std::filesystem::temp_directory_path() / "ispace_workspace_test.pgm";
  SavePgm(path, img);
  EXPECT_EQ(LoadPgm(path), img);
  std::filesystem::remove(path);
  try {
    LoadPgm(path);
    FAIL() << "expected an I/O error";
  } catch (const PgmError& e) {
    EXPECT_EQ(e.kind(), PgmError::Kind::kIo);
  }
}

TEST(Rasterize, EmptyShapeListIsUniform) {
  const GridImage img = Rasterize({}, 10, 10, 200);
  for (const auto v : img.values()) EXPECT_EQ(v, 200);
}

TEST(Rasterize, DiscMatchesBruteForceCount) {
  const GridImage img = Rasterize({DiscShape{10.5, 10.5, 3.0, 20}}, 21, 21, 200);
  int expected = 0;
  int actual = 0;
  for (int y = 0; y < 21; ++y) {
    for (int x = 0; x < 21; ++x) {
      if (std::hypot(x + 0.5 - 10.5, y + 0.5 - 10.5) <= 3.0) ++expected;
      if (img(x, y) == 20) ++actual;
    }
  }
  EXPECT_EQ(expected, 29);
  EXPECT_EQ(actual, expected);
}

TEST(Rasterize, FullRectangleCoversImage) {
  const GridImage img = Rasterize({RectShape{0, 0, 9, 7, 33}}, 10, 8, 200);
  for (const auto v : img.values()) EXPECT_EQ(v, 33);
}

TEST(Rasterize, ShapePastImageThrows) {
  EXPECT_THROW(Rasterize({RectShape{0, 0, 10, 3, 0}}, 10, 8, 200), std::out_of_range);
  EXPECT_THROW(ShapeMask({DiscShape{1, 1, 3, 0}}, 10, 8), std::out_of_range);
}

TEST(Rasterize, MaskMarksShapeCells) {
  const auto mask = ShapeMask({RectShape{2, 2, 3, 4, 0}}, 8, 8);
  int count = 0;
  for (const auto v : mask.values()) count += v;
  EXPECT_EQ(count, 6);
  EXPECT_EQ(mask(2, 4), 1);
  EXPECT_EQ(mask(4, 4), 0);
}

TEST(Frame, PixelCenters) {
  const WorkspaceFrame f(320, 240, 0.0125);
  const Point2 p = f.PixelToWorld({0, 0});
  EXPECT_DOUBLE_EQ(p.x, 0.00625);
  EXPECT_DOUBLE_EQ(p.y, 0.00625);
  EXPECT_DOUBLE_EQ(f.extent_x(), 4.0);
  EXPECT_DOUBLE_EQ(f.extent_y(), 3.0);
}

TEST(Frame, RoundTripsCells) {
  const WorkspaceFrame f(320, 240, 0.0125);
  for (const Cell c : {Cell{0, 0}, Cell{319, 239}, Cell{160, 7}}) {
    EXPECT_EQ(f.WorldToPixel(f.PixelToWorld(c)), c);
  }
}

TEST(Frame, OutOfBoundsThrows) {
  const WorkspaceFrame f(320, 240, 0.0125);
  EXPECT_THROW(f.WorldToPixel({4.1, 1.0}), std::out_of_range);
  EXPECT_THROW(f.WorldToPixel({-0.001, 1.0}), std::out_of_range);
  EXPECT_FALSE(f.InBounds({4.0, 1.0}));
  EXPECT_TRUE(f.InBounds({3.999, 2.999}));
}

TEST(Frame, RejectsBadGeometry) {
  EXPECT_THROW(WorkspaceFrame(320, 240, 0.0), std::invalid_argument);
  EXPECT_THROW(WorkspaceFrame(0, 240, 0.0125), std::invalid_argument);
}

TEST(Angles, NormalizeIntoHalfOpenInterval) {
  EXPECT_DOUBLE_EQ(NormalizeAngle(kPi), kPi);
  EXPECT_DOUBLE_EQ(NormalizeAngle(-kPi), kPi);
  EXPECT_NEAR(NormalizeAngle(3 * kPi / 2), -kPi / 2, 1e-12);
  EXPECT_NEAR(NormalizeAngle(0.25 + 4 * kPi), 0.25, 1e-12);
}

}  // namespace
}  // namespace ispace
