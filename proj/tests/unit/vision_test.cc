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

#include "ispace/vision.h"

#include <cmath>
#include <deque>
#include <random>

#include <gtest/gtest.h>

namespace ispace::vision {
namespace {

RealGrid Ramp(int w, int h, double slope) {
  RealGrid g(w, h, 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) g(x, y) = 10.0 + slope * x;
  }
  return g;
}

// Outside flood fill of non-edge cells, 4-connected, from (0, 0).
Grid<std::uint8_t> OutsideFill(const EdgeMap& edges) {
  Grid<std::uint8_t> seen(edges.width(), edges.height(), 0);
  std::deque<Cell> queue{{0, 0}};
  seen(0, 0) = 1;
  while (!queue.empty()) {
    const Cell c = queue.front();
    queue.pop_front();
    for (const Cell n : {Cell{c.x + 1, c.y}, Cell{c.x - 1, c.y}, Cell{c.x, c.y + 1},
                         Cell{c.x, c.y - 1}}) {
      if (!seen.Contains(n) || seen[n] || edges[n]) continue;
      seen[n] = 1;
      queue.push_back(n);
    }
  }
  return seen;
}

TEST(Gaussian, ClosedFormValues) {
  EXPECT_NEAR(GaussianValue(1.0, 0, 0), 1.0 / (2 * kPi), 1e-12);
  EXPECT_NEAR(GaussianValue(1.0, 1, 0) / GaussianValue(1.0, 0, 0), std::exp(-0.5), 1e-12);
  EXPECT_NEAR(LogValue(1.0, 0, 0), -2.0 / (2 * kPi), 1e-12);
}

TEST(Gaussian, KernelIsNormalized) {
  for (const double sigma : {0.7, 1.0, 2.0}) {
    EXPECT_NEAR(MakeGaussian(sigma, 3).Sum(), 1.0, 1e-12);
  }
}

TEST(Log, KernelZeroSumAndRotationSymmetric) {
  for (const double sigma : {0.8, 1.0, 2.0}) {
    const Kernel k = MakeLog(sigma, static_cast<int>(std::ceil(3 * sigma)));
    EXPECT_LE(std::abs(k.Sum()), 1e-12);
    EXPECT_LT(k.at(0, 0), 0.0);
    const int r = k.radius();
    for (int dy = -r; dy <= r; ++dy) {
      for (int dx = -r; dx <= r; ++dx) EXPECT_DOUBLE_EQ(k.at(dx, dy), k.at(-dy, dx));
    }
  }
}

TEST(Log, ConstantImageGivesZeroResponse) {
  const RealGrid flat(20, 20, 77.0);
  const RealGrid out = Convolve(flat, MakeLog(1.0, 3));
  for (const double v : out.values()) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(Gog, RampResponse) {
  const GogKernels g = MakeGog(1.0, 3);
  EXPECT_LE(std::abs(g.x.Sum()), 1e-12);
  EXPECT_LE(std::abs(g.y.Sum()), 1e-12);
  const RealGrid ramp = Ramp(30, 20, 2.5);
  const RealGrid rx = Convolve(ramp, g.x);
  const RealGrid ry = Convolve(ramp, g.y);
  for (int y = 4; y < 16; ++y) {
    for (int x = 4; x < 26; ++x) {
      EXPECT_NEAR(rx(x, y), 2.5, 1e-6);
      EXPECT_NEAR(ry(x, y), 0.0, 1e-6);
    }
  }
}

TEST(Gog, AntisymmetryAndAxisSwap) {
  const GogKernels g = MakeGog(1.2, 4);
  for (int dy = -4; dy <= 4; ++dy) {
    for (int dx = -4; dx <= 4; ++dx) {
      EXPECT_DOUBLE_EQ(g.x.at(dx, dy), -g.x.at(-dx, dy));
      EXPECT_DOUBLE_EQ(g.x.at(dx, dy), g.x.at(dx, -dy));
      EXPECT_DOUBLE_EQ(g.x.at(dx, dy), g.y.at(dy, dx));
    }
  }
  std::mt19937 rng(5);
  RealGrid img(16, 16, 0.0);
  for (double& v : img.values()) v = std::uniform_real_distribution<double>(0, 255)(rng);
  RealGrid swapped(16, 16, 0.0);
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) swapped(x, y) = img(y, x);
  }
  const RealGrid a = Convolve(img, g.x);
  const RealGrid b = Convolve(swapped, g.y);
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) EXPECT_NEAR(a(x, y), b(y, x), 1e-9);
  }
}

TEST(Convolve, IdentityAndAverage) {
  Grid<double> id(3, 3, 0.0);
  id(1, 1) = 1.0;
  RealGrid img(5, 5, 0.0);
  for (std::size_t i = 0; i < img.size(); ++i) img.values()[i] = static_cast<double>(i * i % 11);
  EXPECT_EQ(Convolve(img, Kernel(1, id)), img);

  const Kernel avg(1, Grid<double>(3, 3, 1.0 / 9.0));
  const RealGrid out = Convolve(img, avg);
  double sum = 0.0;
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) sum += img(2 + dx, 2 + dy);
  }
  EXPECT_NEAR(out(2, 2), sum / 9.0, 1e-12);
}

TEST(Convolve, IsLinear) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(0, 100);
  RealGrid a(12, 10, 0.0), b(12, 10, 0.0), mix(12, 10, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a.values()[i] = u(rng);
    b.values()[i] = u(rng);
    mix.values()[i] = 2.0 * a.values()[i] - 0.5 * b.values()[i];
  }
  const Kernel k = MakeLog(1.0, 3);
  const RealGrid ca = Convolve(a, k), cb = Convolve(b, k), cm = Convolve(mix, k);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(cm.values()[i], 2.0 * ca.values()[i] - 0.5 * cb.values()[i], 1e-9);
  }
}

TEST(Convolve, KernelLargerThanImageThrows) {
  EXPECT_THROW(Convolve(RealGrid(5, 5, 0.0), MakeLog(1.0, 3)), std::invalid_argument);
}

TEST(ZeroCross, RuleApplication) {
  EXPECT_EQ(ZeroCross(RealGrid(4, 4, 1.0)).CountEdges(), 0u);
  const EdgeMap e = ZeroCross(RealGrid(3, 1, std::vector<double>{3.0, -1.0, -2.0}));
  EXPECT_EQ(e(0, 0), 0);
  EXPECT_EQ(e(1, 0), 1);
  EXPECT_EQ(e(2, 0), 0);
  const EdgeMap z = ZeroCross(RealGrid(3, 1, std::vector<double>{0.0, 0.0, 2.0}));
  EXPECT_EQ(z(1, 0), 1);
  EXPECT_EQ(z(0, 0), 0);
}

TEST(ContrastFilter, ThresholdExtremes) {
  EdgeMap cand(4, 4, 0);
  cand(1, 1) = 1;
  cand(2, 3) = 1;
  const RealGrid gx(4, 4, 3.0), gy(4, 4, 4.0);
  EXPECT_EQ(ContrastFilter(cand, gx, gy, 0.0), cand);
  EXPECT_EQ(ContrastFilter(cand, gx, gy, 5.0), cand);
  EXPECT_EQ(ContrastFilter(cand, gx, gy, 5.0001).CountEdges(), 0u);
  EXPECT_EQ(ContrastFilter(cand, gx, gy, INFINITY).CountEdges(), 0u);
  EXPECT_THROW(ContrastFilter(cand, RealGrid(3, 4, 0.0), gy, 1.0), std::invalid_argument);
}

TEST(ContrastFilter, RemovesNoiseKeepsDisc) {
  const int w = 80, h = 60;
  const GridImage clean = Rasterize({DiscShape{40, 30, 12, 20}}, w, h, 200);
  std::mt19937 rng(17);
  std::normal_distribution<double> noise(0.0, 5.0);
  GridImage noisy(w, h, 0);
  for (std::size_t i = 0; i < clean.size(); ++i) {
    const double v = clean.values()[i] + noise(rng);
    noisy.values()[i] = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
  }
  const RealGrid real = ToReal(noisy);
  const Kernel log = MakeLog(1.0, 3);
  const GogKernels gog = MakeGog(1.0, 3);
  const EdgeMap cand = ZeroCross(Convolve(real, log));
  const EdgeMap kept = ContrastFilter(cand, Convolve(real, gog.x), Convolve(real, gog.y), 20.0);
  // Cells farther than 4 px from the disc rim see only noise.
  int noise_cand = 0, noise_kept = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (std::abs(std::hypot(x + 0.5 - 40, y + 0.5 - 30) - 12) <= 4) continue;
      noise_cand += cand(x, y);
      noise_kept += kept(x, y);
    }
  }
  ASSERT_GT(noise_cand, 100);
  EXPECT_LE(noise_kept, 0.05 * noise_cand);
  EXPECT_FALSE(OutsideFill(kept)(40, 30));
}

TEST(DetectEdges, UniformImageIsEmpty) {
  EXPECT_EQ(DetectEdges(GridImage(40, 30, 90), VisionParams{}).CountEdges(), 0u);
}

TEST(DetectEdges, DiscContourIsClosedAndThin) {
  const GridImage img = Rasterize({DiscShape{32, 24, 10, 40}}, 64, 48, 200);
  const EdgeMap e = DetectEdges(img, VisionParams{});
  const auto outside = OutsideFill(e);
  for (int y = 0; y < 48; ++y) {
    for (int x = 0; x < 64; ++x) {
      if (std::hypot(x + 0.5 - 32, y + 0.5 - 24) < 8) EXPECT_FALSE(outside(x, y));
    }
  }
  EXPECT_LE(static_cast<double>(e.CountEdges()) / e.size(), 0.15);
}

TEST(DetectEdges, OneContourPerObstacle) {
  const int w = 120, h = 90;
  const GridImage img = Rasterize(
      {RectShape{10, 10, 35, 30, 30}, DiscShape{80, 25, 12, 20}, RectShape{40, 55, 100, 70, 50}},
      w, h, 210);
  const EdgeMap e = DetectEdges(img, VisionParams{});
  // 8-connected components of edge cells.
  Grid<int> label(w, h, 0);
  int components = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!e(x, y) || label(x, y)) continue;
      ++components;
      std::deque<Cell> queue{{x, y}};
      label(x, y) = components;
      while (!queue.empty()) {
        const Cell c = queue.front();
        queue.pop_front();
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const Cell n{c.x + dx, c.y + dy};
            if (!e.Contains(n) || !e[n] || label[n]) continue;
            label[n] = components;
            queue.push_back(n);
          }
        }
      }
    }
  }
  EXPECT_EQ(components, 3);
  const auto outside = OutsideFill(e);
  EXPECT_FALSE(outside(22, 20));
  EXPECT_FALSE(outside(80, 25));
  EXPECT_FALSE(outside(70, 62));
}

TEST(VisionParams, Validation) {
  VisionParams p;
  EXPECT_EQ(p.EffectiveRadius(), 3);
  p.sigma = 0.0;
  EXPECT_THROW(p.Validate(), std::invalid_argument);
  p.sigma = 1.0;
  p.zeta = -1.0;
  EXPECT_THROW(p.Validate(), std::invalid_argument);
}

}  // namespace
}  // namespace ispace::vision
