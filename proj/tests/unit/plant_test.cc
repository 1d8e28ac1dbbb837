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

#include "ispace/plant.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

namespace ispace::plant {
namespace {

TEST(Step, StraightAndSpin) {
  WorldPose p = Step({0, 0, 0}, 0.2, 0.0, 1.0);
  EXPECT_NEAR(p.x, 0.2, 1e-12);
  EXPECT_NEAR(p.y, 0.0, 1e-12);
  p = Step({1, 1, 0}, 0.0, kPi, 1.0);
  EXPECT_NEAR(p.x, 1.0, 1e-12);
  EXPECT_NEAR(p.y, 1.0, 1e-12);
  EXPECT_NEAR(std::abs(p.theta), kPi, 1e-12);
  EXPECT_THROW(Step({}, 0.1, 0.1, 0.0), std::invalid_argument);
}

TEST(Step, ExactArcIsStepSizeInvariant) {
  WorldPose fine{0.5, 0.5, 0.3};
  for (int i = 0; i < 100; ++i) fine = Step(fine, 0.1, 0.5, 0.01);
  const WorldPose coarse = Step({0.5, 0.5, 0.3}, 0.1, 0.5, 1.0);
  EXPECT_NEAR(fine.x, coarse.x, 1e-12);
  EXPECT_NEAR(fine.y, coarse.y, 1e-12);
  EXPECT_NEAR(fine.theta, coarse.theta, 1e-12);

  WorldPose euler{0.5, 0.5, 0.3};
  for (int i = 0; i < 10000; ++i) {
    euler.x += 0.1 * std::cos(euler.theta) * 1e-4;
    euler.y += 0.1 * std::sin(euler.theta) * 1e-4;
    euler.theta += 0.5 * 1e-4;
  }
  EXPECT_NEAR(euler.x, coarse.x, 1e-3);
  EXPECT_NEAR(euler.y, coarse.y, 1e-3);
}

TEST(Observe, QuantizationRule) {
  const WorkspaceFrame f(320, 240, 0.0125);
  const WorldPose pose{0.013, 0.013, 0.4};
  CameraModel cam;
  const WorldPose exact = Observe(pose, cam, f);
  EXPECT_EQ(exact.x, pose.x);
  EXPECT_EQ(exact.y, pose.y);
  cam.quantize = true;
  const WorldPose q = Observe(pose, cam, f);
  EXPECT_NEAR(q.x, 0.01875, 1e-12);
  EXPECT_NEAR(q.y, 0.01875, 1e-12);
  EXPECT_EQ(q.theta, 0.4);
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> ux(0, 4), uy(0, 3);
  for (int i = 0; i < 1000; ++i) {
    const WorldPose r{ux(rng), uy(rng), 0};
    const WorldPose o = Observe(r, cam, f);
    EXPECT_LE(std::hypot(o.x - r.x, o.y - r.y), 0.0125 * std::sqrt(2.0) / 2 + 1e-12);
  }
  EXPECT_THROW(Observe({4.5, 1, 0}, cam, f), std::out_of_range);
}

TEST(Collides, OpenSpaceAndEdgeCell) {
  EdgeMap e(40, 30, 0);
  e(20, 15) = 1;
  const hpf::BoundaryGrid b = hpf::BuildBoundary(e, {5, 5}, 1);
  const WorkspaceFrame f(40, 30, 0.0125);
  EXPECT_FALSE(Collides({0.1, 0.1, 0}, b, f));
  EXPECT_TRUE(Collides({f.PixelToWorld({21, 14}).x, f.PixelToWorld({21, 14}).y, 0}, b, f));
  EXPECT_TRUE(Collides({-0.1, 0.1, 0}, b, f));
}

TEST(CameraModel, Validation) {
  CameraModel c;
  EXPECT_NO_THROW(c.Validate());
  c.rate_hz = 0;
  EXPECT_THROW(c.Validate(), std::invalid_argument);
}

}  // namespace
}  // namespace ispace::plant
