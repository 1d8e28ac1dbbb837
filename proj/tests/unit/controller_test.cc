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

#include "ispace/controller.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

namespace ispace::controller {
namespace {

TEST(BodyErrors, Rotation) {
  BodyError e = BodyErrors({1, 1, 0}, {2, 1});
  EXPECT_NEAR(e.ex, 1.0, 1e-12);
  EXPECT_NEAR(e.ey, 0.0, 1e-12);
  e = BodyErrors({1, 1, kPi / 2}, {1, 2});
  EXPECT_NEAR(e.ex, 1.0, 1e-12);
  EXPECT_NEAR(e.ey, 0.0, 1e-12);
  e = BodyErrors({0, 0, 0}, {-1, 0});
  EXPECT_NEAR(e.ex, -1.0, 1e-12);
  EXPECT_LT(Command(CurveCoeff(e), e, UgvParams{}).v, 0.0);
}

TEST(CurveCoeff, Arithmetic) {
  EXPECT_DOUBLE_EQ(CurveCoeff({0.5, 0.25, 0}), 1.0);
  EXPECT_DOUBLE_EQ(CurveCoeff({-0.5, 0.25, 0}), -1.0);
  EXPECT_DOUBLE_EQ(CurveCoeff({0.5, 0.0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(CurveCoeff({0.0, 0.3, 0}), kCurveCoeffCap);
  EXPECT_DOUBLE_EQ(CurveCoeff({0.0, -0.3, 0}), -kCurveCoeffCap);
}

TEST(Command, GainLaw) {
  const UgvParams p;
  ControlCommand c = Command(0.0, {0.3, 0, 0}, p);
  EXPECT_DOUBLE_EQ(c.v, 0.2);
  EXPECT_DOUBLE_EQ(c.omega, 0.0);
  c = Command(1.0, {0.3, 0.09, 0}, p);
  EXPECT_DOUBLE_EQ(c.v, 0.1);
  EXPECT_DOUBLE_EQ(c.omega, 0.2);
  c = Command(0.0, {-0.3, 0, 0}, p);
  EXPECT_DOUBLE_EQ(c.v, -0.2);
  EXPECT_DOUBLE_EQ(c.omega, 0.0);
}

TEST(Command, SaturationKeepsCurvature) {
  UgvParams p;
  p.alpha = 1.0;
  p.v_limit = 0.3;
  p.omega_limit = 0.2;
  const ControlCommand c = Command(2.0, {0.2, 0.08, 0}, p);
  EXPECT_LE(std::abs(c.v), 0.3 + 1e-12);
  EXPECT_LE(std::abs(c.omega), 0.2 + 1e-12);
  EXPECT_NEAR(c.omega / c.v, 4.0, 1e-12);
}

TEST(WheelSpeeds, Conversions) {
  const UgvParams p;
  WheelSpeeds w = ToWheelSpeeds({0.2, 0.0}, p);
  EXPECT_NEAR(w.right, 4.0, 1e-12);
  EXPECT_NEAR(w.left, 4.0, 1e-12);
  w = ToWheelSpeeds({0.0, 1.0}, p);
  EXPECT_NEAR(w.right, 3.0, 1e-12);
  EXPECT_NEAR(w.left, -3.0, 1e-12);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 100; ++i) {
    const ControlCommand c{u(rng), u(rng)};
    const ControlCommand back = FromWheelSpeeds(ToWheelSpeeds(c, p), p);
    EXPECT_NEAR(back.v, c.v, 1e-12);
    EXPECT_NEAR(back.omega, c.omega, 1e-12);
  }
}

TEST(UgvParams, Validation) {
  UgvParams p;
  EXPECT_NO_THROW(p.Validate());
  p.track_width = 0;
  EXPECT_THROW(p.Validate(), std::invalid_argument);
  p = UgvParams{};
  p.alpha = -0.1;
  EXPECT_THROW(p.Validate(), std::invalid_argument);
}

}  // namespace
}  // namespace ispace::controller
