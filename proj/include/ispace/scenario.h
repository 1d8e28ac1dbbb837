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

// Scenario: one experiment as a JSON file. The schema is documented in
// docs/scenario.md; every field except the workspace, target and start has a
// default.

#ifndef ISPACE_SCENARIO_H_
#define ISPACE_SCENARIO_H_

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "ispace/controller.h"
#include "ispace/guidance.h"
#include "ispace/hpf.h"
#include "ispace/plant.h"
#include "ispace/vision.h"
#include "ispace/workspace.h"

namespace ispace {

inline constexpr int kScenarioSchemaVersion = 1;

// Configuration error naming the offending field (dotted JSON path).
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class PlannerKind { kHpf, kFm };

const char* PlannerName(PlannerKind planner);
PlannerKind ParsePlanner(const std::string& name);

struct DelayModel {
  double total_s = 0.0;  // round-trip network delay
  double jitter_s = 0.0; // uniform half-width, per link
  double drop_prob = 0.0;
  double deadline_s = std::numeric_limits<double>::infinity();
  double uplink_fraction = 0.5;
  double watchdog_s = 1.0;
  double compute_s = 0.0;
};

struct AgentSpec {
  WorldPose start;
  Cell target;
};

struct MultiAgentConfig {
  double agent_radius_m = 0.15;
  int sweeps_per_frame = 200;
  std::vector<AgentSpec> agents;
};

struct Scenario {
  // Workspace source: an image file, or a synthetic shape list.
  std::optional<std::filesystem::path> image_path;
  int width = 320;
  int height = 240;
  std::uint8_t background = 200;
  std::vector<Shape> shapes;
  double extent_x = 4.0;
  double extent_y = 3.0;
  double gd = 0.0125;

  Cell target;
  WorldPose start;

  plant::CameraModel camera;
  DelayModel delay;
  controller::UgvParams ugv;
  guidance::GuidanceParams guidance;
  PlannerKind planner = PlannerKind::kHpf;
  double goal_radius_m = 0.05;
  double timeout_s = 120.0;
  std::uint64_t seed = 1;

  vision::VisionParams vision;
  hpf::SolverParams solver;
  int dilation_px = 2;
  double plant_dt_s = 0.01;
  double fm_path_step = 0.5;

  MultiAgentConfig multi;

  WorkspaceFrame frame() const { return WorkspaceFrame(width, height, gd); }

  // Throws ScenarioError on the first violated invariant.
  void Validate() const;
};

Scenario ParseScenario(const nlohmann::json& doc,
                       const std::filesystem::path& base_dir = {});
// Throws ScenarioError (field "file") if unreadable or not JSON.
Scenario LoadScenario(const std::filesystem::path& path);

// Effective configuration, round-trippable through ParseScenario.
nlohmann::json ScenarioToJson(const Scenario& scenario);

// Looks up the workspace image: loaded from disk or rasterized.
GridImage ScenarioImage(const Scenario& scenario);

}  // namespace ispace

#endif  // ISPACE_SCENARIO_H_
