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

// Networked control loop: camera -> uplink -> controller -> downlink -> plant,
// simulated on a fixed tick with delay-line (or UDP) channels.

#ifndef ISPACE_NETLOOP_H_
#define ISPACE_NETLOOP_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

#include "ispace/delay_line.h"
#include "ispace/fm_baseline.h"
#include "ispace/hpf.h"
#include "ispace/scenario.h"
#include "ispace/vision.h"
#include "ispace/workspace.h"

namespace ispace {

// Static planning products for one scene, shared by every run on it.
struct PreparedScene {
  WorkspaceFrame frame;
  GridImage image;
  EdgeMap edges;
  hpf::NavigationField field;
  // Collision ground truth: planning obstacles plus, for synthetic scenes,
  // every rasterized shape cell.
  Grid<std::uint8_t> occupied;
  fm::ArrivalField arrival;
  // Empty when the start cannot reach the target.
  std::optional<fm::ReferencePath> fm_path;
  // Zero-delay one-hop HPF descent from the start, in meters.
  std::vector<Point2> ideal_path;
  bool start_reachable = false;

  Point2 target_world() const { return frame.PixelToWorld(field.boundary.target()); }
  bool Occupied(Point2 world) const;
};

// Runs vision and both planners. Throws ScenarioError for scenes the loop
// cannot start in (target or start on an obstacle).
PreparedScene PrepareScene(const Scenario& scenario);
// Same, with a caller-supplied edge map in place of the vision stage.
PreparedScene PrepareScene(const Scenario& scenario, const EdgeMap& edges);

enum class Outcome { kReached, kTimeout, kUnreachable };
const char* OutcomeName(Outcome outcome);

struct RunRecord {
  double t = 0.0;
  WorldPose truth;
  WorldPose observed;  // latest camera sample
  double v_cmd = 0.0;  // latest command issued by the controller
  double omega_cmd = 0.0;
  double v_applied = 0.0;
  double omega_applied = 0.0;
  int delta_l = 0;
  double delay_up = 0.0;    // of the pose behind the latest command
  double delay_down = 0.0;  // of the command being applied
  double dist_err = 0.0;    // to the run's reference polyline
  bool collision = false;
};

struct ControlStep {
  std::uint32_t pose_sequence = 0;
  std::uint32_t command_sequence = 0;
  double observation_time = 0.0;
  double issue_time = 0.0;
  int delta_l = 0;
  double d0 = 0.0;
  // Path points a path-tracking controller scans at this step (N_p).
  std::size_t path_points = 0;
  bool flat = false;
  Point2 reference;
  double v = 0.0;
  double omega = 0.0;
};

struct AppliedCommand {
  std::uint32_t sequence = 0;
  double issue_time = 0.0;
  double applied_time = 0.0;
};

struct RunLog {
  std::vector<RunRecord> records;
  std::vector<ControlStep> steps;
  std::vector<AppliedCommand> applied;
  // Polyline dist_err is measured against.
  std::vector<Point2> reference_path;
  Outcome outcome = Outcome::kTimeout;
  double total_time = 0.0;
  bool any_collision = false;

  void WriteCsv(std::ostream& out) const;
  void WriteCsv(const std::filesystem::path& path) const;
};

// Uplink and downlink channels; both null selects DelayLine channels built
// from the scenario's delay model and seed.
struct Transport {
  Channel* uplink = nullptr;
  Channel* downlink = nullptr;
};

LinkModel UplinkModel(const DelayModel& delay);
LinkModel DownlinkModel(const DelayModel& delay);
std::uint64_t StreamSeed(std::uint64_t seed, std::uint64_t stream);

// `run` supplies the dynamic settings (delay, seed, planner, look-ahead,
// controller); the scene must have been prepared from a scenario with the
// same workspace, target and start.
RunLog RunLoop(const PreparedScene& scene, const Scenario& run,
               Transport transport = {});
RunLog RunLoop(const Scenario& scenario);

}  // namespace ispace

#endif  // ISPACE_NETLOOP_H_
