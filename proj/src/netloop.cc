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

#include "ispace/netloop.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <stdexcept>

#include "ispace/controller.h"
#include "ispace/geometry.h"
#include "ispace/guidance.h"
#include "ispace/plant.h"

namespace ispace {

bool PreparedScene::Occupied(Point2 world) const {
  if (!frame.InBounds(world)) return true;
  return occupied[frame.WorldToPixel(world)] != 0;
}

PreparedScene PrepareScene(const Scenario& scenario) {
  scenario.Validate();
  const GridImage image = ScenarioImage(scenario);
  return PrepareScene(scenario, vision::DetectEdges(image, scenario.vision));
}

PreparedScene PrepareScene(const Scenario& scenario, const EdgeMap& edges) {
  scenario.Validate();
  const WorkspaceFrame frame = scenario.frame();
  GridImage image = ScenarioImage(scenario);
  if (!edges.SameShape(image.width(), image.height())) {
    throw std::invalid_argument("edge map does not match the workspace image");
  }
  std::optional<hpf::BoundaryGrid> boundary;
  try {
    boundary.emplace(hpf::BuildBoundary(edges, scenario.target, scenario.dilation_px));
  } catch (const std::invalid_argument& e) {
    throw ScenarioError("target_cell", e.what());
  }
  hpf::NavigationField field = hpf::Solve(*boundary, scenario.solver);

  Grid<std::uint8_t> occupied(frame.width(), frame.height(), 0);
  const Grid<std::uint8_t> shapes =
      scenario.image_path ? occupied : ShapeMask(scenario.shapes, frame.width(), frame.height());
  for (int y = 0; y < frame.height(); ++y) {
    for (int x = 0; x < frame.width(); ++x) {
      occupied(x, y) = field.boundary.labels()(x, y) == hpf::Label::kObstacle || shapes(x, y);
    }
  }

  const Cell start = frame.WorldToPixel(scenario.start.position());
  if (occupied[start]) {
    throw ScenarioError("start_pose", "lies on an obstacle cell (" + std::to_string(start.x) +
                                          ", " + std::to_string(start.y) + ")");
  }
  fm::ArrivalField arrival = fm::FmArrival(field.boundary);

  PreparedScene scene{frame,
                      std::move(image),
                      edges,
                      std::move(field),
                      std::move(occupied),
                      std::move(arrival),
                      std::nullopt,
                      {},
                      false};
  scene.start_reachable = hpf::IsReachable(scene.field.gradient, start);
  if (std::isfinite(scene.arrival.time[start])) {
    scene.fm_path = fm::FmPath(scene.arrival, scene.field.boundary, frame, start,
                               scenario.fm_path_step);
    // Anchor the path at the true start pose, as the ideal path is.
    if (!(scene.fm_path->points.front() == scenario.start.position())) {
      scene.fm_path->points.insert(scene.fm_path->points.begin(), scenario.start.position());
      scene.fm_path->arrival.insert(scene.fm_path->arrival.begin(), scene.arrival.time[start]);
    }
  }
  if (scene.start_reachable) {
    const hpf::Descent descent =
        hpf::Descend(scene.field, start, 4 * frame.width() * frame.height());
    if (descent.reason == hpf::DescentReason::kReached) {
      scene.ideal_path.push_back(scenario.start.position());
      for (const Point2& p : descent.points) scene.ideal_path.push_back(frame.GridToWorld(p));
      scene.ideal_path.push_back(scene.target_world());
    } else {
      scene.start_reachable = false;
    }
  }
  return scene;
}

const char* OutcomeName(Outcome outcome) {
  switch (outcome) {
    case Outcome::kReached:
      return "Reached";
    case Outcome::kTimeout:
      return "Timeout";
    case Outcome::kUnreachable:
      return "Unreachable";
  }
  return "?";
}

void RunLog::WriteCsv(std::ostream& out) const {
  out << "t,x,y,theta,x_obs,y_obs,v_cmd,omega_cmd,delta_L,delay_up,delay_down,dist_err,"
         "collision\n";
  char line[512];
  for (const RunRecord& r : records) {
    std::snprintf(line, sizeof(line),
                  "%.4f,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%d,%.6g,%.6g,%.10g,%d\n",
                  r.t, r.truth.x, r.truth.y, r.truth.theta, r.observed.x, r.observed.y,
                  r.v_cmd, r.omega_cmd, r.delta_l, r.delay_up, r.delay_down, r.dist_err,
                  r.collision ? 1 : 0);
    out << line;
  }
}

void RunLog::WriteCsv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  WriteCsv(out);
}

LinkModel UplinkModel(const DelayModel& d) {
  return {d.total_s * d.uplink_fraction, d.jitter_s, d.drop_prob, d.deadline_s};
}

LinkModel DownlinkModel(const DelayModel& d) {
  return {d.total_s * (1.0 - d.uplink_fraction), d.jitter_s, d.drop_prob, d.deadline_s};
}

std::uint64_t StreamSeed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over (seed, stream).
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

// Closest non-obstacle cell by breadth-first search; `c` itself if free.
Cell NearestFree(const hpf::BoundaryGrid& boundary, Cell c) {
  if (!boundary.IsObstacle(c)) return c;
  Grid<std::uint8_t> seen(boundary.width(), boundary.height(), 0);
  std::deque<Cell> queue{c};
  seen[c] = 1;
  constexpr int kDx[4] = {1, -1, 0, 0};
  constexpr int kDy[4] = {0, 0, 1, -1};
  while (!queue.empty()) {
    const Cell cur = queue.front();
    queue.pop_front();
    if (!boundary.IsObstacle(cur)) return cur;
    for (int k = 0; k < 4; ++k) {
      const Cell n{cur.x + kDx[k], cur.y + kDy[k]};
      if (!seen.Contains(n) || seen[n]) continue;
      seen[n] = 1;
      queue.push_back(n);
    }
  }
  return c;
}

struct Decision {
  bool unreachable = false;
  ControlStep step;
};

Decision DecideHpf(const PreparedScene& scene, const Scenario& run, const WorldPose& obs) {
  Decision out;
  const Cell cell = NearestFree(scene.field.boundary, scene.frame.WorldToPixel(obs.position()));
  if (scene.field.boundary[cell] == hpf::Label::kTarget) {
    out.step.reference = scene.target_world();
  } else if (!hpf::IsReachable(scene.field.gradient, cell)) {
    out.unreachable = true;
    return out;
  }
  WorldPose search = obs;
  if (!(cell == scene.frame.WorldToPixel(obs.position()))) {
    const Point2 c = scene.frame.PixelToWorld(cell);
    search.x = c.x;
    search.y = c.y;
  }
  const guidance::ReferencePoint ref =
      guidance::GuidanceStep(scene.field, scene.frame, search, run.guidance);
  out.step.delta_l = ref.hops;
  out.step.d0 = ref.d0;
  out.step.flat = ref.flat;
  out.step.reference = ref.world;
  out.step.path_points = scene.fm_path ? scene.fm_path->size() : 0;
  if (!ref.flat) {
    const controller::BodyError e = controller::BodyErrors(obs, ref.world);
    const controller::ControlCommand cmd =
        controller::Command(controller::CurveCoeff(e), e, run.ugv);
    out.step.v = cmd.v;
    out.step.omega = cmd.omega;
  }
  return out;
}

Decision DecideFm(const PreparedScene& scene, const Scenario& run, const WorldPose& obs) {
  Decision out;
  const Cell cell = NearestFree(scene.field.boundary, scene.frame.WorldToPixel(obs.position()));
  if (!scene.fm_path || !std::isfinite(scene.arrival.time[cell])) {
    out.unreachable = true;
    return out;
  }
  const fm::ReferencePath& path = *scene.fm_path;
  const double gd = scene.frame.gd();
  guidance::Lookahead la{run.guidance.fixed_hops * gd, run.guidance.fixed_hops};
  if (run.guidance.mode == guidance::LookaheadMode::kDynamic) {
    const fm::PathReferenceResult probe = fm::PathReference(path, obs.position(), gd);
    const controller::BodyError e = controller::BodyErrors(obs, probe.reference);
    la = guidance::ComputeLookahead(controller::CurveCoeff(e), run.guidance, gd);
    la.d0 = std::clamp(la.d0, gd, run.guidance.max_hops * gd);
  }
  const fm::PathReferenceResult ref = fm::PathReference(path, obs.position(), la.d0);
  out.step.delta_l = la.hops;
  out.step.d0 = la.d0;
  out.step.path_points = ref.checks;
  out.step.reference = ref.reference;
  const controller::BodyError e = controller::BodyErrors(obs, ref.reference);
  const controller::ControlCommand cmd =
      controller::Command(controller::CurveCoeff(e), e, run.ugv);
  out.step.v = cmd.v;
  out.step.omega = cmd.omega;
  return out;
}

}  // namespace

RunLog RunLoop(const PreparedScene& scene, const Scenario& run, Transport transport) {
  run.Validate();
  if (!scene.frame.SameGeometry(run.frame())) {
    throw std::invalid_argument("scenario geometry does not match the prepared scene");
  }
  DelayLine up_line(UplinkModel(run.delay), StreamSeed(run.seed, 1));
  DelayLine down_line(DownlinkModel(run.delay), StreamSeed(run.seed, 2));
  Channel* uplink = transport.uplink ? transport.uplink : &up_line;
  Channel* downlink = transport.downlink ? transport.downlink : &down_line;

  RunLog log;
  const bool fm_mode = run.planner == PlannerKind::kFm;
  if (fm_mode) {
    if (scene.fm_path) log.reference_path = scene.fm_path->points;
  } else {
    log.reference_path = scene.ideal_path;
  }
  const Point2 goal = scene.target_world();
  const double dt = run.plant_dt_s;
  const double period = 1.0 / run.camera.rate_hz;
  const auto max_ticks = static_cast<std::int64_t>(std::ceil(run.timeout_s / dt - 1e-9));

  WorldPose pose = run.start;
  WorldPose observed = pose;
  RunRecord state;
  std::uint32_t pose_seq = 0;
  std::uint32_t cmd_seq = 0;
  std::uint32_t last_pose = 0;
  std::uint32_t applied_seq = 0;
  double last_command_rx = 0.0;
  std::int64_t frame_index = 0;

  for (std::int64_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * dt;
    if (k > 0) pose = plant::Step(pose, state.v_applied, state.omega_applied, dt);
    const bool in_bounds = scene.frame.InBounds(pose.position());
    state.t = t;
    state.truth = pose;
    state.collision = scene.Occupied(pose.position());
    state.dist_err =
        log.reference_path.empty() ? 0.0 : DistanceToPolyline(pose.position(), log.reference_path);
    log.any_collision = log.any_collision || state.collision;
    if (!in_bounds) {
      log.records.push_back(state);
      log.outcome = Outcome::kTimeout;
      log.total_time = t;
      return log;
    }

    if (t + 1e-9 >= static_cast<double>(frame_index) * period) {
      ++frame_index;
      observed = plant::Observe(pose, run.camera, scene.frame);
      Packet packet;
      packet.kind = PacketKind::kPose;
      packet.sequence = ++pose_seq;
      packet.send_time_us = ToMicros(t);
      packet.payload = {observed.x, observed.y, observed.theta};
      uplink->Push(packet, t);
    }
    state.observed = observed;

    const std::vector<Delivery> poses = uplink->Poll(t);
    const Delivery* newest = nullptr;
    for (const Delivery& d : poses) {
      if (d.packet.kind != PacketKind::kPose || d.packet.sequence <= last_pose) continue;
      if (newest == nullptr || d.packet.sequence > newest->packet.sequence) newest = &d;
    }
    if (newest != nullptr) {
      last_pose = newest->packet.sequence;
      const WorldPose obs{newest->packet.payload[0], newest->packet.payload[1],
                          newest->packet.payload[2]};
      Decision decision = fm_mode ? DecideFm(scene, run, obs) : DecideHpf(scene, run, obs);
      if (decision.unreachable) {
        log.records.push_back(state);
        log.outcome = Outcome::kUnreachable;
        log.total_time = t;
        return log;
      }
      ControlStep& step = decision.step;
      step.pose_sequence = last_pose;
      step.command_sequence = ++cmd_seq;
      step.observation_time = newest->send_time;
      step.issue_time = t + run.delay.compute_s;
      log.steps.push_back(step);
      state.v_cmd = step.v;
      state.omega_cmd = step.omega;
      state.delta_l = step.delta_l;
      state.delay_up = t - newest->send_time;

      Packet packet;
      packet.kind = PacketKind::kCommand;
      packet.sequence = step.command_sequence;
      packet.send_time_us = ToMicros(step.issue_time);
      packet.payload = {step.v, step.omega, 0.0};
      downlink->Push(packet, step.issue_time);
    }

    for (const Delivery& d : downlink->Poll(t)) {
      if (d.packet.kind != PacketKind::kCommand || d.packet.sequence <= applied_seq) continue;
      applied_seq = d.packet.sequence;
      state.v_applied = d.packet.payload[0];
      state.omega_applied = d.packet.payload[1];
      state.delay_down = t - d.send_time;
      last_command_rx = t;
      log.applied.push_back({applied_seq, d.send_time, t});
    }
    if (t - last_command_rx >= run.delay.watchdog_s - 1e-12) {
      state.v_applied = 0.0;
      state.omega_applied = 0.0;
    }

    log.records.push_back(state);
    const Point2 d = pose.position() - goal;
    if (std::hypot(d.x, d.y) <= run.goal_radius_m) {
      log.outcome = Outcome::kReached;
      log.total_time = t;
      return log;
    }
    if (k >= max_ticks) {
      log.outcome = Outcome::kTimeout;
      log.total_time = t;
      return log;
    }
  }
}

RunLog RunLoop(const Scenario& scenario) {
  const PreparedScene scene = PrepareScene(scenario);
  return RunLoop(scene, scenario);
}

}  // namespace ispace
