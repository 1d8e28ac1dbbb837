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

#include "ispace/multi_agent.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>

#include "ispace/controller.h"
#include "ispace/geometry.h"
#include "ispace/guidance.h"
#include "ispace/plant.h"

namespace ispace {

const char* AwarenessName(Awareness awareness) {
  return awareness == Awareness::kAll ? "all" : "nearest";
}

Awareness ParseAwareness(const std::string& name) {
  if (name == "all") return Awareness::kAll;
  if (name == "nearest") return Awareness::kNearestOnly;
  throw ScenarioError("awareness", "expected \"all\" or \"nearest\", got \"" + name + "\"");
}

void MultiRunLog::WriteDmCsv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "t,dm\n";
  char line[64];
  for (const DmSample& s : dm) {
    std::snprintf(line, sizeof(line), "%.4f,%.10g\n", s.t, s.dm);
    out << line;
  }
}

int AgentDiscRadiusCells(const Scenario& scenario) {
  return static_cast<int>(std::ceil(2.0 * scenario.multi.agent_radius_m / scenario.gd)) +
         scenario.dilation_px;
}

namespace {

double Distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct Agent {
  AgentSpec spec;
  Grid<hpf::Label> static_labels;
  std::unique_ptr<hpf::NavigationField> field;
  std::unique_ptr<DelayLine> uplink;
  std::unique_ptr<DelayLine> downlink;
  RunLog log;
  WorldPose pose;
  RunRecord state;
  std::uint32_t pose_seq = 0;
  std::uint32_t cmd_seq = 0;
  std::uint32_t last_pose = 0;
  std::uint32_t applied_seq = 0;
  double last_rx = 0.0;
  bool done = false;
};

void Validate(const Scenario& s) {
  const auto& agents = s.multi.agents;
  if (agents.size() < 2) {
    throw ScenarioError("multi.agents", "multi-agent runs need at least 2 agents");
  }
  for (std::size_t i = 0; i < agents.size(); ++i) {
    for (std::size_t j = i + 1; j < agents.size(); ++j) {
      const std::string path = "multi.agents[" + std::to_string(j) + "]";
      if (Distance(agents[i].start.position(), agents[j].start.position()) <=
          2.0 * s.multi.agent_radius_m) {
        throw ScenarioError(path + ".start_pose",
                            "overlaps agent " + std::to_string(i) + " start");
      }
      if (agents[i].target == agents[j].target) {
        throw ScenarioError(path + ".target_cell",
                            "same target as agent " + std::to_string(i));
      }
    }
  }
}

}  // namespace

MultiRunLog RunMulti(const Scenario& scenario, Awareness awareness) {
  scenario.Validate();
  Validate(scenario);
  const WorkspaceFrame frame = scenario.frame();
  const GridImage image = ScenarioImage(scenario);
  const EdgeMap edges = vision::DetectEdges(image, scenario.vision);
  const Grid<std::uint8_t> shapes =
      scenario.image_path ? Grid<std::uint8_t>(frame.width(), frame.height(), 0)
                          : ShapeMask(scenario.shapes, frame.width(), frame.height());
  const int disc = AgentDiscRadiusCells(scenario);
  const double dt = scenario.plant_dt_s;
  const double period = 1.0 / scenario.camera.rate_hz;
  const auto max_ticks = static_cast<std::int64_t>(std::ceil(scenario.timeout_s / dt - 1e-9));

  std::vector<Agent> agents;
  Grid<std::uint8_t> occupied(frame.width(), frame.height(), 0);
  for (std::size_t i = 0; i < scenario.multi.agents.size(); ++i) {
    const AgentSpec& spec = scenario.multi.agents[i];
    const std::string path = "multi.agents[" + std::to_string(i) + "]";
    std::optional<hpf::BoundaryGrid> boundary;
    try {
      boundary.emplace(hpf::BuildBoundary(edges, spec.target, scenario.dilation_px));
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(path + ".target_cell", e.what());
    }
    if (i == 0) {
      for (int y = 0; y < frame.height(); ++y) {
        for (int x = 0; x < frame.width(); ++x) {
          occupied(x, y) =
              boundary->labels()(x, y) == hpf::Label::kObstacle || shapes(x, y);
        }
      }
    }
    if (occupied[frame.WorldToPixel(spec.start.position())]) {
      throw ScenarioError(path + ".start_pose", "lies on an obstacle cell");
    }
    Agent a{spec, boundary->labels(), nullptr, nullptr, nullptr, {}, spec.start, {}};
    a.field = std::make_unique<hpf::NavigationField>(hpf::Solve(*boundary, scenario.solver));
    const Cell start = frame.WorldToPixel(spec.start.position());
    if (!hpf::IsReachable(a.field->gradient, start)) {
      throw ScenarioError(path + ".start_pose", "cannot reach its target");
    }
    const hpf::Descent ideal = hpf::Descend(*a.field, start, 4 * frame.width() * frame.height());
    a.log.reference_path.push_back(spec.start.position());
    for (const Point2& p : ideal.points) a.log.reference_path.push_back(frame.GridToWorld(p));
    a.log.reference_path.push_back(frame.PixelToWorld(spec.target));
    a.uplink = std::make_unique<DelayLine>(UplinkModel(scenario.delay),
                                           StreamSeed(scenario.seed, 2 * i + 1));
    a.downlink = std::make_unique<DelayLine>(DownlinkModel(scenario.delay),
                                             StreamSeed(scenario.seed, 2 * i + 2));
    agents.push_back(std::move(a));
  }
  const std::size_t k = agents.size();

  hpf::SolverParams incremental = scenario.solver;
  incremental.max_iterations = scenario.multi.sweeps_per_frame;

  MultiRunLog out;
  out.min_dm = std::numeric_limits<double>::infinity();
  std::vector<Point2> known(k);
  for (std::size_t i = 0; i < k; ++i) known[i] = agents[i].pose.position();
  std::int64_t frame_index = 0;

  for (std::int64_t tick = 0;; ++tick) {
    const double t = static_cast<double>(tick) * dt;
    for (Agent& a : agents) {
      if (tick > 0 && !a.done) {
        a.pose = plant::Step(a.pose, a.state.v_applied, a.state.omega_applied, dt);
      }
      a.state.t = t;
      a.state.truth = a.pose;
      a.state.collision = !frame.InBounds(a.pose.position()) ||
                          occupied[frame.WorldToPixel(a.pose.position())] != 0;
      a.state.dist_err = DistanceToPolyline(a.pose.position(), a.log.reference_path);
      a.log.any_collision = a.log.any_collision || a.state.collision;
    }
    if (std::any_of(agents.begin(), agents.end(),
                    [&](const Agent& a) { return !frame.InBounds(a.pose.position()); })) {
      for (Agent& a : agents) {
        a.log.records.push_back(a.state);
        if (!a.done) a.log.total_time = t;
      }
      out.total_time = t;
      break;
    }

    if (t + 1e-9 >= static_cast<double>(frame_index) * period) {
      ++frame_index;
      double dm = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
          dm = std::min(dm, Distance(agents[i].pose.position(), agents[j].pose.position()));
        }
      }
      out.dm.push_back({t, dm});
      out.min_dm = std::min(out.min_dm, dm);
      for (Agent& a : agents) {
        a.state.observed = plant::Observe(a.pose, scenario.camera, frame);
        Packet p;
        p.kind = PacketKind::kPose;
        p.sequence = ++a.pose_seq;
        p.send_time_us = ToMicros(t);
        p.payload = {a.state.observed.x, a.state.observed.y, a.state.observed.theta};
        a.uplink->Push(p, t);
      }
    }

    // Deliver poses first so every controller sees the same frame.
    std::vector<std::optional<Delivery>> fresh(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (const Delivery& d : agents[i].uplink->Poll(t)) {
        if (d.packet.sequence <= agents[i].last_pose) continue;
        if (!fresh[i] || d.packet.sequence > fresh[i]->packet.sequence) fresh[i] = d;
      }
      if (fresh[i]) {
        agents[i].last_pose = fresh[i]->packet.sequence;
        known[i] = {fresh[i]->packet.payload[0], fresh[i]->packet.payload[1]};
      }
    }

    for (std::size_t i = 0; i < k; ++i) {
      Agent& a = agents[i];
      if (!fresh[i] || a.done) continue;
      const WorldPose obs{fresh[i]->packet.payload[0], fresh[i]->packet.payload[1],
                          fresh[i]->packet.payload[2]};
      std::vector<std::size_t> others;
      for (std::size_t j = 0; j < k; ++j) {
        if (j != i) others.push_back(j);
      }
      if (awareness == Awareness::kNearestOnly) {
        const auto nearest = std::min_element(
            others.begin(), others.end(), [&](std::size_t x, std::size_t y) {
              return Distance(known[x], obs.position()) < Distance(known[y], obs.position());
            });
        others = {*nearest};
      }
      Grid<hpf::Label> labels = a.static_labels;
      for (const std::size_t j : others) {
        const Cell c = frame.WorldToPixel(known[j]);
        for (int dy = -disc; dy <= disc; ++dy) {
          for (int dx = -disc; dx <= disc; ++dx) {
            const Cell n{c.x + dx, c.y + dy};
            if (dx * dx + dy * dy > disc * disc || !labels.Contains(n)) continue;
            if (labels[n] == hpf::Label::kTarget) continue;
            labels[n] = hpf::Label::kObstacle;
          }
        }
      }
      hpf::BoundaryGrid boundary(std::move(labels), a.spec.target);
      hpf::PotentialField potential = hpf::Relax(boundary, incremental, &a.field->potential);
      hpf::GradientField gradient =
          hpf::Gradient(potential, boundary, scenario.solver.flat_epsilon);
      *a.field = {std::move(boundary), std::move(potential), std::move(gradient)};

      ControlStep step;
      const Cell here = frame.WorldToPixel(obs.position());
      WorldPose search = obs;
      const hpf::BoundaryGrid& b = a.field->boundary;
      bool hold = false;
      if (b.IsObstacle(here)) {
        // Inside another agent's disc: hold until it clears.
        hold = true;
      }
      if (!hold) {
        const guidance::ReferencePoint ref =
            guidance::GuidanceStep(*a.field, frame, search, scenario.guidance);
        step.delta_l = ref.hops;
        step.d0 = ref.d0;
        step.flat = ref.flat;
        step.reference = ref.world;
        if (!ref.flat) {
          const controller::BodyError e = controller::BodyErrors(obs, ref.world);
          const controller::ControlCommand cmd =
              controller::Command(controller::CurveCoeff(e), e, scenario.ugv);
          step.v = cmd.v;
          step.omega = cmd.omega;
        }
      } else {
        step.flat = true;
        step.reference = obs.position();
      }
      step.pose_sequence = a.last_pose;
      step.command_sequence = ++a.cmd_seq;
      step.observation_time = fresh[i]->send_time;
      step.issue_time = t + scenario.delay.compute_s;
      a.log.steps.push_back(step);
      a.state.v_cmd = step.v;
      a.state.omega_cmd = step.omega;
      a.state.delta_l = step.delta_l;
      a.state.delay_up = t - fresh[i]->send_time;
      Packet p;
      p.kind = PacketKind::kCommand;
      p.sequence = step.command_sequence;
      p.send_time_us = ToMicros(step.issue_time);
      p.payload = {step.v, step.omega, 0.0};
      a.downlink->Push(p, step.issue_time);
    }

    bool all_done = true;
    for (Agent& a : agents) {
      for (const Delivery& d : a.downlink->Poll(t)) {
        if (a.done || d.packet.sequence <= a.applied_seq) continue;
        a.applied_seq = d.packet.sequence;
        a.state.v_applied = d.packet.payload[0];
        a.state.omega_applied = d.packet.payload[1];
        a.state.delay_down = t - d.send_time;
        a.last_rx = t;
        a.log.applied.push_back({a.applied_seq, d.send_time, t});
      }
      if (t - a.last_rx >= scenario.delay.watchdog_s - 1e-12) {
        a.state.v_applied = 0.0;
        a.state.omega_applied = 0.0;
      }
      if (!a.done) {
        a.log.records.push_back(a.state);
        if (Distance(a.pose.position(), frame.PixelToWorld(a.spec.target)) <=
            scenario.goal_radius_m) {
          a.done = true;
          a.state.v_applied = 0.0;
          a.state.omega_applied = 0.0;
          a.log.outcome = Outcome::kReached;
          a.log.total_time = t;
        }
      }
      all_done = all_done && a.done;
    }
    if (all_done || tick >= max_ticks) {
      for (Agent& a : agents) {
        if (!a.done) {
          a.log.outcome = Outcome::kTimeout;
          a.log.total_time = t;
        }
      }
      out.total_time = t;
      break;
    }
  }

  out.all_reached = true;
  for (Agent& a : agents) {
    out.all_reached = out.all_reached && a.log.outcome == Outcome::kReached;
    out.agents.push_back(std::move(a.log));
  }
  return out;
}

}  // namespace ispace
