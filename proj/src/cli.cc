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

#include "ispace/cli.h"

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ispace/analysis.h"
#include "ispace/multi_agent.h"
#include "ispace/render.h"
#include "ispace/scenario.h"

namespace ispace {

using nlohmann::json;
namespace fs = std::filesystem;

int ExitCodeFor(Outcome outcome) {
  switch (outcome) {
    case Outcome::kReached:
      return kExitReached;
    case Outcome::kTimeout:
      return kExitTimeout;
    case Outcome::kUnreachable:
      return kExitUnreachable;
  }
  return kExitError;
}

namespace {

struct Overrides {
  std::optional<double> delay;
  std::optional<std::string> planner;
  std::optional<std::string> lookahead;
  std::optional<std::uint64_t> seed;
};

LookaheadSetting ParseLookahead(const std::string& value) {
  if (value == "dynamic") return std::nullopt;
  std::size_t used = 0;
  int hops = 0;
  try {
    hops = std::stoi(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || hops < 1) {
    throw ScenarioError("lookahead", "expected \"dynamic\" or a positive integer, got \"" +
                                         value + "\"");
  }
  return hops;
}

void Apply(const Overrides& o, Scenario& s) {
  if (o.delay) s.delay.total_s = *o.delay;
  if (o.planner) s.planner = ParsePlanner(*o.planner);
  if (o.lookahead) ApplyLookahead(s, ParseLookahead(*o.lookahead));
  if (o.seed) s.seed = *o.seed;
  s.Validate();
}

fs::path OutDir(const std::string& dir) {
  fs::path p = dir.empty() ? fs::path(".") : fs::path(dir);
  fs::create_directories(p);
  return p;
}

void WriteJson(const fs::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

int CmdRun(const std::string& scenario_path, const Overrides& o, const std::string& out_dir,
           std::ostream& out) {
  Scenario s = LoadScenario(scenario_path);
  Apply(o, s);
  const PreparedScene scene = PrepareScene(s);
  const RunLog log = RunLoop(scene, s);
  const RunSummary summary = Summarize(log, s);
  const fs::path dir = OutDir(out_dir);
  log.WriteCsv(dir / "runlog.csv");
  const int code = ExitCodeFor(log.outcome);
  json doc;
  doc["outcome"] = OutcomeName(log.outcome);
  doc["exit_code"] = code;
  doc["total_time_s"] = log.total_time;
  doc["mean_error_m"] = summary.mean_error;
  doc["max_error_m"] = summary.max_error;
  doc["collision"] = log.any_collision;
  doc["control_steps"] = log.steps.size();
  doc["records"] = log.records.size();
  doc["scenario"] = ScenarioToJson(s);
  WriteJson(dir / "summary.json", doc);
  RenderSpec spec;
  WriteText(dir / "trajectory.svg",
            RenderScene(scene, s, {{PlannerName(s.planner), TrajectoryOf(log)}}, spec));
  out << OutcomeName(log.outcome) << " T=" << log.total_time << " s mean_err="
      << summary.mean_error << " m max_err=" << summary.max_error << " m\n";
  return code;
}

int CmdSweep(const std::string& scenario_path, const Overrides& o,
             const std::vector<double>& delays, int seeds,
             const std::vector<std::string>& planners, const std::string& out_dir,
             std::ostream& out) {
  Scenario s = LoadScenario(scenario_path);
  Apply(o, s);
  SweepSpec spec;
  spec.delays = delays;
  spec.seeds = seeds;
  spec.planners.clear();
  for (const std::string& p : planners) spec.planners.push_back(ParsePlanner(p));
  if (spec.planners.empty()) spec.planners.push_back(s.planner);
  for (const double d : delays) {
    if (!(d >= 0.0)) throw ScenarioError("delay", "delays must be >= 0");
  }
  const PreparedScene scene = PrepareScene(s);
  const std::vector<RunSummary> rows = Sweep(scene, s, spec);
  const std::vector<SweepAggregate> agg = Aggregate(rows);
  const fs::path dir = OutDir(out_dir);
  {
    std::ofstream f(dir / "sweep_runs.csv");
    WriteSummaryCsv(f, rows);
    std::ofstream g(dir / "sweep.csv");
    WriteAggregateCsv(g, agg);
  }
  std::vector<ChartSeries> error_series, time_series;
  for (const PlannerKind p : spec.planners) {
    ChartSeries max_s{std::string(PlannerName(p)) + " max", {}, {}};
    ChartSeries mean_s{std::string(PlannerName(p)) + " mean", {}, {}};
    ChartSeries t_s{PlannerName(p), {}, {}};
    for (const SweepAggregate& a : agg) {
      if (a.planner != p) continue;
      max_s.x.push_back(a.delay);
      max_s.y.push_back(a.median_max_error);
      mean_s.x.push_back(a.delay);
      mean_s.y.push_back(a.median_mean_error);
      t_s.x.push_back(a.delay);
      t_s.y.push_back(a.median_total_time);
    }
    error_series.push_back(max_s);
    error_series.push_back(mean_s);
    time_series.push_back(t_s);
  }
  WriteText(dir / "sweep_error.svg",
            RenderChart("Distance error vs network delay", "delay (s)", "error (m)",
                        error_series));
  WriteText(dir / "sweep_time.svg",
            RenderChart("Total time vs network delay", "delay (s)", "T (s)", time_series));
  WriteAggregateCsv(out, agg);
  return kExitReached;
}

int CmdLookahead(const std::string& scenario_path, const Overrides& o,
                 const std::vector<std::string>& values, const std::string& out_dir,
                 std::ostream& out) {
  Scenario s = LoadScenario(scenario_path);
  Apply(o, s);
  std::vector<LookaheadSetting> settings;
  for (const std::string& v : values) settings.push_back(ParseLookahead(v));
  for (const LookaheadSetting& setting : settings) {
    Scenario check = s;
    ApplyLookahead(check, setting);
    check.Validate();
  }
  const PreparedScene scene = PrepareScene(s);
  const std::vector<RunSummary> rows = CompareLookahead(scene, s, settings);
  const fs::path dir = OutDir(out_dir);
  {
    std::ofstream f(dir / "lookahead.csv");
    WriteSummaryCsv(f, rows);
  }
  ChartSeries mean_s{"mean error (m)", {}, {}}, t_s{"T / 100 (s)", {}, {}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    mean_s.x.push_back(static_cast<double>(i));
    mean_s.y.push_back(rows[i].mean_error);
    t_s.x.push_back(static_cast<double>(i));
    t_s.y.push_back(rows[i].total_time / 100.0);
  }
  std::string modes;
  for (const RunSummary& r : rows) modes += (modes.empty() ? "" : ", ") + r.lookahead;
  WriteText(dir / "lookahead.svg",
            RenderChart("Look-ahead comparison: " + modes, "mode index", "value",
                        {mean_s, t_s}));
  WriteSummaryCsv(out, rows);
  return kExitReached;
}

int CmdMulti(const std::string& scenario_path, const Overrides& o, int agents,
             const std::string& awareness, const std::string& out_dir, std::ostream& out) {
  Scenario s = LoadScenario(scenario_path);
  Apply(o, s);
  if (agents == 1) {
    throw ScenarioError("agents", "a single agent is a plain run; use the run command");
  }
  if (agents > 0) {
    if (static_cast<std::size_t>(agents) > s.multi.agents.size()) {
      throw ScenarioError("agents", "scenario defines only " +
                                        std::to_string(s.multi.agents.size()) + " agents");
    }
    s.multi.agents.resize(static_cast<std::size_t>(agents));
  }
  const Awareness mode = ParseAwareness(awareness);
  const MultiRunLog result = RunMulti(s, mode);
  const fs::path dir = OutDir(out_dir);
  json doc;
  doc["awareness"] = AwarenessName(mode);
  doc["all_reached"] = result.all_reached;
  doc["min_dm_m"] = result.min_dm;
  doc["total_time_s"] = result.total_time;
  doc["agent_clearance_m"] = 2.0 * s.multi.agent_radius_m;
  std::vector<Trajectory> trajectories;
  json per_agent = json::array();
  for (std::size_t i = 0; i < result.agents.size(); ++i) {
    const RunLog& log = result.agents[i];
    log.WriteCsv(dir / ("agent_" + std::to_string(i) + ".csv"));
    per_agent.push_back({{"outcome", OutcomeName(log.outcome)},
                         {"total_time_s", log.total_time},
                         {"collision", log.any_collision}});
    trajectories.push_back({"agent " + std::to_string(i), TrajectoryOf(log)});
  }
  doc["agents"] = per_agent;
  doc["scenario"] = ScenarioToJson(s);
  WriteJson(dir / "multi_summary.json", doc);
  result.WriteDmCsv(dir / "dm.csv");
  ChartSeries dm{"DM", {}, {}}, floor{"2 r_agent", {}, {}};
  for (const DmSample& d : result.dm) {
    dm.x.push_back(d.t);
    dm.y.push_back(d.dm);
  }
  if (!result.dm.empty()) {
    floor.x = {result.dm.front().t, result.dm.back().t};
    floor.y = {2.0 * s.multi.agent_radius_m, 2.0 * s.multi.agent_radius_m};
  }
  WriteText(dir / "dm.svg",
            RenderChart("Minimum inter-agent distance", "t (s)", "DM (m)", {dm, floor}));
  const PreparedScene scene = PrepareScene([&] {
    Scenario first = s;
    first.start = s.multi.agents.front().start;
    first.target = s.multi.agents.front().target;
    return first;
  }());
  RenderSpec spec;
  spec.ideal_path = false;
  WriteText(dir / "trajectories.svg", RenderScene(scene, s, trajectories, spec));
  out << (result.all_reached ? "all Reached" : "not all Reached") << " min DM="
      << result.min_dm << " m\n";
  return result.all_reached ? kExitReached : kExitTimeout;
}

int CmdRender(const std::string& scenario_path, const std::vector<std::string>& runlogs,
              const std::string& layers, int width, const std::string& out_path,
              std::ostream& out) {
  const Scenario s = LoadScenario(scenario_path);
  RenderSpec spec = ParseLayers(layers);
  spec.width_px = width;
  spec.Validate();
  const PreparedScene scene = PrepareScene(s);
  std::vector<Trajectory> trajectories;
  for (const std::string& path : runlogs) {
    trajectories.push_back({fs::path(path).filename().string(), ReadTrajectoryCsv(path)});
  }
  const fs::path target = out_path.empty() ? fs::path("render.svg") : fs::path(out_path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  WriteText(target, RenderScene(scene, s, trajectories, spec));
  out << "wrote " << target.string() << '\n';
  return kExitReached;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Overhead-camera UGV navigation simulator", "ispace_nav"};
  app.require_subcommand(1);

  std::string scenario, out_dir;
  Overrides o;
  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", scenario, "Scenario JSON file")->required();
    cmd->add_option("--planner", o.planner, "hpf | fm");
    cmd->add_option("--lookahead", o.lookahead, "dynamic | hop count");
    cmd->add_option("--seed", o.seed, "Random seed");
    cmd->add_option("--out-dir", out_dir, "Output directory");
  };

  CLI::App* run = app.add_subcommand("run", "Run one scenario");
  add_common(run);
  run->add_option("--delay", o.delay, "Total round-trip delay (s)");

  std::vector<double> delays{0.0, 0.1, 0.3, 0.6, 0.9, 1.2};
  int seeds = 1;
  std::vector<std::string> planners;
  CLI::App* sweep = app.add_subcommand("sweep-delay", "Sweep network delay");
  sweep->add_option("--scenario", scenario, "Scenario JSON file")->required();
  sweep->add_option("--delay", delays, "Delay values (s)")->delimiter(',');
  sweep->add_option("--seeds", seeds, "Seeds per delay")->check(CLI::PositiveNumber);
  sweep->add_option("--planner", planners, "hpf, fm or both")->delimiter(',');
  sweep->add_option("--lookahead", o.lookahead, "dynamic | hop count");
  sweep->add_option("--seed", o.seed, "First seed");
  sweep->add_option("--out-dir", out_dir, "Output directory");

  std::vector<std::string> modes{"1", "8", "dynamic"};
  CLI::App* lookahead = app.add_subcommand("compare-lookahead", "Compare look-ahead settings");
  lookahead->add_option("--scenario", scenario, "Scenario JSON file")->required();
  lookahead->add_option("--values", modes, "Hop counts and/or dynamic")->delimiter(',');
  lookahead->add_option("--delay", o.delay, "Total round-trip delay (s)");
  lookahead->add_option("--planner", o.planner, "hpf | fm");
  lookahead->add_option("--seed", o.seed, "Random seed");
  lookahead->add_option("--out-dir", out_dir, "Output directory");

  int agents = 0;
  std::string awareness = "all";
  CLI::App* multi = app.add_subcommand("multi", "Multi-agent run");
  multi->add_option("--scenario", scenario, "Scenario JSON file")->required();
  multi->add_option("--agents", agents, "Use the first k agents (default: all)");
  multi->add_option("--awareness", awareness, "all | nearest");
  multi->add_option("--delay", o.delay, "Total round-trip delay (s)");
  multi->add_option("--seed", o.seed, "Random seed");
  multi->add_option("--lookahead", o.lookahead, "dynamic | hop count");
  multi->add_option("--out-dir", out_dir, "Output directory");

  std::vector<std::string> runlogs;
  std::string layers = "image,ideal,trajectory,markers";
  std::string out_path;
  int width = 640;
  CLI::App* render = app.add_subcommand("render", "Render a scene and run logs to SVG");
  render->add_option("--scenario", scenario, "Scenario JSON file")->required();
  render->add_option("--runlog", runlogs, "runlog.csv files to overlay");
  render->add_option("--layers", layers,
                     "image,edges,obstacles,gradient,ideal,trajectory,markers or all");
  render->add_option("--width", width, "Output width in pixels");
  render->add_option("--out", out_path, "Output SVG path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*run) return CmdRun(scenario, o, out_dir, out);
    if (*sweep) return CmdSweep(scenario, o, delays, seeds, planners, out_dir, out);
    if (*lookahead) return CmdLookahead(scenario, o, modes, out_dir, out);
    if (*multi) return CmdMulti(scenario, o, agents, awareness, out_dir, out);
    if (*render) return CmdRender(scenario, runlogs, layers, width, out_path, out);
  } catch (const ScenarioError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace ispace
