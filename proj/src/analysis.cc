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

#include "ispace/analysis.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "ispace/geometry.h"

namespace ispace {

std::vector<Point2> IdealPath(const PreparedScene& scene) {
  if (!scene.start_reachable || scene.ideal_path.empty()) {
    throw std::runtime_error("ideal path: start cannot reach the target");
  }
  return scene.ideal_path;
}

ErrorSeries DistanceError(const RunLog& log, const std::vector<Point2>& polyline) {
  ErrorSeries out;
  out.total_time = log.total_time;
  double sum = 0.0;
  for (const RunRecord& r : log.records) {
    const double e = DistanceToPolyline(r.truth.position(), polyline);
    out.t.push_back(r.t);
    out.error.push_back(e);
    sum += e;
    out.max = std::max(out.max, e);
  }
  if (!out.error.empty()) out.mean = sum / static_cast<double>(out.error.size());
  return out;
}

CurvatureSeries Curvature(const RunLog& log) {
  CurvatureSeries out;
  for (const RunRecord& r : log.records) {
    out.t.push_back(r.t);
    out.kappa.push_back(std::abs(r.v_applied) > kCurvatureMinSpeed
                            ? r.omega_applied / r.v_applied
                            : std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

double TotalCurvatureVariation(const CurvatureSeries& series) {
  double total = 0.0;
  for (std::size_t i = 1; i < series.kappa.size(); ++i) {
    const double a = series.kappa[i - 1];
    const double b = series.kappa[i];
    if (std::isnan(a) || std::isnan(b)) continue;
    total += std::abs(b - a);
  }
  return total;
}

std::string LookaheadLabel(const LookaheadSetting& setting) {
  return setting ? std::to_string(*setting) : std::string("dynamic");
}

void ApplyLookahead(Scenario& scenario, const LookaheadSetting& setting) {
  if (setting) {
    scenario.guidance.mode = guidance::LookaheadMode::kFixed;
    scenario.guidance.fixed_hops = *setting;
  } else {
    scenario.guidance.mode = guidance::LookaheadMode::kDynamic;
  }
}

RunSummary Summarize(const RunLog& log, const Scenario& run) {
  RunSummary s;
  s.planner = run.planner;
  s.delay = run.delay.total_s;
  s.seed = run.seed;
  s.lookahead = run.guidance.mode == guidance::LookaheadMode::kDynamic
                    ? std::string("dynamic")
                    : std::to_string(run.guidance.fixed_hops);
  s.outcome = log.outcome;
  s.total_time = log.total_time;
  s.collision = log.any_collision;
  if (!log.reference_path.empty()) {
    const ErrorSeries e = DistanceError(log, log.reference_path);
    s.mean_error = e.mean;
    s.max_error = e.max;
  }
  return s;
}

std::vector<RunSummary> Sweep(const PreparedScene& scene, const Scenario& base,
                              const SweepSpec& spec) {
  if (spec.seeds < 1) throw std::invalid_argument("sweep needs at least one seed");
  std::vector<RunSummary> rows;
  for (const PlannerKind planner : spec.planners) {
    for (const double delay : spec.delays) {
      for (int i = 0; i < spec.seeds; ++i) {
        Scenario run = base;
        run.planner = planner;
        run.delay.total_s = delay;
        run.seed = base.seed + static_cast<std::uint64_t>(i);
        rows.push_back(Summarize(RunLoop(scene, run), run));
      }
    }
  }
  return rows;
}

double Median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty set");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::vector<SweepAggregate> Aggregate(const std::vector<RunSummary>& rows) {
  std::vector<SweepAggregate> out;
  std::vector<std::vector<const RunSummary*>> groups;
  for (const RunSummary& r : rows) {
    std::size_t g = 0;
    while (g < out.size() && !(out[g].planner == r.planner && out[g].delay == r.delay)) ++g;
    if (g == out.size()) {
      out.push_back({r.planner, r.delay});
      groups.emplace_back();
    }
    groups[g].push_back(&r);
  }
  for (std::size_t g = 0; g < out.size(); ++g) {
    std::vector<double> max_err, mean_err, time;
    for (const RunSummary* r : groups[g]) {
      max_err.push_back(r->max_error);
      mean_err.push_back(r->mean_error);
      time.push_back(r->total_time);
      out[g].reached += r->outcome == Outcome::kReached;
    }
    out[g].runs = static_cast<int>(groups[g].size());
    out[g].median_max_error = Median(max_err);
    out[g].median_mean_error = Median(mean_err);
    out[g].median_total_time = Median(time);
  }
  return out;
}

std::vector<RunSummary> CompareLookahead(const PreparedScene& scene, const Scenario& base,
                                         const std::vector<LookaheadSetting>& settings) {
  std::vector<RunSummary> rows;
  for (const LookaheadSetting& setting : settings) {
    Scenario run = base;
    ApplyLookahead(run, setting);
    rows.push_back(Summarize(RunLoop(scene, run), run));
  }
  return rows;
}

void WriteSummaryCsv(std::ostream& out, const std::vector<RunSummary>& rows) {
  out << "planner,delay_s,seed,lookahead,outcome,total_time_s,mean_error_m,max_error_m,"
         "collision\n";
  char line[256];
  for (const RunSummary& r : rows) {
    std::snprintf(line, sizeof(line), "%s,%.6g,%llu,%s,%s,%.4f,%.10g,%.10g,%d\n",
                  PlannerName(r.planner), r.delay, static_cast<unsigned long long>(r.seed),
                  r.lookahead.c_str(), OutcomeName(r.outcome), r.total_time, r.mean_error,
                  r.max_error, r.collision ? 1 : 0);
    out << line;
  }
}

void WriteAggregateCsv(std::ostream& out, const std::vector<SweepAggregate>& rows) {
  out << "planner,delay_s,runs,reached,median_max_error_m,median_mean_error_m,"
         "median_total_time_s\n";
  char line[256];
  for (const SweepAggregate& r : rows) {
    std::snprintf(line, sizeof(line), "%s,%.6g,%d,%d,%.10g,%.10g,%.4f\n",
                  PlannerName(r.planner), r.delay, r.runs, r.reached, r.median_max_error,
                  r.median_mean_error, r.median_total_time);
    out << line;
  }
}

}  // namespace ispace
