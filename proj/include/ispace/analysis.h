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

// Run metrics and batch experiments.

#ifndef ISPACE_ANALYSIS_H_
#define ISPACE_ANALYSIS_H_

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ispace/netloop.h"
#include "ispace/scenario.h"

namespace ispace {

// Zero-delay one-hop descent from the start. Throws std::runtime_error if the
// start cannot reach the target.
std::vector<Point2> IdealPath(const PreparedScene& scene);

struct ErrorSeries {
  std::vector<double> t;
  std::vector<double> error;  // m
  double mean = 0.0;
  double max = 0.0;
  double total_time = 0.0;
};

// Point-to-segment distance from each record's true pose to the polyline.
ErrorSeries DistanceError(const RunLog& log, const std::vector<Point2>& polyline);

inline constexpr double kCurvatureMinSpeed = 0.01;  // m/s

struct CurvatureSeries {
  std::vector<double> t;
  // omega / v of the applied command; NaN where |v| <= kCurvatureMinSpeed.
  std::vector<double> kappa;
};

CurvatureSeries Curvature(const RunLog& log);
// Sum of |kappa[i] - kappa[i-1]| over adjacent defined samples.
double TotalCurvatureVariation(const CurvatureSeries& series);

// Look-ahead setting: a fixed hop count, or nullopt for dynamic.
using LookaheadSetting = std::optional<int>;
std::string LookaheadLabel(const LookaheadSetting& setting);
void ApplyLookahead(Scenario& scenario, const LookaheadSetting& setting);

struct RunSummary {
  PlannerKind planner = PlannerKind::kHpf;
  double delay = 0.0;
  std::uint64_t seed = 0;
  std::string lookahead;
  Outcome outcome = Outcome::kTimeout;
  double total_time = 0.0;
  double mean_error = 0.0;
  double max_error = 0.0;
  bool collision = false;
};

RunSummary Summarize(const RunLog& log, const Scenario& run);

struct SweepSpec {
  std::vector<double> delays{0.0};
  int seeds = 1;  // seeds base.seed, base.seed + 1, ...
  std::vector<PlannerKind> planners{PlannerKind::kHpf};
};

std::vector<RunSummary> Sweep(const PreparedScene& scene, const Scenario& base,
                              const SweepSpec& spec);

struct SweepAggregate {
  PlannerKind planner = PlannerKind::kHpf;
  double delay = 0.0;
  double median_max_error = 0.0;
  double median_mean_error = 0.0;
  double median_total_time = 0.0;
  int reached = 0;
  int runs = 0;
};

// One row per (planner, delay), in first-seen order.
std::vector<SweepAggregate> Aggregate(const std::vector<RunSummary>& rows);

std::vector<RunSummary> CompareLookahead(const PreparedScene& scene, const Scenario& base,
                                         const std::vector<LookaheadSetting>& settings);

double Median(std::vector<double> values);

void WriteSummaryCsv(std::ostream& out, const std::vector<RunSummary>& rows);
void WriteAggregateCsv(std::ostream& out, const std::vector<SweepAggregate>& rows);

}  // namespace ispace

#endif  // ISPACE_ANALYSIS_H_
