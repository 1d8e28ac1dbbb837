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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <deque>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ispace/analysis.h"
#include "ispace/fm_baseline.h"
#include "ispace/hpf.h"
#include "ispace/multi_agent.h"
#include "ispace/netloop.h"
#include "ispace/scenario.h"
#include "ispace/vision.h"

namespace ispace {
namespace {

const std::filesystem::path kScenarios = ISPACE_SCENARIO_DIR;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string Fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

// Dense direct solve of the 5-point Laplace system over the free cells.
Grid<double> DenseSolve(const hpf::BoundaryGrid& b) {
  const int w = b.width();
  const int h = b.height();
  Grid<int> unknown(w, h, -1);
  int n = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (b.labels()(x, y) == hpf::Label::kFree) unknown(x, y) = n++;
    }
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  const int dx[4] = {1, -1, 0, 0};
  const int dy[4] = {0, 0, 1, -1};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int i = unknown(x, y);
      if (i < 0) continue;
      a(i, i) = 4.0;
      for (int k = 0; k < 4; ++k) {
        const int nx = x + dx[k];
        const int ny = y + dy[k];
        const hpf::Label l = b.labels()(nx, ny);
        if (l == hpf::Label::kFree) {
          a(i, unknown(nx, ny)) = -1.0;
        } else if (l == hpf::Label::kObstacle) {
          rhs(i) += 1.0;
        }
      }
    }
  }
  const Eigen::VectorXd sol = a.fullPivLu().solve(rhs);
  Grid<double> out(w, h, 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int i = unknown(x, y);
      const hpf::Label l = b.labels()(x, y);
      out(x, y) = i >= 0 ? sol(i) : (l == hpf::Label::kObstacle ? 1.0 : 0.0);
    }
  }
  return out;
}

Verdict SolverOracle() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int g = 0; g < 100; ++g) {
    std::mt19937_64 rng(1000 + g);
    std::uniform_int_distribution<int> side(4, 12);
    std::bernoulli_distribution wall(0.25);
    const int w = side(rng);
    const int h = side(rng);
    Grid<hpf::Label> labels(w, h, hpf::Label::kFree);
    std::vector<Cell> free;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const bool frame = x == 0 || y == 0 || x == w - 1 || y == h - 1;
        if (frame || wall(rng)) {
          labels(x, y) = hpf::Label::kObstacle;
        } else {
          free.push_back({x, y});
        }
      }
    }
    if (free.empty()) {
      free.push_back({w / 2, h / 2});
      labels[free[0]] = hpf::Label::kFree;
    }
    const Cell target = free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng)];
    labels[target] = hpf::Label::kTarget;
    const hpf::BoundaryGrid boundary(labels, target);
    const hpf::PotentialField relaxed = hpf::Relax(boundary, hpf::SolverParams{});
    const Grid<double> exact = DenseSolve(boundary);
    for (std::size_t i = 0; i < exact.size(); ++i) {
      worst = std::max(worst, std::abs(exact.values()[i] - relaxed.phi.values()[i]));
    }
  }
  const double t = Seconds(start);
  return {worst <= 1e-8 && t < 10.0,
          Fmt("max |relax - dense| = %.3g over 100 grids (limit 1e-8), %.2f s (limit 10 s)",
              worst, t)};
}

Verdict GuidanceCompleteness() {
  const auto start = std::chrono::steady_clock::now();
  long descents = 0, failures = 0, obstacle_visits = 0;
  for (int s = 0; s < 50; ++s) {
    std::mt19937_64 rng(2000 + s);
    const int w = 64, h = 48;
    std::vector<Shape> shapes;
    const int count = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int i = 0; i < count; ++i) {
      if (std::bernoulli_distribution(0.5)(rng)) {
        const int x0 = std::uniform_int_distribution<int>(5, w - 20)(rng);
        const int y0 = std::uniform_int_distribution<int>(5, h - 20)(rng);
        const int sw = std::uniform_int_distribution<int>(4, 14)(rng);
        const int sh = std::uniform_int_distribution<int>(4, 14)(rng);
        shapes.push_back(RectShape{x0, y0, x0 + sw, y0 + sh, 40});
      } else {
        const double r = std::uniform_int_distribution<int>(3, 8)(rng);
        const double cx = std::uniform_int_distribution<int>(12, w - 13)(rng);
        const double cy = std::uniform_int_distribution<int>(12, h - 13)(rng);
        shapes.push_back(DiscShape{cx, cy, r, 40});
      }
    }
    const GridImage image = Rasterize(shapes, w, h, 200);
    const EdgeMap edges = vision::DetectEdges(image, vision::VisionParams{});
    const Grid<std::uint8_t> mask = ShapeMask(shapes, w, h);
    const hpf::BoundaryGrid probe = hpf::BoundaryFromMask(edges, 2);
    std::vector<Cell> candidates;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (!probe.IsObstacle({x, y}) && !mask(x, y)) candidates.push_back({x, y});
      }
    }
    const Cell target =
        candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
    const hpf::NavigationField field =
        hpf::Solve(hpf::BuildBoundary(edges, target, 2), hpf::SolverParams{});
    // Cells 4-connected to the target through non-obstacle cells.
    Grid<std::uint8_t> connected(w, h, 0);
    std::deque<Cell> queue{target};
    connected[target] = 1;
    while (!queue.empty()) {
      const Cell c = queue.front();
      queue.pop_front();
      const Cell next[4] = {{c.x + 1, c.y}, {c.x - 1, c.y}, {c.x, c.y + 1}, {c.x, c.y - 1}};
      for (const Cell n : next) {
        if (!connected.Contains(n) || connected[n] || field.boundary.IsObstacle(n)) continue;
        connected[n] = 1;
        queue.push_back(n);
      }
    }
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (!connected(x, y) || !field.boundary.IsFree({x, y})) continue;
        const hpf::Descent d = hpf::Descend(field, {x, y}, 4 * w * h);
        ++descents;
        if (d.reason != hpf::DescentReason::kReached) ++failures;
        for (const Cell c : d.cells) {
          if (field.boundary.IsObstacle(c)) {
            ++obstacle_visits;
            break;
          }
        }
      }
    }
  }
  const double t = Seconds(start);
  return {failures == 0 && obstacle_visits == 0 && t < 60.0,
          Fmt("%ld descents over 50 scenes: %ld not reached, %ld entered an obstacle, "
              "%.2f s (limit 60 s)",
              descents, failures, obstacle_visits, t)};
}

Verdict UnreachableBehavior() {
  const Scenario s = LoadScenario(kScenarios / "barrier.json");
  const RunLog log = RunLoop(s);
  double moved = 0.0;
  for (const RunRecord& r : log.records) {
    moved = std::max(moved, std::hypot(r.truth.x - s.start.x, r.truth.y - s.start.y));
  }
  return {log.outcome == Outcome::kUnreachable && moved < 2.0 * s.gd,
          Fmt("outcome %s, displacement %.4g m (limit %.4g m)", OutcomeName(log.outcome),
              moved, 2.0 * s.gd)};
}

Verdict CostRatioExact() {
  const fm::CostRatio c = fm::ComputeCostRatio(320, 240, 20, 7);
  return {c.template_matching == 26400000 && c.edge_detection == 3573521 && c.ratio >= 7.3 &&
              c.ratio <= 7.4,
          Fmt("C_TM = %lld, C_ED = %lld, ratio = %.4f", static_cast<long long>(c.template_matching),
              static_cast<long long>(c.edge_detection), c.ratio)};
}

struct ComparisonData {
  Scenario base;
  std::optional<PreparedScene> scene;
};

ComparisonData& Comparison() {
  static ComparisonData data = [] {
    ComparisonData d;
    d.base = LoadScenario(kScenarios / "comparison.json");
    d.scene.emplace(PrepareScene(d.base));
    return d;
  }();
  return data;
}

Verdict LambdaBound() {
  ComparisonData& c = Comparison();
  const RunLog log = RunLoop(*c.scene, c.base);
  double lowest = std::numeric_limits<double>::infinity();
  std::size_t bad = 0;
  for (const ControlStep& step : log.steps) {
    if (step.delta_l < 1 || step.path_points < 1) {
      ++bad;
      continue;
    }
    lowest = std::min(lowest, fm::Speedup(step.path_points, step.delta_l));
  }
  return {!log.steps.empty() && bad == 0 && lowest >= 1.0,
          Fmt("%zu control steps, min N_p/dL = %.2f, %zu steps without a hop", log.steps.size(),
              lowest, bad)};
}

const std::vector<double> kDelays{0.0, 0.1, 0.3, 0.6, 0.9, 1.2};

std::vector<SweepAggregate>& SweepResults() {
  static std::vector<SweepAggregate> rows = [] {
    ComparisonData& c = Comparison();
    SweepSpec spec;
    spec.delays = kDelays;
    spec.seeds = 10;
    spec.planners = {PlannerKind::kHpf, PlannerKind::kFm};
    return Aggregate(Sweep(*c.scene, c.base, spec));
  }();
  return rows;
}

const SweepAggregate& Row(PlannerKind planner, double delay) {
  for (const SweepAggregate& a : SweepResults()) {
    if (a.planner == planner && a.delay == delay) return a;
  }
  throw std::logic_error("missing sweep row");
}

Verdict DelayTrend() {
  const auto start = std::chrono::steady_clock::now();
  ComparisonData& c = Comparison();
  SweepSpec spec;
  spec.delays = kDelays;
  spec.seeds = 10;
  const std::vector<SweepAggregate> rows = Aggregate(Sweep(*c.scene, c.base, spec));
  const double t = Seconds(start);
  bool monotone = true;
  std::string curve;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && rows[i].median_max_error < rows[i - 1].median_max_error) monotone = false;
    curve += Fmt("%s%.3g:%.4g", i ? " " : "", rows[i].delay, rows[i].median_max_error);
  }
  return {monotone && rows.size() == kDelays.size() && t < 300.0,
          Fmt("median max error (delay s:m) %s, %.1f s (limit 300 s)", curve.c_str(), t)};
}

Verdict PlannerComparison() {
  bool ok = true;
  std::string detail = "median max error HPF/FM:";
  for (const double d : kDelays) {
    if (d < 0.3) continue;
    const double hpf = Row(PlannerKind::kHpf, d).median_max_error;
    const double fm = Row(PlannerKind::kFm, d).median_max_error;
    ok = ok && hpf <= fm;
    detail += Fmt(" %.1fs %.4g/%.4g", d, hpf, fm);
  }
  ComparisonData& c = Comparison();
  Scenario run = c.base;
  run.delay.total_s = 0.0;
  run.planner = PlannerKind::kHpf;
  const double tv_hpf = TotalCurvatureVariation(Curvature(RunLoop(*c.scene, run)));
  run.planner = PlannerKind::kFm;
  const double tv_fm = TotalCurvatureVariation(Curvature(RunLoop(*c.scene, run)));
  ok = ok && tv_hpf < tv_fm;
  detail += Fmt("; zero-delay sum |dk| HPF %.4g < FM %.4g", tv_hpf, tv_fm);
  return {ok, detail};
}

Verdict LookaheadTradeoff() {
  ComparisonData& c = Comparison();
  Scenario base = c.base;
  base.delay.total_s = 0.0;
  const std::vector<RunSummary> rows = CompareLookahead(*c.scene, base, {1, 8, std::nullopt});
  const RunSummary& l1 = rows[0];
  const RunSummary& l8 = rows[1];
  const RunSummary& dyn = rows[2];
  const bool ok = l8.total_time < l1.total_time && l8.mean_error > l1.mean_error &&
                  dyn.total_time <= l1.total_time && dyn.mean_error <= l8.mean_error &&
                  l1.outcome == Outcome::kReached && l8.outcome == Outcome::kReached &&
                  dyn.outcome == Outcome::kReached;
  return {ok, Fmt("T/mean error: dL=1 %.2f s/%.4g m, dL=8 %.2f s/%.4g m, dynamic %.2f s/%.4g m",
                  l1.total_time, l1.mean_error, l8.total_time, l8.mean_error, dyn.total_time,
                  dyn.mean_error)};
}

Verdict ReversalManeuver() {
  const Scenario s = LoadScenario(kScenarios / "reversal.json");
  const RunLog log = RunLoop(s);
  std::size_t first_motion = log.records.size();
  for (std::size_t i = 0; i < log.records.size(); ++i) {
    if (log.records[i].v_applied != 0.0) {
      first_motion = i;
      break;
    }
  }
  std::size_t reverse_end = first_motion;
  while (reverse_end < log.records.size() && log.records[reverse_end].v_applied < 0.0) {
    ++reverse_end;
  }
  const bool starts_reverse =
      first_motion < log.records.size() && log.records[first_motion].v_applied < 0.0;
  const bool then_forward =
      reverse_end < log.records.size() && log.records[reverse_end].v_applied > 0.0;
  const double interval =
      starts_reverse ? log.records[reverse_end - 1].t - log.records[first_motion].t : 0.0;
  return {starts_reverse && then_forward && log.outcome == Outcome::kReached,
          Fmt("reverse interval %.2f s from t = %.2f s, then forward; outcome %s", interval,
              first_motion < log.records.size() ? log.records[first_motion].t : -1.0,
              OutcomeName(log.outcome))};
}

Verdict EdgeRobustness() {
  const Scenario s = LoadScenario(kScenarios / "robustness.json");
  const EdgeMap edges = vision::DetectEdges(ScenarioImage(s), s.vision);
  std::vector<std::size_t> contour;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges.values()[i]) contour.push_back(i);
  }
  const std::size_t removed = static_cast<std::size_t>(std::lround(0.2 * contour.size()));
  int ok = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::mt19937_64 rng(3000 + trial);
    std::vector<std::size_t> order = contour;
    std::shuffle(order.begin(), order.end(), rng);
    EdgeMap damaged = edges;
    for (std::size_t i = 0; i < removed; ++i) damaged.values()[order[i]] = 0;
    const PreparedScene scene = PrepareScene(s, damaged);
    const RunLog log = RunLoop(scene, s);
    ok += log.outcome == Outcome::kReached && !log.any_collision;
  }
  return {ok >= 18, Fmt("%d/20 trials reached without collision (%zu of %zu contour pixels "
                        "removed per trial)",
                        ok, removed, contour.size())};
}

Verdict MultiAgentSafety() {
  const Scenario s = LoadScenario(kScenarios / "star.json");
  bool ok = true;
  std::string detail;
  for (const Awareness mode : {Awareness::kAll, Awareness::kNearestOnly}) {
    const MultiRunLog m = RunMulti(s, mode);
    int reached = 0;
    bool collided = false;
    for (const RunLog& log : m.agents) {
      reached += log.outcome == Outcome::kReached;
      collided = collided || log.any_collision;
    }
    ok = ok && m.all_reached && !collided && m.min_dm > 2.0 * s.multi.agent_radius_m;
    detail += Fmt("%s%s: %d/%zu reached, min DM %.3f m (limit > %.3f m)%s",
                  detail.empty() ? "" : "; ", AwarenessName(mode), reached, m.agents.size(),
                  m.min_dm, 2.0 * s.multi.agent_radius_m, collided ? ", collision" : "");
  }
  return {ok, detail};
}

Verdict Determinism() {
  Scenario s = LoadScenario(kScenarios / "comparison.json");
  s.delay.total_s = 0.3;
  s.delay.jitter_s = 0.05;
  s.seed = 7;
  const auto csv = [](const Scenario& run) {
    std::ostringstream out;
    RunLoop(run).WriteCsv(out);
    return out.str();
  };
  const std::string a = csv(s);
  const std::string b = csv(s);
  Scenario other = s;
  other.seed = 8;
  const std::string c = csv(other);
  return {a == b && a != c,
          Fmt("two runs with seed 7: %s (%zu bytes); seed 8 %s", a == b ? "identical" : "differ",
              a.size(), a != c ? "differs" : "identical")};
}

Verdict VisionPipeline() {
  const GridImage flat(64, 48, 128);
  const std::size_t flat_edges = vision::DetectEdges(flat, vision::VisionParams{}).CountEdges();

  const std::vector<Shape> disc{DiscShape{32, 24, 10, 40}};
  const GridImage image = Rasterize(disc, 64, 48, 200);
  const EdgeMap edges = vision::DetectEdges(image, vision::VisionParams{});
  // 4-connected flood fill of non-edge cells from a corner must not reach
  // the disc center.
  Grid<std::uint8_t> seen(64, 48, 0);
  std::deque<Cell> queue{{0, 0}};
  seen(0, 0) = 1;
  while (!queue.empty()) {
    const Cell c = queue.front();
    queue.pop_front();
    const Cell next[4] = {{c.x + 1, c.y}, {c.x - 1, c.y}, {c.x, c.y + 1}, {c.x, c.y - 1}};
    for (const Cell n : next) {
      if (!seen.Contains(n) || seen[n] || edges[n]) continue;
      seen[n] = 1;
      queue.push_back(n);
    }
  }
  const bool closed = !seen(32, 24) && !edges(32, 24);

  double worst_sum = 0.0;
  for (const double sigma : {0.8, 1.0, 1.5, 2.0, 3.0}) {
    const vision::Kernel k = vision::MakeLog(sigma, static_cast<int>(std::ceil(3 * sigma)));
    worst_sum = std::max(worst_sum, std::abs(k.Sum()));
  }
  return {flat_edges == 0 && closed && worst_sum <= 1e-12,
          Fmt("constant image: %zu edges; disc contour %s (%zu edge cells); max |sum LoG| = %.2g",
              flat_edges, closed ? "closed" : "open", edges.CountEdges(), worst_sum)};
}

}  // namespace
}  // namespace ispace

int main() {
  using namespace ispace;
  struct Criterion {
    const char* name;
    std::function<Verdict()> check;
  };
  const std::vector<Criterion> criteria{
      {"solver oracle", SolverOracle},
      {"guidance completeness", GuidanceCompleteness},
      {"unreachable behavior", UnreachableBehavior},
      {"cost ratio", CostRatioExact},
      {"lambda_p bound", LambdaBound},
      {"delay trend", DelayTrend},
      {"planner comparison", PlannerComparison},
      {"look-ahead trade-off", LookaheadTradeoff},
      {"reversal maneuver", ReversalManeuver},
      {"edge-map robustness", EdgeRobustness},
      {"multi-agent safety", MultiAgentSafety},
      {"determinism", Determinism},
      {"vision pipeline", VisionPipeline},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].check();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("%s %2zu %s: %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                v.detail.c_str(), Seconds(start));
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
