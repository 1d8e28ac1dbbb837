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

#include "ispace/scenario.h"

#include <cmath>
#include <fstream>
#include <set>

namespace ispace {

using nlohmann::json;

const char* PlannerName(PlannerKind planner) {
  return planner == PlannerKind::kHpf ? "hpf" : "fm";
}

PlannerKind ParsePlanner(const std::string& name) {
  if (name == "hpf") return PlannerKind::kHpf;
  if (name == "fm") return PlannerKind::kFm;
  throw ScenarioError("planner", "expected \"hpf\" or \"fm\", got \"" + name + "\"");
}

namespace {

std::string Join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

// Reads fields out of one JSON object, remembering which keys were consumed
// so that misspelled keys are reported instead of silently ignored.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ScenarioError(Name(), "expected an object");
  }

  std::string Field(const std::string& key) const { return Join(path_, key); }

  bool Has(const std::string& key) const { return obj_.contains(key); }

  const json& Raw(const std::string& key) {
    used_.insert(key);
    return obj_.at(key);
  }

  template <typename T>
  T Require(const std::string& key) {
    if (!Has(key)) throw ScenarioError(Field(key), "required field missing");
    return Convert<T>(key);
  }

  template <typename T>
  T Get(const std::string& key, T fallback) {
    if (!Has(key) || obj_.at(key).is_null()) {
      used_.insert(key);
      return fallback;
    }
    return Convert<T>(key);
  }

  void Finish() const {
    for (const auto& item : obj_.items()) {
      if (!used_.count(item.key())) {
        throw ScenarioError(Field(item.key()), "unknown field");
      }
    }
  }

 private:
  std::string Name() const { return path_.empty() ? "scenario" : path_; }

  template <typename T>
  T Convert(const std::string& key) {
    used_.insert(key);
    const json& v = obj_.at(key);
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ScenarioError(Field(key), "expected a boolean");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ScenarioError(Field(key), "expected an integer");
      if constexpr (std::is_unsigned_v<T>) {
        if (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0) {
          throw ScenarioError(Field(key), "expected a non-negative integer");
        }
      }
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ScenarioError(Field(key), "expected a number");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ScenarioError(Field(key), "expected a string");
    }
    return v.get<T>();
  }

  const json& obj_;
  std::string path_;
  std::set<std::string> used_;
};

WorldPose ParsePose(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  WorldPose p;
  p.x = r.Require<double>("x");
  p.y = r.Require<double>("y");
  p.theta = NormalizeAngle(r.Get<double>("theta", 0.0));
  r.Finish();
  return p;
}

Cell ParseCell(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
      !j[1].is_number_integer()) {
    throw ScenarioError(path, "expected [x, y] integer pixel pair");
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

std::uint8_t ParseIntensity(ObjectReader& r, const std::string& key) {
  const int v = r.Require<int>(key);
  if (v < 0 || v > 255) throw ScenarioError(r.Field(key), "intensity must lie in [0, 255]");
  return static_cast<std::uint8_t>(v);
}

Shape ParseShape(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  const std::string type = r.Require<std::string>("type");
  if (type == "rect") {
    RectShape s;
    s.x0 = r.Require<int>("x0");
    s.y0 = r.Require<int>("y0");
    s.x1 = r.Require<int>("x1");
    s.y1 = r.Require<int>("y1");
    s.intensity = ParseIntensity(r, "intensity");
    r.Finish();
    return s;
  }
  if (type == "disc") {
    DiscShape s;
    s.cx = r.Require<double>("cx");
    s.cy = r.Require<double>("cy");
    s.radius = r.Require<double>("radius");
    s.intensity = ParseIntensity(r, "intensity");
    r.Finish();
    return s;
  }
  throw ScenarioError(r.Field("type"), "expected \"rect\" or \"disc\"");
}

json PoseToJson(const WorldPose& p) { return {{"x", p.x}, {"y", p.y}, {"theta", p.theta}}; }
json CellToJson(Cell c) { return json::array({c.x, c.y}); }

}  // namespace

Scenario ParseScenario(const json& doc, const std::filesystem::path& base_dir) {
  ObjectReader root(doc, "");
  if (!root.Has("schema_version")) {
    throw ScenarioError("schema_version", "required field missing");
  }
  const int version = root.Require<int>("schema_version");
  if (version != kScenarioSchemaVersion) {
    throw ScenarioError("schema_version",
                        "unsupported version " + std::to_string(version));
  }
  Scenario s;

  {
    if (!root.Has("workspace")) throw ScenarioError("workspace", "required field missing");
    ObjectReader ws(root.Raw("workspace"), "workspace");
    if (ws.Has("image")) {
      std::filesystem::path p = ws.Require<std::string>("image");
      s.image_path = p.is_absolute() ? p : base_dir / p;
      const GridImage image = LoadPgm(*s.image_path);
      s.width = image.width();
      s.height = image.height();
    } else {
      s.width = ws.Require<int>("width");
      s.height = ws.Require<int>("height");
      const int bg = ws.Get<int>("background", 200);
      if (bg < 0 || bg > 255) {
        throw ScenarioError("workspace.background", "intensity must lie in [0, 255]");
      }
      s.background = static_cast<std::uint8_t>(bg);
      if (ws.Has("shapes")) {
        const json& shapes = ws.Raw("shapes");
        if (!shapes.is_array()) throw ScenarioError("workspace.shapes", "expected an array");
        for (std::size_t i = 0; i < shapes.size(); ++i) {
          s.shapes.push_back(
              ParseShape(shapes[i], "workspace.shapes[" + std::to_string(i) + "]"));
        }
      }
    }
    const json extent = ws.Has("extent_m") ? ws.Raw("extent_m") : json::array({4.0, 3.0});
    if (!extent.is_array() || extent.size() != 2 || !extent[0].is_number() ||
        !extent[1].is_number()) {
      throw ScenarioError("workspace.extent_m", "expected [x_a, y_a] in meters");
    }
    s.extent_x = extent[0].get<double>();
    s.extent_y = extent[1].get<double>();
    s.gd = ws.Get<double>("gd_m", s.extent_x / s.width);
    ws.Finish();
  }

  if (!root.Has("target_cell")) throw ScenarioError("target_cell", "required field missing");
  s.target = ParseCell(root.Raw("target_cell"), "target_cell");
  if (!root.Has("start_pose")) throw ScenarioError("start_pose", "required field missing");
  s.start = ParsePose(root.Raw("start_pose"), "start_pose");

  if (root.Has("camera")) {
    ObjectReader r(root.Raw("camera"), "camera");
    s.camera.rate_hz = r.Get<double>("rate_hz", s.camera.rate_hz);
    s.camera.quantize = r.Get<bool>("quantize", s.camera.quantize);
    r.Finish();
  }
  if (root.Has("delay")) {
    ObjectReader r(root.Raw("delay"), "delay");
    s.delay.total_s = r.Get<double>("total_s", s.delay.total_s);
    s.delay.jitter_s = r.Get<double>("jitter_s", s.delay.jitter_s);
    s.delay.drop_prob = r.Get<double>("drop_prob", s.delay.drop_prob);
    s.delay.deadline_s = r.Get<double>("deadline_s", s.delay.deadline_s);
    s.delay.uplink_fraction = r.Get<double>("uplink_fraction", s.delay.uplink_fraction);
    s.delay.watchdog_s = r.Get<double>("watchdog_s", s.delay.watchdog_s);
    s.delay.compute_s = r.Get<double>("compute_s", s.delay.compute_s);
    r.Finish();
  }
  if (root.Has("controller")) {
    ObjectReader r(root.Raw("controller"), "controller");
    s.ugv.alpha = r.Get<double>("alpha", s.ugv.alpha);
    s.ugv.v_limit = r.Get<double>("v_limit", s.ugv.v_limit);
    s.ugv.omega_limit = r.Get<double>("omega_limit", s.ugv.omega_limit);
    s.guidance.beta = r.Get<double>("beta", s.guidance.beta);
    s.guidance.d_max = r.Get<double>("d_max_m", s.guidance.d_max);
    r.Finish();
  }
  if (root.Has("lookahead")) {
    const json& la = root.Raw("lookahead");
    if (la.is_string() && la.get<std::string>() == "dynamic") {
      s.guidance.mode = guidance::LookaheadMode::kDynamic;
    } else if (la.is_number_integer()) {
      s.guidance.mode = guidance::LookaheadMode::kFixed;
      s.guidance.fixed_hops = la.get<int>();
    } else {
      throw ScenarioError("lookahead", "expected \"dynamic\" or a positive integer");
    }
  }
  s.guidance.max_hops = root.Get<int>("lookahead_max", s.guidance.max_hops);
  if (root.Has("planner")) s.planner = ParsePlanner(root.Require<std::string>("planner"));
  if (root.Has("ugv")) {
    ObjectReader r(root.Raw("ugv"), "ugv");
    s.ugv.wheel_radius = r.Get<double>("wheel_radius_m", s.ugv.wheel_radius);
    s.ugv.track_width = r.Get<double>("track_width_m", s.ugv.track_width);
    r.Finish();
  }
  s.goal_radius_m = root.Get<double>("goal_radius_m", s.goal_radius_m);
  s.timeout_s = root.Get<double>("timeout_s", s.timeout_s);
  s.seed = root.Get<std::uint64_t>("seed", s.seed);
  if (root.Has("vision")) {
    ObjectReader r(root.Raw("vision"), "vision");
    s.vision.sigma = r.Get<double>("sigma", s.vision.sigma);
    s.vision.radius = r.Get<int>("radius", s.vision.radius);
    s.vision.zeta = r.Get<double>("zeta", s.vision.zeta);
    r.Finish();
  }
  if (root.Has("solver")) {
    ObjectReader r(root.Raw("solver"), "solver");
    s.solver.omega = r.Get<double>("omega", s.solver.omega);
    s.solver.tolerance = r.Get<double>("tolerance", s.solver.tolerance);
    s.solver.max_iterations = r.Get<int>("max_iterations", s.solver.max_iterations);
    s.solver.flat_epsilon = r.Get<double>("flat_epsilon", s.solver.flat_epsilon);
    r.Finish();
  }
  s.dilation_px = root.Get<int>("dilation_px", s.dilation_px);
  s.plant_dt_s = root.Get<double>("plant_dt_s", s.plant_dt_s);
  s.fm_path_step = root.Get<double>("fm_path_step", s.fm_path_step);
  if (root.Has("multi")) {
    ObjectReader r(root.Raw("multi"), "multi");
    s.multi.agent_radius_m = r.Get<double>("agent_radius_m", s.multi.agent_radius_m);
    s.multi.sweeps_per_frame = r.Get<int>("sweeps_per_frame", s.multi.sweeps_per_frame);
    if (r.Has("agents")) {
      const json& agents = r.Raw("agents");
      if (!agents.is_array()) throw ScenarioError("multi.agents", "expected an array");
      for (std::size_t i = 0; i < agents.size(); ++i) {
        const std::string path = "multi.agents[" + std::to_string(i) + "]";
        ObjectReader a(agents[i], path);
        AgentSpec spec;
        if (!a.Has("start_pose")) throw ScenarioError(path + ".start_pose", "required field missing");
        spec.start = ParsePose(a.Raw("start_pose"), path + ".start_pose");
        if (!a.Has("target_cell")) throw ScenarioError(path + ".target_cell", "required field missing");
        spec.target = ParseCell(a.Raw("target_cell"), path + ".target_cell");
        a.Finish();
        s.multi.agents.push_back(spec);
      }
    }
    r.Finish();
  }
  root.Finish();
  s.Validate();
  return s;
}

Scenario LoadScenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("file", "cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ScenarioError("file", path.string() + " is not valid JSON: " + e.what());
  }
  return ParseScenario(doc, path.parent_path());
}

void Scenario::Validate() const {
  if (width <= 0 || height <= 0) {
    throw ScenarioError("workspace.width", "dimensions must be positive");
  }
  if (!(gd > 0.0)) throw ScenarioError("workspace.gd_m", "must be > 0");
  const double tol = 1e-9 * std::max(1.0, gd);
  if (std::abs(gd - extent_x / width) > tol || std::abs(gd - extent_y / height) > tol) {
    throw ScenarioError("workspace.extent_m",
                        "G_D must equal x_a/m = y_a/n (square pixels)");
  }
  const WorkspaceFrame f = frame();
  try {
    (void)ShapeMask(shapes, width, height);
  } catch (const std::out_of_range& e) {
    throw ScenarioError("workspace.shapes", e.what());
  }
  if (target.x < 0 || target.y < 0 || target.x >= width || target.y >= height) {
    throw ScenarioError("target_cell", "outside the workspace image");
  }
  if (!f.InBounds(start.position())) {
    throw ScenarioError("start_pose", "outside the workspace");
  }
  const auto wrap = [](const char* field, auto&& fn) {
    try {
      fn();
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(field, e.what());
    }
  };
  wrap("camera.rate_hz", [&] { camera.Validate(); });
  wrap("controller", [&] { ugv.Validate(); });
  if (guidance.mode == guidance::LookaheadMode::kFixed && guidance.fixed_hops < 1) {
    throw ScenarioError("lookahead", "must be >= 1 hop");
  }
  if (guidance.max_hops < 1) throw ScenarioError("lookahead_max", "must be >= 1 hop");
  if (!(guidance.beta >= 0.0)) throw ScenarioError("controller.beta", "must be >= 0");
  wrap("controller.d_max_m", [&] { guidance.Validate(gd); });
  wrap("vision", [&] { vision.Validate(); });
  wrap("solver", [&] { solver.Validate(); });
  if (!(delay.total_s >= 0.0)) throw ScenarioError("delay.total_s", "must be >= 0");
  if (!(delay.jitter_s >= 0.0)) throw ScenarioError("delay.jitter_s", "must be >= 0");
  if (!(delay.drop_prob >= 0.0 && delay.drop_prob <= 1.0)) {
    throw ScenarioError("delay.drop_prob", "must lie in [0, 1]");
  }
  if (!(delay.deadline_s > 0.0)) throw ScenarioError("delay.deadline_s", "must be > 0");
  if (!(delay.uplink_fraction >= 0.0 && delay.uplink_fraction <= 1.0)) {
    throw ScenarioError("delay.uplink_fraction", "must lie in [0, 1]");
  }
  if (!(delay.watchdog_s > 0.0)) throw ScenarioError("delay.watchdog_s", "must be > 0");
  if (!(delay.compute_s >= 0.0)) throw ScenarioError("delay.compute_s", "must be >= 0");
  if (!(goal_radius_m > 0.0)) throw ScenarioError("goal_radius_m", "must be > 0");
  if (!(timeout_s > 0.0)) throw ScenarioError("timeout_s", "must be > 0");
  if (dilation_px < 0) throw ScenarioError("dilation_px", "must be >= 0");
  if (!(plant_dt_s > 0.0)) throw ScenarioError("plant_dt_s", "must be > 0");
  if (!(fm_path_step > 0.0 && fm_path_step <= 1.0)) {
    throw ScenarioError("fm_path_step", "must lie in (0, 1]");
  }
  if (!(multi.agent_radius_m > 0.0)) throw ScenarioError("multi.agent_radius_m", "must be > 0");
  if (multi.sweeps_per_frame < 1) {
    throw ScenarioError("multi.sweeps_per_frame", "must be >= 1");
  }
  for (std::size_t i = 0; i < multi.agents.size(); ++i) {
    const std::string path = "multi.agents[" + std::to_string(i) + "]";
    const AgentSpec& a = multi.agents[i];
    if (!f.InBounds(a.start.position())) {
      throw ScenarioError(path + ".start_pose", "outside the workspace");
    }
    if (a.target.x < 0 || a.target.y < 0 || a.target.x >= width || a.target.y >= height) {
      throw ScenarioError(path + ".target_cell", "outside the workspace image");
    }
  }
}

json ScenarioToJson(const Scenario& s) {
  json ws;
  if (s.image_path) {
    ws["image"] = s.image_path->string();
  } else {
    ws["width"] = s.width;
    ws["height"] = s.height;
    ws["background"] = s.background;
    json shapes = json::array();
    for (const Shape& shape : s.shapes) {
      if (const auto* r = std::get_if<RectShape>(&shape)) {
        shapes.push_back({{"type", "rect"}, {"x0", r->x0}, {"y0", r->y0},
                          {"x1", r->x1}, {"y1", r->y1}, {"intensity", r->intensity}});
      } else {
        const auto& d = std::get<DiscShape>(shape);
        shapes.push_back({{"type", "disc"}, {"cx", d.cx}, {"cy", d.cy},
                          {"radius", d.radius}, {"intensity", d.intensity}});
      }
    }
    ws["shapes"] = shapes;
  }
  ws["extent_m"] = json::array({s.extent_x, s.extent_y});
  ws["gd_m"] = s.gd;

  json doc;
  doc["schema_version"] = kScenarioSchemaVersion;
  doc["workspace"] = ws;
  doc["target_cell"] = CellToJson(s.target);
  doc["start_pose"] = PoseToJson(s.start);
  doc["camera"] = {{"rate_hz", s.camera.rate_hz}, {"quantize", s.camera.quantize}};
  json delay = {{"total_s", s.delay.total_s},
                {"jitter_s", s.delay.jitter_s},
                {"drop_prob", s.delay.drop_prob},
                {"uplink_fraction", s.delay.uplink_fraction},
                {"watchdog_s", s.delay.watchdog_s},
                {"compute_s", s.delay.compute_s}};
  delay["deadline_s"] = std::isfinite(s.delay.deadline_s) ? json(s.delay.deadline_s) : json();
  doc["delay"] = delay;
  doc["controller"] = {{"alpha", s.ugv.alpha},
                       {"beta", s.guidance.beta},
                       {"d_max_m", s.guidance.d_max},
                       {"v_limit", s.ugv.v_limit},
                       {"omega_limit", s.ugv.omega_limit}};
  doc["lookahead"] = s.guidance.mode == guidance::LookaheadMode::kDynamic
                         ? json("dynamic")
                         : json(s.guidance.fixed_hops);
  doc["lookahead_max"] = s.guidance.max_hops;
  doc["planner"] = PlannerName(s.planner);
  doc["ugv"] = {{"wheel_radius_m", s.ugv.wheel_radius},
                {"track_width_m", s.ugv.track_width}};
  doc["goal_radius_m"] = s.goal_radius_m;
  doc["timeout_s"] = s.timeout_s;
  doc["seed"] = s.seed;
  doc["vision"] = {{"sigma", s.vision.sigma}, {"radius", s.vision.radius},
                   {"zeta", s.vision.zeta}};
  doc["solver"] = {{"omega", s.solver.omega},
                   {"tolerance", s.solver.tolerance},
                   {"max_iterations", s.solver.max_iterations},
                   {"flat_epsilon", s.solver.flat_epsilon}};
  doc["dilation_px"] = s.dilation_px;
  doc["plant_dt_s"] = s.plant_dt_s;
  doc["fm_path_step"] = s.fm_path_step;
  json agents = json::array();
  for (const AgentSpec& a : s.multi.agents) {
    agents.push_back({{"start_pose", PoseToJson(a.start)}, {"target_cell", CellToJson(a.target)}});
  }
  doc["multi"] = {{"agent_radius_m", s.multi.agent_radius_m},
                  {"sweeps_per_frame", s.multi.sweeps_per_frame},
                  {"agents", agents}};
  return doc;
}

GridImage ScenarioImage(const Scenario& s) {
  if (s.image_path) return LoadPgm(*s.image_path);
  return Rasterize(s.shapes, s.width, s.height, s.background);
}

}  // namespace ispace
