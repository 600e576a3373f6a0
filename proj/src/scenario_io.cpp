#include "legiplan/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "legiplan/errors.hpp"

namespace legiplan {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

/// Typed, path-aware access to one JSON object. Every key read is recorded so
/// finish() can reject the ones nobody asked for.
class ObjectReader {
 public:
  ObjectReader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ValidationError(path_, "must be an object");
  }

  std::string child_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json* find(const std::string& key) {
    known_.insert(key);
    const auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }

  double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
    const json* v = find(key);
    if (v == nullptr) {
      if (fallback) return *fallback;
      throw ValidationError(child_path(key), "required key missing");
    }
    if (!v->is_number()) throw ValidationError(child_path(key), "must be a number");
    const double x = v->get<double>();
    if (!std::isfinite(x)) throw ValidationError(child_path(key), "must be finite");
    return x;
  }

  std::optional<double> optional_number(const std::string& key) {
    if (node_.find(key) == node_.end()) {
      known_.insert(key);
      return std::nullopt;
    }
    return number(key);
  }

  int integer(const std::string& key, int fallback) {
    const json* v = find(key);
    if (v == nullptr) return fallback;
    if (!v->is_number_integer()) throw ValidationError(child_path(key), "must be an integer");
    const auto x = v->get<std::int64_t>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
      throw ValidationError(child_path(key), "integer out of range");
    }
    return static_cast<int>(x);
  }

  bool boolean(const std::string& key, bool fallback) {
    const json* v = find(key);
    if (v == nullptr) return fallback;
    if (!v->is_boolean()) throw ValidationError(child_path(key), "must be a boolean");
    return v->get<bool>();
  }

  std::optional<std::string> optional_string(const std::string& key) {
    const json* v = find(key);
    if (v == nullptr) return std::nullopt;
    if (!v->is_string()) throw ValidationError(child_path(key), "must be a string");
    return v->get<std::string>();
  }

  std::string string(const std::string& key) {
    auto s = optional_string(key);
    if (!s) throw ValidationError(child_path(key), "required key missing");
    return *s;
  }

  void finish() const {
    for (const auto& [key, value] : node_.items()) {
      if (known_.count(key) == 0) throw ValidationError(child_path(key), "unknown key");
    }
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> known_;
};

const json& array_at(const json* node, const std::string& path) {
  static const json empty = json::array();
  if (node == nullptr) return empty;
  if (!node->is_array()) throw ValidationError(path, "must be an array");
  return *node;
}

std::string indexed(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

RobotState read_robot(const json& node) {
  ObjectReader r(node, "robot");
  RobotState robot;
  robot.position = {r.number("x"), r.number("y")};
  robot.heading = wrap_angle(r.number("heading_deg", 0.0) * kDegToRad);
  robot.speed = r.number("speed", 0.0);
  robot.radius = r.number("radius", 0.25);
  robot.v_max = r.number("v_max", 1.0);
  robot.a_max = r.number("a_max", 1.0);
  robot.omega_max = r.number("omega_max_deg", 90.0) * kDegToRad;
  r.finish();
  return robot;
}

Goal read_goal(const json& node, const std::string& path) {
  ObjectReader r(node, path);
  Goal g;
  g.id = r.string("id");
  g.position = {r.number("x"), r.number("y")};
  g.is_target = r.boolean("is_target", false);
  r.finish();
  return g;
}

ObserverState read_observer(const json& node, const std::string& path) {
  ObjectReader r(node, path);
  ObserverState o;
  o.id = r.string("id");
  o.position = {r.number("x"), r.number("y")};
  o.heading = r.number("heading_deg") * kDegToRad;
  o.fov = r.number("fov_deg", 120.0) * kDegToRad;
  o.attached_goal = r.optional_string("attached_goal");
  r.finish();
  return o;
}

Obstacle read_obstacle(const json& node, const std::string& path) {
  ObjectReader r(node, path);
  const std::string type = r.string("type");
  Obstacle out;
  if (type == "circle") {
    out = Circle{{r.number("x"), r.number("y")}, r.number("radius")};
  } else if (type == "rect") {
    out = Rect{{r.number("min_x"), r.number("min_y")}, {r.number("max_x"), r.number("max_y")}};
  } else {
    throw ValidationError(r.child_path("type"), "obstacle type must be circle or rect", type);
  }
  r.finish();
  return out;
}

PlannerParams read_planner(const json& node) {
  ObjectReader r(node, "planner");
  PlannerParams p;
  p.dt = r.number("dt", p.dt);
  p.horizon_w = r.integer("horizon_w", p.horizon_w);
  if (auto mode = r.optional_string("mode")) p.mode = parse_mode(*mode);
  p.cem_population = r.integer("cem_population", p.cem_population);
  p.cem_elites = r.integer("cem_elites", p.cem_elites);
  p.cem_iterations = r.integer("cem_iterations", p.cem_iterations);
  p.cem_init_std_v = r.optional_number("cem_init_std_v");
  if (auto w = r.optional_number("cem_init_std_omega_deg")) p.cem_init_std_omega = *w * kDegToRad;
  p.execute_steps = r.integer("execute_steps", p.execute_steps);
  p.goal_tolerance = r.number("goal_tolerance", p.goal_tolerance);
  p.max_cycles = r.integer("max_cycles", p.max_cycles);
  r.finish();
  return p;
}

LegibilityParams read_legibility(const json& node) {
  ObjectReader r(node, "legibility");
  LegibilityParams l;
  l.lambda_sim = r.number("lambda_sim", l.lambda_sim);
  l.lambda_fov = r.number("lambda_fov", l.lambda_fov);
  l.h_max = r.number("h_max", l.h_max);
  l.eps_v = r.number("eps_v", l.eps_v);
  r.finish();
  return l;
}

TaskCostWeights read_task_weights(const json& node) {
  ObjectReader r(node, "task_weights");
  TaskCostWeights w;
  w.w_goal = r.number("w_goal", w.w_goal);
  w.w_clearance = r.number("w_clearance", w.w_clearance);
  w.w_approach = r.number("w_approach", w.w_approach);
  w.w_smooth = r.number("w_smooth", w.w_smooth);
  w.w_speed = r.number("w_speed", w.w_speed);
  w.d_safe = r.number("d_safe", w.d_safe);
  w.v_pref = r.optional_number("v_pref");
  r.finish();
  return w;
}

std::string format_number(const char* spec, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, spec, value);
  return buffer;
}

}  // namespace

ScenarioSpec parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ValidationError("", "malformed JSON", e.what());
  }

  ObjectReader root(doc, "");
  const json* version = root.find("version");
  if (version == nullptr) throw ValidationError("version", "required key missing");
  if (!version->is_number_integer() || version->get<std::int64_t>() != kScenarioSchemaVersion) {
    throw ValidationError("version", "unsupported schema version", version->dump());
  }

  ScenarioSpec s;
  if (const json* seed = root.find("seed")) {
    if (!seed->is_number_unsigned()) throw ValidationError("seed", "must be a nonnegative integer");
    s.seed = seed->get<std::uint64_t>();
  }

  const json* robot = root.find("robot");
  if (robot == nullptr) throw ValidationError("robot", "required key missing");
  s.robot = read_robot(*robot);

  const json* goals = root.find("goals");
  if (goals == nullptr) throw ValidationError("goals", "required key missing");
  const json& goal_list = array_at(goals, "goals");
  for (std::size_t i = 0; i < goal_list.size(); ++i) s.goals.push_back(read_goal(goal_list[i], indexed("goals", i)));

  const json& observers = array_at(root.find("observers"), "observers");
  for (std::size_t i = 0; i < observers.size(); ++i) {
    s.observers.push_back(read_observer(observers[i], indexed("observers", i)));
  }

  const json& obstacles = array_at(root.find("obstacles"), "obstacles");
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    s.obstacles.push_back(read_obstacle(obstacles[i], indexed("obstacles", i)));
  }

  static const json empty_object = json::object();
  const json* planner = root.find("planner");
  s.planner = read_planner(planner ? *planner : empty_object);
  const json* legibility = root.find("legibility");
  s.legibility = read_legibility(legibility ? *legibility : empty_object);
  const json* weights = root.find("task_weights");
  s.task_weights = read_task_weights(weights ? *weights : empty_object);
  root.finish();

  validate(s);
  return s;
}

ScenarioSpec load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("", "cannot read scenario file", path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

ordered_json scenario_to_json(const ScenarioSpec& s) {
  ordered_json doc;
  doc["version"] = kScenarioSchemaVersion;
  doc["seed"] = s.seed;
  const RobotState& r = s.robot;
  doc["robot"] = {{"x", r.position.x},       {"y", r.position.y},   {"heading_deg", r.heading * kRadToDeg},
                  {"speed", r.speed},         {"radius", r.radius}, {"v_max", r.v_max},
                  {"a_max", r.a_max},         {"omega_max_deg", r.omega_max * kRadToDeg}};

  doc["goals"] = ordered_json::array();
  for (const auto& g : s.goals) {
    doc["goals"].push_back({{"id", g.id}, {"x", g.position.x}, {"y", g.position.y}, {"is_target", g.is_target}});
  }
  doc["observers"] = ordered_json::array();
  for (const auto& o : s.observers) {
    ordered_json j = {{"id", o.id},
                      {"x", o.position.x},
                      {"y", o.position.y},
                      {"heading_deg", o.heading * kRadToDeg},
                      {"fov_deg", o.fov * kRadToDeg}};
    if (o.attached_goal) j["attached_goal"] = *o.attached_goal;
    doc["observers"].push_back(std::move(j));
  }
  doc["obstacles"] = ordered_json::array();
  for (const auto& obstacle : s.obstacles) {
    if (const auto* c = std::get_if<Circle>(&obstacle)) {
      doc["obstacles"].push_back({{"type", "circle"}, {"x", c->center.x}, {"y", c->center.y}, {"radius", c->radius}});
    } else {
      const auto& rect = std::get<Rect>(obstacle);
      doc["obstacles"].push_back({{"type", "rect"},
                                  {"min_x", rect.min.x},
                                  {"min_y", rect.min.y},
                                  {"max_x", rect.max.x},
                                  {"max_y", rect.max.y}});
    }
  }

  const PlannerParams& p = s.planner;
  ordered_json planner = {{"dt", p.dt},
                          {"horizon_w", p.horizon_w},
                          {"mode", to_string(p.mode)},
                          {"cem_population", p.cem_population},
                          {"cem_elites", p.cem_elites},
                          {"cem_iterations", p.cem_iterations}};
  if (p.cem_init_std_v) planner["cem_init_std_v"] = *p.cem_init_std_v;
  if (p.cem_init_std_omega) planner["cem_init_std_omega_deg"] = *p.cem_init_std_omega * kRadToDeg;
  planner["execute_steps"] = p.execute_steps;
  planner["goal_tolerance"] = p.goal_tolerance;
  planner["max_cycles"] = p.max_cycles;
  doc["planner"] = std::move(planner);

  const LegibilityParams& l = s.legibility;
  doc["legibility"] = {
      {"lambda_sim", l.lambda_sim}, {"lambda_fov", l.lambda_fov}, {"h_max", l.h_max}, {"eps_v", l.eps_v}};

  const TaskCostWeights& w = s.task_weights;
  ordered_json weights = {{"w_goal", w.w_goal},         {"w_clearance", w.w_clearance}, {"w_approach", w.w_approach},
                          {"w_smooth", w.w_smooth},     {"w_speed", w.w_speed},         {"d_safe", w.d_safe}};
  if (w.v_pref) weights["v_pref"] = *w.v_pref;
  doc["task_weights"] = std::move(weights);
  return doc;
}

ordered_json to_json(const CostBreakdown& b) {
  return {{"goal_term", b.goal_term},   {"clearance_term", b.clearance_term}, {"approach_term", b.approach_term},
          {"smooth_term", b.smooth_term}, {"speed_term", b.speed_term},       {"sim_term", b.sim_term},
          {"fov_term", b.fov_term},     {"total", b.total},                   {"collided", b.collided}};
}

ordered_json to_json(const LegibilityReport& report) {
  ordered_json partials = ordered_json::array();
  for (std::size_t k = 0; k < report.correctness.size(); ++k) {
    ordered_json posterior = ordered_json::object();
    for (const auto& [id, p] : report.posteriors[k]) posterior[id] = p;
    partials.push_back({{"fraction", report.partial_fractions[k]},
                        {"correctness", report.correctness[k]},
                        {"argmax_correct", report.argmax_correct[k] != 0},
                        {"posterior", std::move(posterior)}});
  }
  return {{"mode", to_string(report.mode)}, {"score", report.score}, {"partials", std::move(partials)}};
}

std::vector<LogRow> make_log_rows(const Trajectory& traj, std::span<const double> headings,
                                  std::span<const Control> controls, const ScenarioSpec& scenario) {
  if (headings.size() != traj.size() || controls.size() != traj.size()) {
    throw ContractViolation("log rows need one heading and one control per waypoint");
  }
  std::vector<LogRow> rows;
  rows.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    rows.push_back({static_cast<double>(i) * traj.dt(), traj[i], headings[i], controls[i].v, controls[i].omega,
                    clearance(traj[i], scenario.obstacles) - scenario.robot.radius});
  }
  return rows;
}

std::string format_trajectory_log(std::span<const LogRow> rows) {
  std::string out(kTrajectoryLogHeader);
  out += '\n';
  for (const auto& row : rows) {
    out += format_number("%.6f", row.t);
    for (double v : {row.position.x, row.position.y, row.heading, row.v, row.omega, row.clearance}) {
      out += ',';
      out += format_number("%.9g", v);
    }
    out += '\n';
  }
  return out;
}

void write_trajectory_log(std::ostream& out, std::span<const LogRow> rows) { out << format_trajectory_log(rows); }

std::vector<LogRow> parse_trajectory_log(std::string_view text) {
  std::vector<std::string> lines;
  std::string line;
  for (char ch : text) {
    if (ch == '\n') {
      lines.push_back(std::move(line));
      line.clear();
    } else if (ch != '\r') {
      line += ch;
    }
  }
  if (!line.empty()) lines.push_back(std::move(line));
  if (lines.empty() || lines.front() != kTrajectoryLogHeader) {
    throw ValidationError("trajectory", "header must be " + std::string(kTrajectoryLogHeader));
  }

  std::vector<LogRow> rows;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    if (lines[n].empty()) continue;
    const std::string where = "trajectory line " + std::to_string(n + 1);
    double fields[7];
    std::size_t count = 0;
    std::size_t pos = 0;
    while (pos <= lines[n].size()) {
      const std::size_t comma = std::min(lines[n].find(',', pos), lines[n].size());
      if (count == 7) throw ValidationError(where, "expected 7 fields");
      const std::string cell = lines[n].substr(pos, comma - pos);
      char* end = nullptr;
      fields[count] = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size() || !std::isfinite(fields[count])) {
        throw ValidationError(where, "field is not a finite number", cell);
      }
      ++count;
      pos = comma + 1;
    }
    if (count != 7) throw ValidationError(where, "expected 7 fields");
    LogRow row{fields[0], {fields[1], fields[2]}, fields[3], fields[4], fields[5], fields[6]};
    if (!rows.empty() && !(row.t > rows.back().t)) throw ValidationError(where, "time must strictly increase");
    rows.push_back(row);
  }
  if (rows.size() < 2) throw ValidationError("trajectory", "at least two rows required");
  return rows;
}

Trajectory trajectory_from_log(std::span<const LogRow> rows) {
  if (rows.size() < 2) throw ContractViolation("trajectory log needs at least two rows");
  const double dt = std::round((rows[1].t - rows[0].t) * 1e6) / 1e6;
  std::vector<Point2> waypoints;
  waypoints.reserve(rows.size());
  for (const auto& row : rows) waypoints.push_back(row.position);
  return Trajectory(std::move(waypoints), dt);
}

}  // namespace legiplan
