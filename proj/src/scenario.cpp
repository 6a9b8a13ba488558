#include "teleop/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "teleop/errors.hpp"

namespace teleop::mission {

using nlohmann::json;

namespace {

/// Reads one JSON object, tracking which keys were consumed.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ParseError(where(), "expected an object");
  }

  std::string where() const { return path_.empty() ? "/" : path_; }
  std::string field(const std::string& key) const { return path_ + "/" + key; }

  void read(const char* key, double& out) {
    if (const json* v = take(key)) {
      if (!v->is_number()) throw ParseError(field(key), "expected a number");
      out = v->get<double>();
      if (!std::isfinite(out)) throw ParseError(field(key), "must be finite");
    }
  }
  void read(const char* key, int& out) {
    if (const json* v = take(key)) {
      if (!v->is_number_integer()) throw ParseError(field(key), "expected an integer");
      out = v->get<int>();
    }
  }
  void read(const char* key, std::uint64_t& out) {
    if (const json* v = take(key)) {
      if (!v->is_number_unsigned()) throw ParseError(field(key), "expected a non-negative integer");
      out = v->get<std::uint64_t>();
    }
  }
  void read(const char* key, bool& out) {
    if (const json* v = take(key)) {
      if (!v->is_boolean()) throw ParseError(field(key), "expected true or false");
      out = v->get<bool>();
    }
  }
  void read(const char* key, std::string& out) {
    if (const json* v = take(key)) {
      if (!v->is_string()) throw ParseError(field(key), "expected a string");
      out = v->get<std::string>();
    }
  }
  template <class T>
  void require(const char* key, T& out) {
    if (!j_.contains(key)) throw ParseError(field(key), "required field missing");
    read(key, out);
  }

  const json* take(const char* key) {
    auto it = j_.find(key);
    if (it == j_.end()) return nullptr;
    seen_.insert(key);
    return &*it;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.contains(it.key())) throw ParseError(field(it.key()), "unknown field");
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

template <class Fn>
void section(ObjectReader& parent, const char* key, Fn&& fn) {
  if (const json* v = parent.take(key)) {
    ObjectReader r(*v, parent.field(key));
    fn(r);
    r.finish();
  }
}

void read_pid(ObjectReader& r, autonomy::PidGains& g) {
  r.read("kp", g.kp);
  r.read("ki", g.ki);
  r.read("kd", g.kd);
  r.read("integral_limit", g.integral_limit);
  r.read("output_limit", g.output_limit);
  r.read("derivative_filter", g.derivative_filter);
}

json pid_json(const autonomy::PidGains& g) {
  return {{"kp", g.kp},
          {"ki", g.ki},
          {"kd", g.kd},
          {"integral_limit", g.integral_limit},
          {"output_limit", g.output_limit},
          {"derivative_filter", g.derivative_filter}};
}

Gate read_gate(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  Gate g;
  r.require("id", g.id);
  r.require("order", g.order);
  if (!j.contains("center")) throw ParseError(r.field("center"), "required field missing");
  section(r, "center", [&](ObjectReader& c) {
    c.require("x", g.center.x);
    c.require("y", g.center.y);
    c.require("z", g.center.z);
  });
  if (!j.contains("normal")) throw ParseError(r.field("normal"), "required field missing");
  section(r, "normal", [&](ObjectReader& n) {
    n.require("x", g.normal_x);
    n.require("y", g.normal_y);
  });
  if (!j.contains("shape")) throw ParseError(r.field("shape"), "required field missing");
  section(r, "shape", [&](ObjectReader& s) {
    std::string type;
    s.require("type", type);
    if (type == "circle") {
      Circle c;
      s.require("radius", c.radius);
      g.shape = c;
    } else if (type == "rectangle") {
      Rectangle rect;
      s.require("width", rect.width);
      s.require("height", rect.height);
      g.shape = rect;
    } else {
      throw ParseError(s.field("type"), "shape type must be 'circle' or 'rectangle'");
    }
  });
  r.finish();
  return g;
}

json gate_json(const Gate& g) {
  json shape;
  if (const auto* c = std::get_if<Circle>(&g.shape))
    shape = {{"type", "circle"}, {"radius", c->radius}};
  else {
    const auto& rect = std::get<Rectangle>(g.shape);
    shape = {{"type", "rectangle"}, {"width", rect.width}, {"height", rect.height}};
  }
  return {{"id", g.id},
          {"order", g.order},
          {"center", {{"x", g.center.x}, {"y", g.center.y}, {"z", g.center.z}}},
          {"normal", {{"x", g.normal_x}, {"y", g.normal_y}}},
          {"shape", shape}};
}

template <class Fn>
void rethrow_at(const std::string& location, Fn&& fn) {
  try {
    fn();
  } catch (const ContractViolation& e) {
    throw ParseError(location, e.what());
  }
}

}  // namespace

void Scenario::validate() const {
  rethrow_at("/environment", [&] { environment.validate(); });
  rethrow_at("/vehicle", [&] { vehicle.validate(); });
  rethrow_at("/allocation", [&] { allocation.validate(); });
  rethrow_at("/gains", [&] { gains.validate(); });
  rethrow_at("/link", [&] { link.validate(); });
  rethrow_at("/pilot", [&] { pilot.validate(); });

  if (!(time_limit > 0.0)) throw ParseError("/time_limit", "must be > 0");
  if (!(dt > 0.0) || from_seconds(dt).count() <= 0) throw ParseError("/dt", "must be > 0 and >= 1 microsecond");
  if (log_decimation < 1) throw ParseError("/log_decimation", "must be >= 1");
  if (!(miss_near_factor > 1.0)) throw ParseError("/miss_near_factor", "must be > 1");
  if (gates.empty()) throw ParseError("/gates", "at least one gate required");

  const double sx = start.x, sy = start.y, sz = start.z;
  if (sx < 0 || sx > environment.pool_x || sy < 0 || sy > environment.pool_y || sz < 0 ||
      sz > environment.pool_depth)
    throw ParseError("/start", "start pose outside pool");

  std::set<int> ids;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    const std::string at = "/gates/" + std::to_string(i);
    const std::string name = "gate " + std::to_string(g.id);
    if (!ids.insert(g.id).second) throw ParseError(at + "/id", "duplicate " + name);
    if (g.order != static_cast<int>(i) + 1)
      throw ParseError(at + "/order", name + ": order values must form the sequence 1..N");
    if (std::abs(std::hypot(g.normal_x, g.normal_y) - 1.0) > 1e-6)
      throw ParseError(at + "/normal", name + ": normal must be a unit vector");
    if (!(g.half_width() > 0.0 && g.half_height() > 0.0))
      throw ParseError(at + "/shape", name + ": aperture dimensions must be > 0");

    const double hw = g.half_width();
    const double tx = -g.normal_y, ty = g.normal_x;
    const double eps = 1e-9;
    for (double side : {-1.0, 1.0}) {
      const double ex = g.center.x + side * hw * tx;
      const double ey = g.center.y + side * hw * ty;
      if (ex < -eps || ex > environment.pool_x + eps || ey < -eps || ey > environment.pool_y + eps)
        throw ParseError(at, name + " aperture extends outside the pool");
    }
    if (g.center.z - g.half_height() < -eps || g.center.z + g.half_height() > environment.pool_depth + eps)
      throw ParseError(at, name + " aperture extends outside the pool depth");
  }

  // Gates sharing a plane (e.g. two apertures stacked one above the other) must not overlap.
  for (std::size_t i = 0; i < gates.size(); ++i)
    for (std::size_t j = i + 1; j < gates.size(); ++j) {
      const Gate& a = gates[i];
      const Gate& b = gates[j];
      const bool parallel = std::abs(a.normal_x * b.normal_y - a.normal_y * b.normal_x) < 1e-9;
      if (!parallel || std::abs(a.signed_distance(b.center)) > 1e-6) continue;
      const double dl = std::abs(a.lateral(b.center));
      const double dv = std::abs(a.center.z - b.center.z);
      if (dl < a.half_width() + b.half_width() && dv < a.half_height() + b.half_height())
        throw ParseError("/gates/" + std::to_string(j),
                         "gate " + std::to_string(b.id) + " overlaps gate " + std::to_string(a.id));
    }
}

Scenario parse_scenario(const std::string& json_text, const std::string& source) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, std::string("malformed JSON: ") + e.what());
  }

  Scenario s;
  try {
    ObjectReader r(j, "");
    r.read("name", s.name);
    section(r, "environment", [&](ObjectReader& e) {
      auto& env = s.environment;
      section(e, "pool", [&](ObjectReader& p) {
        p.read("x", env.pool_x);
        p.read("y", env.pool_y);
        p.read("depth", env.pool_depth);
      });
      section(e, "current", [&](ObjectReader& c) {
        c.read("x", env.current_x);
        c.read("y", env.current_y);
      });
      e.read("water_density", env.water_density);
      section(e, "noise", [&](ObjectReader& n) {
        n.read("depth", env.sigma_depth);
        n.read("heading", env.sigma_heading);
        n.read("yaw_rate", env.sigma_yaw_rate);
      });
      e.read("rng_seed", env.rng_seed);
    });
    section(r, "anomaly", [&](ObjectReader& a) {
      a.read("constant_bias", s.anomaly.constant_bias);
      section(a, "spatial_gradient", [&](ObjectReader& g) {
        g.read("x", s.anomaly.gradient_x);
        g.read("y", s.anomaly.gradient_y);
      });
    });
    section(r, "vehicle", [&](ObjectReader& v) {
      auto& p = s.vehicle;
      v.read("mass", p.mass);
      v.read("length", p.length);
      v.read("yaw_inertia", p.yaw_inertia);
      section(v, "linear_drag", [&](ObjectReader& d) {
        d.read("surge", p.drag_surge_linear);
        d.read("heave", p.drag_heave_linear);
        d.read("yaw", p.drag_yaw_linear);
      });
      section(v, "quadratic_drag", [&](ObjectReader& d) {
        d.read("surge", p.drag_surge_quadratic);
        d.read("heave", p.drag_heave_quadratic);
        d.read("yaw", p.drag_yaw_quadratic);
      });
      v.read("max_motor_thrust", p.max_motor_thrust);
      v.read("buoyancy_residual", p.buoyancy_residual);
    });
    section(r, "allocation", [&](ObjectReader& a) {
      auto& c = s.allocation;
      a.read("lateral_offset", c.lateral_offset);
      a.read("max_motor_thrust", c.max_motor_thrust);
      a.read("slow_force", c.slow_force);
      a.read("max_force", c.max_force);
      a.read("depth_step", c.depth_step);
    });
    section(r, "gains", [&](ObjectReader& g) {
      section(g, "depth", [&](ObjectReader& p) { read_pid(p, s.gains.depth); });
      g.read("heading_kp", s.gains.heading_kp);
      g.read("max_yaw_rate", s.gains.max_yaw_rate);
      section(g, "yaw_rate", [&](ObjectReader& p) { read_pid(p, s.gains.yaw_rate); });
    });
    section(r, "link", [&](ObjectReader& l) {
      auto& c = s.link;
      l.read("slot_interval", c.slot_interval);
      l.read("loss_prob", c.loss_prob);
      l.read("delay_mean", c.delay_mean);
      l.read("delay_var", c.delay_var);
      l.read("delay_min", c.delay_min);
      l.read("rng_seed", c.rng_seed);
      l.read("repeat_last", c.repeat_last);
    });
    section(r, "pilot", [&](ObjectReader& p) {
      auto& c = s.pilot;
      p.read("input_rate", c.input_rate);
      p.read("alignment_tolerance", c.alignment_tolerance);
      p.read("approach_slow_radius", c.approach_slow_radius);
      p.read("depth_deadband", c.depth_deadband);
      p.read("approach_offset", c.approach_offset);
      p.read("lookahead", c.lookahead);
      p.read("lateral_tolerance", c.lateral_tolerance);
      p.read("depth_tolerance", c.depth_tolerance);
      p.read("compass_offset", c.compass_offset);
    });
    if (const json* gates = r.take("gates")) {
      if (!gates->is_array()) throw ParseError("/gates", "expected an array");
      for (std::size_t i = 0; i < gates->size(); ++i)
        s.gates.push_back(read_gate((*gates)[i], "/gates/" + std::to_string(i)));
    }
    section(r, "start", [&](ObjectReader& p) {
      p.read("x", s.start.x);
      p.read("y", s.start.y);
      p.read("z", s.start.z);
      p.read("psi", s.start.psi);
    });
    r.read("time_limit", s.time_limit);
    r.read("dt", s.dt);
    r.read("log_decimation", s.log_decimation);
    r.read("miss_near_factor", s.miss_near_factor);
    r.finish();

    std::stable_sort(s.gates.begin(), s.gates.end(), [](const Gate& a, const Gate& b) { return a.order < b.order; });
    s.validate();
  } catch (const ParseError& e) {
    throw ParseError(source + ":" + e.location(), e.message());
  }
  return s;
}

std::string scenario_to_json(const Scenario& s) {
  const auto& env = s.environment;
  const auto& v = s.vehicle;
  json gates = json::array();
  for (const auto& g : s.gates) gates.push_back(gate_json(g));
  json j = {
      {"name", s.name},
      {"environment",
       {{"pool", {{"x", env.pool_x}, {"y", env.pool_y}, {"depth", env.pool_depth}}},
        {"current", {{"x", env.current_x}, {"y", env.current_y}}},
        {"water_density", env.water_density},
        {"noise", {{"depth", env.sigma_depth}, {"heading", env.sigma_heading}, {"yaw_rate", env.sigma_yaw_rate}}},
        {"rng_seed", env.rng_seed}}},
      {"anomaly",
       {{"constant_bias", s.anomaly.constant_bias},
        {"spatial_gradient", {{"x", s.anomaly.gradient_x}, {"y", s.anomaly.gradient_y}}}}},
      {"vehicle",
       {{"mass", v.mass},
        {"length", v.length},
        {"yaw_inertia", v.yaw_inertia},
        {"linear_drag", {{"surge", v.drag_surge_linear}, {"heave", v.drag_heave_linear}, {"yaw", v.drag_yaw_linear}}},
        {"quadratic_drag",
         {{"surge", v.drag_surge_quadratic}, {"heave", v.drag_heave_quadratic}, {"yaw", v.drag_yaw_quadratic}}},
        {"max_motor_thrust", v.max_motor_thrust},
        {"buoyancy_residual", v.buoyancy_residual}}},
      {"allocation",
       {{"lateral_offset", s.allocation.lateral_offset},
        {"max_motor_thrust", s.allocation.max_motor_thrust},
        {"slow_force", s.allocation.slow_force},
        {"max_force", s.allocation.max_force},
        {"depth_step", s.allocation.depth_step}}},
      {"gains",
       {{"depth", pid_json(s.gains.depth)},
        {"heading_kp", s.gains.heading_kp},
        {"max_yaw_rate", s.gains.max_yaw_rate},
        {"yaw_rate", pid_json(s.gains.yaw_rate)}}},
      {"link",
       {{"slot_interval", s.link.slot_interval},
        {"loss_prob", s.link.loss_prob},
        {"delay_mean", s.link.delay_mean},
        {"delay_var", s.link.delay_var},
        {"delay_min", s.link.delay_min},
        {"rng_seed", s.link.rng_seed},
        {"repeat_last", s.link.repeat_last}}},
      {"pilot",
       {{"input_rate", s.pilot.input_rate},
        {"alignment_tolerance", s.pilot.alignment_tolerance},
        {"approach_slow_radius", s.pilot.approach_slow_radius},
        {"depth_deadband", s.pilot.depth_deadband},
        {"approach_offset", s.pilot.approach_offset},
        {"lookahead", s.pilot.lookahead},
        {"lateral_tolerance", s.pilot.lateral_tolerance},
        {"depth_tolerance", s.pilot.depth_tolerance},
        {"compass_offset", s.pilot.compass_offset}}},
      {"gates", gates},
      {"start", {{"x", s.start.x}, {"y", s.start.y}, {"z", s.start.z}, {"psi", s.start.psi}}},
      {"time_limit", s.time_limit},
      {"dt", s.dt},
      {"log_decimation", s.log_decimation},
      {"miss_near_factor", s.miss_near_factor},
  };
  return j.dump(2) + "\n";
}

std::filesystem::path bundled_scenario_dir() { return TELEOP_SCENARIO_DIR; }

Scenario load_scenario(const std::string& path_or_name) {
  std::filesystem::path path(path_or_name);
  if (!std::filesystem::exists(path)) {
    const auto bundled = bundled_scenario_dir() / (path_or_name + ".json");
    if (!std::filesystem::exists(bundled)) throw ParseError(path_or_name, "no such scenario file or bundled scenario");
    path = bundled;
  }
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ParseError(path.string(), "cannot open");
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_scenario(ss.str(), path.string());
}

void write_scenario(const Scenario& s, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("cannot write " + path.string());
  os << scenario_to_json(s);
}

}  // namespace teleop::mission
