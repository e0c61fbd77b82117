#include "windguide/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "windguide/errors.hpp"

namespace windguide::scenario {

namespace {

using json = nlohmann::ordered_json;

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ScenarioError(path + ": " + what);
}

void reject_unknown_keys(const json& obj, const std::string& path,
                         const std::set<std::string>& allowed) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) fail(path + "." + item.key(), "unknown key");
  }
}

double get_number(const json& obj, const std::string& path) {
  if (!obj.is_number()) fail(path, "expected a number");
  const double v = obj.get<double>();
  if (!std::isfinite(v)) fail(path, "must be finite");
  return v;
}

double get_number_field(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.contains(key)) fail(path + "." + key, "missing required field");
  return get_number(obj.at(key), path + "." + key);
}

Vec3 get_vec3(const json& obj, const std::string& path) {
  if (!obj.is_array() || obj.size() != 3) fail(path, "expected an array of 3 numbers");
  return {get_number(obj[0], path + "[0]"), get_number(obj[1], path + "[1]"),
          get_number(obj[2], path + "[2]")};
}

Vec3 get_vec3_field(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.contains(key)) fail(path + "." + key, "missing required field");
  return get_vec3(obj.at(key), path + "." + key);
}

SpatialFieldWind::Poly2 get_poly2(const json& obj, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object of polynomial coefficients");
  reject_unknown_keys(obj, path, {"c00", "c10", "c01", "c20", "c11", "c02"});
  SpatialFieldWind::Poly2 p;
  if (obj.contains("c00")) p.c00 = get_number(obj.at("c00"), path + ".c00");
  if (obj.contains("c10")) p.c10 = get_number(obj.at("c10"), path + ".c10");
  if (obj.contains("c01")) p.c01 = get_number(obj.at("c01"), path + ".c01");
  if (obj.contains("c20")) p.c20 = get_number(obj.at("c20"), path + ".c20");
  if (obj.contains("c11")) p.c11 = get_number(obj.at("c11"), path + ".c11");
  if (obj.contains("c02")) p.c02 = get_number(obj.at("c02"), path + ".c02");
  return p;
}

WindModel parse_wind(const json& obj, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  if (!obj.contains("type")) fail(path + ".type", "missing required field");
  if (!obj.at("type").is_string()) fail(path + ".type", "expected a string");
  const std::string type = obj.at("type").get<std::string>();

  if (type == "constant") {
    reject_unknown_keys(obj, path, {"type", "w0"});
    ConstantWind w;
    if (obj.contains("w0")) w.w0 = get_vec3(obj.at("w0"), path + ".w0");
    return w;
  }
  if (type == "linear_in_time") {
    reject_unknown_keys(obj, path, {"type", "w0", "k"});
    LinearInTimeWind w;
    if (obj.contains("w0")) w.w0 = get_vec3(obj.at("w0"), path + ".w0");
    w.k = get_vec3_field(obj, path, "k");
    return w;
  }
  if (type == "cross_track_shear") {
    reject_unknown_keys(obj, path, {"type", "k_shear"});
    return CrossTrackShearWind{get_number_field(obj, path, "k_shear")};
  }
  if (type == "piecewise_linear") {
    reject_unknown_keys(obj, path, {"type", "segments"});
    if (!obj.contains("segments") || !obj.at("segments").is_array())
      fail(path + ".segments", "expected an array of segments");
    PiecewiseLinearWind w;
    std::size_t i = 0;
    for (const auto& seg : obj.at("segments")) {
      const std::string spath = path + ".segments[" + std::to_string(i++) + "]";
      if (!seg.is_object()) fail(spath, "expected an object");
      reject_unknown_keys(seg, spath, {"t_start", "w0", "k"});
      PiecewiseLinearWind::Segment s;
      s.t_start = get_number_field(seg, spath, "t_start");
      s.w0 = get_vec3_field(seg, spath, "w0");
      if (seg.contains("k")) s.k = get_vec3(seg.at("k"), spath + ".k");
      w.segments.push_back(s);
    }
    return w;
  }
  if (type == "spatial_field") {
    reject_unknown_keys(obj, path, {"type", "wx", "wy"});
    SpatialFieldWind w;
    if (obj.contains("wx")) w.wx = get_poly2(obj.at("wx"), path + ".wx");
    if (obj.contains("wy")) w.wy = get_poly2(obj.at("wy"), path + ".wy");
    return w;
  }
  fail(path + ".type",
       "unknown wind type '" + type +
           "' (expected constant, linear_in_time, cross_track_shear, piecewise_linear or "
           "spatial_field)");
}

sim::GuidanceLaw parse_law(const json& obj, const std::string& path) {
  if (!obj.is_string()) fail(path, "expected a string");
  const std::string s = obj.get<std::string>();
  if (s == "open_loop") return sim::GuidanceLaw::OpenLoop;
  if (s == "zem_zev") return sim::GuidanceLaw::ZemZev;
  if (s == "adaptive_piecewise") return sim::GuidanceLaw::AdaptivePiecewise;
  fail(path, "unknown law '" + s + "' (expected open_loop, zem_zev or adaptive_piecewise)");
}

json vec3_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

json poly2_to_json(const SpatialFieldWind::Poly2& p) {
  json o = json::object();
  o["c00"] = p.c00;
  o["c10"] = p.c10;
  o["c01"] = p.c01;
  o["c20"] = p.c20;
  o["c11"] = p.c11;
  o["c02"] = p.c02;
  return o;
}

json wind_to_json(const WindModel& wind) {
  json o = json::object();
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ConstantWind>) {
          o["type"] = "constant";
          o["w0"] = vec3_to_json(m.w0);
        } else if constexpr (std::is_same_v<T, LinearInTimeWind>) {
          o["type"] = "linear_in_time";
          o["w0"] = vec3_to_json(m.w0);
          o["k"] = vec3_to_json(m.k);
        } else if constexpr (std::is_same_v<T, CrossTrackShearWind>) {
          o["type"] = "cross_track_shear";
          o["k_shear"] = m.k_shear;
        } else if constexpr (std::is_same_v<T, PiecewiseLinearWind>) {
          o["type"] = "piecewise_linear";
          json segs = json::array();
          for (const auto& s : m.segments) {
            json seg = json::object();
            seg["t_start"] = s.t_start;
            seg["w0"] = vec3_to_json(s.w0);
            seg["k"] = vec3_to_json(s.k);
            segs.push_back(seg);
          }
          o["segments"] = segs;
        } else {
          o["type"] = "spatial_field";
          o["wx"] = poly2_to_json(m.wx);
          o["wy"] = poly2_to_json(m.wy);
        }
      },
      wind);
  return o;
}

}  // namespace

BoundaryConditions Scenario::boundary_conditions() const {
  Vec3 v0;
  if (vg0) {
    v0 = *vg0;
  } else {
    const double rad = airspeed0->heading_deg * kPi / 180.0;
    const Vec3 va{airspeed0->speed * std::cos(rad), airspeed0->speed * std::sin(rad), 0.0};
    v0 = va + wind_at(wind, 0.0, r0);
  }
  if (kind == ProblemKind::Rendezvous) return BoundaryConditions::rendezvous(r0, rf, v0, *vgf);
  return BoundaryConditions::intercept(r0, rf, v0);
}

Scenario parse_scenario(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const std::exception& e) {
    throw ScenarioError(std::string("scenario: invalid JSON: ") + e.what());
  }
  if (!root.is_object()) fail("scenario", "expected a JSON object");
  reject_unknown_keys(root, "scenario",
                      {"kind", "r0", "rf", "vg0", "airspeed0", "vgf", "c_i", "wind", "sim",
                       "output"});

  Scenario s;
  if (!root.contains("kind")) fail("scenario.kind", "missing required field");
  if (!root.at("kind").is_string()) fail("scenario.kind", "expected a string");
  const std::string kind = root.at("kind").get<std::string>();
  if (kind == "rendezvous") s.kind = ProblemKind::Rendezvous;
  else if (kind == "intercept") s.kind = ProblemKind::Intercept;
  else fail("scenario.kind", "expected \"rendezvous\" or \"intercept\"");

  s.r0 = get_vec3_field(root, "scenario", "r0");
  s.rf = get_vec3_field(root, "scenario", "rf");

  if (root.contains("vg0") == root.contains("airspeed0"))
    fail("scenario", "exactly one of vg0 and airspeed0 must be given");
  if (root.contains("vg0")) s.vg0 = get_vec3(root.at("vg0"), "scenario.vg0");
  if (root.contains("airspeed0")) {
    const auto& a = root.at("airspeed0");
    if (!a.is_object()) fail("scenario.airspeed0", "expected an object");
    reject_unknown_keys(a, "scenario.airspeed0", {"speed", "heading_deg"});
    s.airspeed0 = Airspeed0{get_number_field(a, "scenario.airspeed0", "speed"),
                            get_number_field(a, "scenario.airspeed0", "heading_deg")};
  }

  if (s.kind == ProblemKind::Rendezvous) {
    if (!root.contains("vgf")) fail("scenario.vgf", "required for rendezvous scenarios");
    s.vgf = get_vec3(root.at("vgf"), "scenario.vgf");
  } else if (root.contains("vgf")) {
    fail("scenario.vgf", "forbidden for intercept scenarios (terminal velocity is free)");
  }

  s.c_i = get_number_field(root, "scenario", "c_i");
  if (s.c_i < 0.0) fail("scenario.c_i", "must be >= 0");

  if (!root.contains("wind")) fail("scenario.wind", "missing required field");
  s.wind = parse_wind(root.at("wind"), "scenario.wind");
  try {
    validate(s.wind);
  } catch (const GuidanceError& e) {
    fail("scenario.wind", e.what());
  }

  if (root.contains("sim")) {
    s.sim_config_present = true;
    const auto& cfg = root.at("sim");
    if (!cfg.is_object()) fail("scenario.sim", "expected an object");
    reject_unknown_keys(cfg, "scenario.sim",
                        {"replan_period", "step", "law", "t_go_min_fraction", "max_time",
                         "capture_radius"});
    if (cfg.contains("replan_period"))
      s.sim_config.replan_period = get_number(cfg.at("replan_period"), "scenario.sim.replan_period");
    if (cfg.contains("step")) s.sim_config.step = get_number(cfg.at("step"), "scenario.sim.step");
    if (cfg.contains("law")) s.sim_config.law = parse_law(cfg.at("law"), "scenario.sim.law");
    if (cfg.contains("t_go_min_fraction"))
      s.sim_config.t_go_min_fraction =
          get_number(cfg.at("t_go_min_fraction"), "scenario.sim.t_go_min_fraction");
    if (cfg.contains("max_time"))
      s.sim_config.max_time = get_number(cfg.at("max_time"), "scenario.sim.max_time");
    if (cfg.contains("capture_radius"))
      s.sim_config.capture_radius =
          get_number(cfg.at("capture_radius"), "scenario.sim.capture_radius");
    try {
      sim::validate(s.sim_config);
    } catch (const GuidanceError& e) {
      fail("scenario.sim", e.what());
    }
  }

  if (root.contains("output")) {
    const auto& out = root.at("output");
    if (!out.is_object()) fail("scenario.output", "expected an object");
    reject_unknown_keys(out, "scenario.output", {"format"});
    if (out.contains("format")) {
      if (!out.at("format").is_string()) fail("scenario.output.format", "expected a string");
      const std::string f = out.at("format").get<std::string>();
      if (f == "csv") s.output_format = OutputFormat::Csv;
      else if (f == "json-lines") s.output_format = OutputFormat::JsonLines;
      else fail("scenario.output.format", "expected \"csv\" or \"json-lines\"");
    }
  }

  try {
    if (!is_consistent(s.boundary_conditions()))
      fail("scenario", "inconsistent boundary conditions");
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::exception& e) {
    fail("scenario", e.what());
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("scenario: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
  json root = json::object();
  root["kind"] = s.kind == ProblemKind::Rendezvous ? "rendezvous" : "intercept";
  root["r0"] = vec3_to_json(s.r0);
  root["rf"] = vec3_to_json(s.rf);
  if (s.vg0) root["vg0"] = vec3_to_json(*s.vg0);
  if (s.airspeed0) {
    json a = json::object();
    a["speed"] = s.airspeed0->speed;
    a["heading_deg"] = s.airspeed0->heading_deg;
    root["airspeed0"] = a;
  }
  if (s.vgf) root["vgf"] = vec3_to_json(*s.vgf);
  root["c_i"] = s.c_i;
  root["wind"] = wind_to_json(s.wind);
  if (s.sim_config_present) {
    json cfg = json::object();
    cfg["replan_period"] = s.sim_config.replan_period;
    cfg["step"] = s.sim_config.step;
    cfg["law"] = s.sim_config.law == sim::GuidanceLaw::OpenLoop ? "open_loop"
                 : s.sim_config.law == sim::GuidanceLaw::ZemZev ? "zem_zev"
                                                                : "adaptive_piecewise";
    cfg["t_go_min_fraction"] = s.sim_config.t_go_min_fraction;
    cfg["max_time"] = s.sim_config.max_time;
    cfg["capture_radius"] = s.sim_config.capture_radius;
    root["sim"] = cfg;
  }
  if (s.output_format) {
    json out = json::object();
    out["format"] = *s.output_format == OutputFormat::Csv ? "csv" : "json-lines";
    root["output"] = out;
  }
  return root.dump(2) + "\n";
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace windguide::scenario
