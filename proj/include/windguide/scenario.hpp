#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "windguide/sim.hpp"
#include "windguide/types.hpp"
#include "windguide/wind.hpp"

namespace windguide::scenario {

enum class OutputFormat { Csv, JsonLines };

/// Initial airspeed given as magnitude plus heading (degrees, measured from
/// +x); the ground velocity is derived by adding the local wind at r0.
struct Airspeed0 {
  double speed{};
  double heading_deg{};
};

/// On-disk mirror of the solver inputs. Exactly one of vg0 / airspeed0 is
/// given. Parsing rejects unknown keys and reports errors with field paths.
struct Scenario {
  ProblemKind kind{ProblemKind::Rendezvous};
  Vec3 r0;
  Vec3 rf;
  std::optional<Vec3> vg0;
  std::optional<Airspeed0> airspeed0;
  std::optional<Vec3> vgf;  // required for rendezvous, forbidden for intercept
  double c_i{};
  WindModel wind{ConstantWind{}};
  sim::SimConfig sim_config;
  bool sim_config_present{};  // whether the file carried a "sim" block
  std::optional<OutputFormat> output_format;

  /// Boundary conditions with vg0 resolved (airspeed0 + wind at r0 if needed).
  BoundaryConditions boundary_conditions() const;
};

class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);

/// Deterministic serialization: fixed key order, shortest round-trip
/// numbers. parse(serialize(s)) followed by serialize is byte-identical.
std::string serialize_scenario(const Scenario& s);

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

}  // namespace windguide::scenario
