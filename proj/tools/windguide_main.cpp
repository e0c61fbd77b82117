// Command-line front end: scenario files in, deterministic JSON/CSV out.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "windguide/analysis.hpp"
#include "windguide/errors.hpp"
#include "windguide/guidance.hpp"
#include "windguide/scenario.hpp"
#include "windguide/sim.hpp"

namespace {

using json = nlohmann::ordered_json;
using windguide::BoundaryConditions;
using windguide::GuidanceError;
using windguide::ProblemKind;
using windguide::Vec3;
using windguide::WindModel;
using windguide::scenario::format_double;
using windguide::scenario::OutputFormat;
using windguide::scenario::Scenario;

constexpr int kExitValidation = 2;
constexpr int kExitNoSolution = 3;
constexpr int kExitDiverged = 4;

struct GridFlags {
  double min{};
  double max{};
  int steps{};
  bool log_scale{};
};

std::vector<double> make_grid(const GridFlags& g) {
  if (g.steps < 1) throw windguide::scenario::ScenarioError("grid: --steps must be >= 1");
  if (g.steps > 1 && !(g.max >= g.min))
    throw windguide::scenario::ScenarioError("grid: --max must be >= --min");
  std::vector<double> grid;
  if (g.steps == 1) {
    grid.push_back(g.min);
    return grid;
  }
  if (g.log_scale) {
    if (!(g.min > 0.0))
      throw windguide::scenario::ScenarioError("grid: --log needs --min > 0");
    const double ratio = std::log(g.max / g.min);
    for (int i = 0; i < g.steps; ++i)
      grid.push_back(g.min * std::exp(ratio * i / (g.steps - 1)));
  } else {
    for (int i = 0; i < g.steps; ++i)
      grid.push_back(g.min + (g.max - g.min) * i / (g.steps - 1));
  }
  return grid;
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + out_path + "'");
  out << text;
}

json vec3_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

const char* case_name(windguide::polynomial::PolyCase c) {
  using windguide::polynomial::PolyCase;
  switch (c) {
    case PolyCase::RendezvousGeneral: return "rendezvous_general";
    case PolyCase::RendezvousConstWind: return "rendezvous_const_wind";
    case PolyCase::Intercept: return "intercept";
    case PolyCase::Shear: return "shear";
    case PolyCase::ShearConstAirspeed: return "shear_const_airspeed";
  }
  return "unknown";
}

const char* category_name(windguide::analysis::KCategory c) {
  using windguide::analysis::KCategory;
  switch (c) {
    case KCategory::K1_ConstantVelocity: return "constant_velocity_k1";
    case KCategory::K2_ConstantAccel: return "constant_accel_k2";
    case KCategory::K3_ZeroTerminalAccel: return "zero_terminal_accel_k3";
    case KCategory::ReversalKgt3: return "reversal_k_gt_3";
    case KCategory::Intermediate: return "intermediate";
  }
  return "unknown";
}

windguide::guidance::GuidanceSolution solve_scenario(const Scenario& s) {
  const BoundaryConditions bc = s.boundary_conditions();
  if (const auto* shear = std::get_if<windguide::CrossTrackShearWind>(&s.wind))
    return windguide::guidance::solve_shear(bc, shear->k_shear, {s.c_i});
  if (bc.kind == ProblemKind::Rendezvous)
    return windguide::guidance::solve_rendezvous(bc, s.wind, {s.c_i});
  return windguide::guidance::solve_intercept(bc, s.wind, {s.c_i});
}

json classification_json(const BoundaryConditions& bc, double tf) {
  const auto tr = windguide::analysis::reference_time(bc.r0.x - bc.rf.x, bc.vg0.x);
  json c = json::object();
  c["valid"] = tr.valid;
  if (tr.valid) {
    c["t_r"] = tr.t_r;
    if (tf > 0.0) {
      const auto kc = windguide::analysis::classify_k(tf, tr);
      c["k"] = kc.k;
      c["category"] = category_name(kc.category);
    }
  }
  return c;
}

json solution_json(const windguide::guidance::GuidanceSolution& sol) {
  json doc = json::object();
  doc["case"] = case_name(sol.case_tag);
  doc["degenerate"] = sol.degenerate;
  doc["tf"] = sol.tf;
  doc["cost"] = sol.cost;
  doc["energy"] = windguide::guidance::energy(sol);
  json cs = json::object();
  cs["p_r"] = vec3_json(sol.costates.p_r);
  cs["p_v0"] = vec3_json(sol.costates.p_v0);
  doc["costates"] = cs;
  doc["terminal_velocity"] = vec3_json(windguide::guidance::terminal_velocity(sol));
  json roots = json::object();
  roots["all_real"] = sol.roots.all_real_roots;
  json adm = json::array();
  for (const auto& a : sol.roots.admissible) {
    json e = json::object();
    e["tf"] = a.tf;
    e["cost"] = a.cost;
    e["is_local_min"] = a.is_local_min;
    adm.push_back(e);
  }
  roots["admissible"] = adm;
  json crit = json::array();
  for (const auto& c : sol.roots.critical) {
    json e = json::object();
    e["tf"] = c.tf;
    e["cost"] = c.cost;
    e["is_local_min"] = c.is_local_min;
    crit.push_back(e);
  }
  roots["critical"] = crit;
  if (sol.roots.global_best) roots["global_best_index"] = *sol.roots.global_best;
  doc["roots"] = roots;
  doc["classification"] = classification_json(sol.bc, sol.tf);
  return doc;
}

int cmd_solve(const std::string& scenario_path, const std::string& out_path) {
  const Scenario s = windguide::scenario::load_scenario(scenario_path);
  const auto sol = solve_scenario(s);
  write_output(out_path, solution_json(sol).dump(2) + "\n");
  return 0;
}

int cmd_classify(const std::string& scenario_path, const std::string& out_path) {
  const Scenario s = windguide::scenario::load_scenario(scenario_path);
  const auto sol = solve_scenario(s);
  json doc = json::object();
  doc["tf"] = sol.tf;
  doc["classification"] = classification_json(sol.bc, sol.tf);
  write_output(out_path, doc.dump(2) + "\n");
  return 0;
}

std::string trajectory_csv(const windguide::sim::TrajectoryLog& log) {
  std::ostringstream out;
  out << "t,x,y,z,vgx,vgy,vgz,vax,vay,vaz,wx,wy,wz,ux,uy,uz,H,ci_eff\n";
  const auto row3 = [&](const Vec3& v) {
    out << ',' << format_double(v.x) << ',' << format_double(v.y) << ',' << format_double(v.z);
  };
  for (const auto& s : log.samples) {
    out << format_double(s.t);
    row3(s.r);
    row3(s.v_g);
    row3(s.v_a);
    row3(s.w);
    row3(s.u);
    out << ',' << format_double(s.hamiltonian) << ',' << format_double(s.c_i_effective) << '\n';
  }
  out << "# t_arrival=" << format_double(log.summary.t_arrival) << '\n';
  out << "# position_error=" << format_double(log.summary.position_error) << '\n';
  out << "# velocity_error=" << format_double(log.summary.velocity_error) << '\n';
  out << "# energy=" << format_double(log.summary.energy) << '\n';
  out << "# cost=" << format_double(log.summary.cost) << '\n';
  for (const auto& e : log.events) out << "# event: " << e << '\n';
  return out.str();
}

json summary_json(const windguide::sim::TrajectorySummary& s) {
  json o = json::object();
  o["t_arrival"] = s.t_arrival;
  o["position_error"] = s.position_error;
  o["velocity_error"] = s.velocity_error;
  o["energy"] = s.energy;
  o["cost"] = s.cost;
  return o;
}

std::string trajectory_json_lines(const windguide::sim::TrajectoryLog& log) {
  std::ostringstream out;
  for (const auto& s : log.samples) {
    json o = json::object();
    o["t"] = s.t;
    o["r"] = vec3_json(s.r);
    o["v_g"] = vec3_json(s.v_g);
    o["v_a"] = vec3_json(s.v_a);
    o["w"] = vec3_json(s.w);
    o["u"] = vec3_json(s.u);
    o["H"] = s.hamiltonian;
    o["ci_eff"] = s.c_i_effective;
    out << o.dump() << '\n';
  }
  json tail = json::object();
  tail["summary"] = summary_json(log.summary);
  tail["events"] = log.events;
  out << tail.dump() << '\n';
  return out.str();
}

OutputFormat pick_format(const Scenario& s, const std::string& flag) {
  if (flag == "csv") return OutputFormat::Csv;
  if (flag == "json-lines") return OutputFormat::JsonLines;
  if (!flag.empty())
    throw windguide::scenario::ScenarioError("--format: expected csv or json-lines");
  return s.output_format.value_or(OutputFormat::Csv);
}

int cmd_simulate(const std::string& scenario_path, const std::string& out_path,
                 const std::string& format_flag) {
  const Scenario s = windguide::scenario::load_scenario(scenario_path);
  const OutputFormat format = pick_format(s, format_flag);
  const auto log = windguide::sim::run(s.boundary_conditions(), s.wind, {s.c_i}, s.sim_config);
  write_output(out_path,
               format == OutputFormat::Csv ? trajectory_csv(log) : trajectory_json_lines(log));
  if (!out_path.empty()) {
    json meta = json::object();
    meta["tool"] = "windguide";
    meta["command"] = "simulate";
    meta["scenario"] = json::parse(windguide::scenario::serialize_scenario(s));
    meta["summary"] = summary_json(log.summary);
    meta["events"] = log.events;
    std::ofstream side(out_path + ".meta.json", std::ios::binary);
    side << meta.dump(2) << "\n";
  }
  return 0;
}

int cmd_pareto(const std::string& scenario_path, const std::string& out_path,
               const std::string& format_flag, const GridFlags& grid_flags) {
  const Scenario s = windguide::scenario::load_scenario(scenario_path);
  const OutputFormat format = pick_format(s, format_flag);
  const auto grid = make_grid(grid_flags);
  const auto points =
      windguide::analysis::pareto_sweep(s.boundary_conditions(), s.wind, grid);
  std::ostringstream out;
  if (format == OutputFormat::Csv) {
    out << "c_i,branch,t_f,energy,local_min,bifurcation\n";
    for (const auto& p : points) {
      out << format_double(p.c_i) << ',' << p.branch << ',' << format_double(p.t_f) << ','
          << format_double(p.energy) << ',' << (p.is_local_min ? 1 : 0) << ','
          << (p.critical ? 1 : 0) << '\n';
    }
  } else {
    for (const auto& p : points) {
      json o = json::object();
      o["c_i"] = p.c_i;
      o["branch"] = p.branch;
      o["t_f"] = p.t_f;
      o["energy"] = p.energy;
      o["local_min"] = p.is_local_min;
      o["bifurcation"] = p.critical;
      out << o.dump() << '\n';
    }
  }
  write_output(out_path, out.str());
  return 0;
}

int cmd_roots(const std::string& scenario_path, const std::string& out_path,
              const std::string& format_flag, const GridFlags& grid_flags,
              const std::string& sweep_name) {
  const Scenario s = windguide::scenario::load_scenario(scenario_path);
  const OutputFormat format = pick_format(s, format_flag);
  const auto grid = make_grid(grid_flags);

  windguide::analysis::SweepParam param;
  if (sweep_name == "vgy0") param = windguide::analysis::SweepParam::Vgy0;
  else if (sweep_name == "inv_ci") param = windguide::analysis::SweepParam::InvCI;
  else if (sweep_name == "wind_k") param = windguide::analysis::SweepParam::WindK;
  else throw windguide::scenario::ScenarioError("--sweep: expected vgy0, inv_ci or wind_k");

  const BoundaryConditions bc = s.boundary_conditions();
  windguide::analysis::SweepScenario fixed;
  fixed.kind = s.kind;
  fixed.x0 = bc.r0.x - bc.rf.x;
  fixed.v_gx0 = bc.vg0.x;
  fixed.v_gy0 = bc.vg0.y;
  fixed.c_i = s.c_i;
  if (const auto* lin = std::get_if<windguide::LinearInTimeWind>(&s.wind)) fixed.wind_k = lin->k;
  if (bc.vgf) fixed.vgf = *bc.vgf;

  const auto result = windguide::analysis::root_sweep(param, grid, fixed);
  std::ostringstream out;
  if (format == OutputFormat::Csv) {
    out << "param,n_positive,root_index,t_f,t_f_over_tr,bifurcation\n";
    for (const auto& row : result.rows) {
      if (row.positive_roots.empty()) {
        out << format_double(row.param) << ",0,,,," << (row.bifurcation ? 1 : 0) << '\n';
        continue;
      }
      for (std::size_t i = 0; i < row.positive_roots.size(); ++i) {
        out << format_double(row.param) << ',' << row.positive_roots.size() << ',' << i << ','
            << format_double(row.positive_roots[i]) << ',';
        if (i < row.roots_in_tr.size()) out << format_double(row.roots_in_tr[i]);
        out << ',' << (row.bifurcation ? 1 : 0) << '\n';
      }
    }
  } else {
    for (const auto& row : result.rows) {
      json o = json::object();
      o["param"] = row.param;
      o["positive_roots"] = row.positive_roots;
      o["roots_in_tr"] = row.roots_in_tr;
      o["bifurcation"] = row.bifurcation;
      out << o.dump() << '\n';
    }
  }
  write_output(out_path, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"windguide: time/energy-optimal rendezvous and intercept guidance in wind fields"};
  app.require_subcommand(1);

  std::string out_path;
  std::string format_flag;
  long long seed = 0;
  app.add_option("--out", out_path, "Output file (default: stdout)");
  app.add_option("--format", format_flag, "Output format: csv or json-lines");
  app.add_option("--seed", seed,
                 "Reserved for randomized property-test helpers; no effect on solver output");

  std::string scenario_path;
  GridFlags grid;
  std::string sweep_name;

  auto* solve = app.add_subcommand("solve", "Solve a scenario and print the solution document");
  solve->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  solve->fallthrough();

  auto* simulate = app.add_subcommand("simulate", "Integrate the closed-loop trajectory");
  simulate->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  simulate->fallthrough();

  auto* pareto = app.add_subcommand("pareto", "Sweep C_I and emit the time/energy trade-off");
  pareto->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  pareto->add_option("--min", grid.min, "Grid start")->required();
  pareto->add_option("--max", grid.max, "Grid end");
  pareto->add_option("--steps", grid.steps, "Grid point count")->required();
  pareto->add_flag("--log", grid.log_scale, "Logarithmic grid");
  pareto->fallthrough();

  auto* roots = app.add_subcommand("roots", "Sweep a parameter and emit the polynomial roots");
  roots->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  roots->add_option("--sweep", sweep_name, "Sweep parameter: vgy0, inv_ci or wind_k")->required();
  roots->add_option("--min", grid.min, "Grid start")->required();
  roots->add_option("--max", grid.max, "Grid end");
  roots->add_option("--steps", grid.steps, "Grid point count")->required();
  roots->add_flag("--log", grid.log_scale, "Logarithmic grid");
  roots->fallthrough();

  auto* classify = app.add_subcommand("classify", "Classify the optimal flight time (K = tf/t_r)");
  classify->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  classify->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitValidation;
  }

  try {
    if (solve->parsed()) return cmd_solve(scenario_path, out_path);
    if (simulate->parsed()) return cmd_simulate(scenario_path, out_path, format_flag);
    if (pareto->parsed()) return cmd_pareto(scenario_path, out_path, format_flag, grid);
    if (roots->parsed()) return cmd_roots(scenario_path, out_path, format_flag, grid, sweep_name);
    if (classify->parsed()) return cmd_classify(scenario_path, out_path);
  } catch (const windguide::scenario::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const GuidanceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case windguide::Error::NoAdmissibleRoot: return kExitNoSolution;
      case windguide::Error::DivergedBeyondMaxTime: return kExitDiverged;
      default: return kExitValidation;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
