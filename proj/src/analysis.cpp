#include "windguide/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "windguide/errors.hpp"
#include "windguide/guidance.hpp"

namespace windguide::analysis {

namespace {

constexpr double kNamedKTol = 1e-9;

struct Branch {
  int id{};
  double last_tf{};
  double last_motion{};
  bool has_motion{};  // at least one continuation seen (enables the jump threshold)
  bool alive{true};
};

WindModel sweep_wind(const Vec3& k) {
  if (k == Vec3{}) return ConstantWind{};
  return LinearInTimeWind{{}, k};
}

polynomial::TimePolynomial sweep_poly(const SweepScenario& s, double v_gy0, double c_i,
                                      const Vec3& wind_k, bool heading_convention) {
  const Vec3 r0{s.x0, 0.0, 0.0};
  const Vec3 vg0{s.v_gx0, v_gy0, 0.0};
  const WindModel wind = sweep_wind(wind_k);
  if (s.kind == ProblemKind::Rendezvous) {
    const Vec3 vgf = heading_convention ? Vec3{s.v_gx0, -v_gy0, 0.0} : s.vgf;
    const auto bc = BoundaryConditions::rendezvous(r0, {}, vg0, vgf);
    return polynomial::build_rendezvous_poly(bc, wind, {c_i});
  }
  const auto bc = BoundaryConditions::intercept(r0, {}, vg0);
  return polynomial::build_intercept_poly(bc, wind, {c_i});
}

}  // namespace

ReferenceTime reference_time(double x0, double v_gx0) {
  ReferenceTime tr;
  tr.valid = std::isfinite(x0) && std::isfinite(v_gx0) && x0 * v_gx0 < 0.0;
  tr.t_r = tr.valid ? -x0 / v_gx0 : 0.0;
  return tr;
}

KClassification classify_k(double tf, const ReferenceTime& tr) {
  if (!tr.valid)
    throw GuidanceError(Error::InvalidReferenceTime,
                        "reference time needs x0 * v_gx0 < 0 (closing initial velocity)");
  KClassification out;
  out.k = tf / tr.t_r;
  if (std::abs(out.k - 1.0) < kNamedKTol) out.category = KCategory::K1_ConstantVelocity;
  else if (std::abs(out.k - 2.0) < kNamedKTol) out.category = KCategory::K2_ConstantAccel;
  else if (std::abs(out.k - 3.0) < kNamedKTol) out.category = KCategory::K3_ZeroTerminalAccel;
  else if (out.k > 3.0) out.category = KCategory::ReversalKgt3;
  else out.category = KCategory::Intermediate;
  return out;
}

std::vector<ParetoPoint> pareto_sweep(const BoundaryConditions& bc, const WindModel& wind,
                                      const std::vector<double>& ci_grid) {
  for (std::size_t i = 0; i < ci_grid.size(); ++i) {
    if (!(ci_grid[i] >= 0.0))
      throw GuidanceError(Error::InvalidInput, "pareto grid values must be >= 0");
    if (i > 0 && ci_grid[i] < ci_grid[i - 1])
      throw GuidanceError(Error::InvalidInput, "pareto grid must be sorted ascending");
  }

  std::vector<ParetoPoint> out;
  std::vector<Branch> branches;
  int next_id = 0;

  for (std::size_t gi = 0; gi < ci_grid.size(); ++gi) {
    const TradeOff c{ci_grid[gi]};
    const auto poly = (bc.kind == ProblemKind::Rendezvous)
                          ? polynomial::build_rendezvous_poly(bc, wind, c)
                          : polynomial::build_intercept_poly(bc, wind, c);
    const auto cost = [&](double t) {
      return bc.kind == ProblemKind::Rendezvous
                 ? guidance::rendezvous_cost_for_tf(bc, wind, c, t)
                 : guidance::intercept_cost_for_tf(bc, wind, c, t);
    };
    polynomial::RootReport report;
    try {
      report = polynomial::analyze_roots(poly, cost);
    } catch (const GuidanceError&) {
      continue;  // zero polynomial at this grid point: no rows
    }

    struct Cand {
      double tf;
      double energy;
      bool is_local_min;
      bool critical;
    };
    std::vector<Cand> cands;
    for (const auto& a : report.admissible)
      cands.push_back({a.tf, a.cost - c.c_i * a.tf, true, false});
    for (const auto& cr : report.critical)
      cands.push_back({cr.tf, cr.cost - c.c_i * cr.tf, false, true});
    // Interior stationary points that are not minima (the middle branch of
    // the trade-off curve) are reported too.
    for (double r : report.all_real_roots) {
      if (!(r > 1e-9)) continue;
      bool known = false;
      for (const auto& cand : cands) known = known || std::abs(cand.tf - r) <= 1e-9 * (1.0 + r);
      if (!known) cands.push_back({r, cost(r) - c.c_i * r, false, false});
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.tf < b.tf; });

    // Continue branch labels by proximity in tf; a jump larger than 10x the
    // branch's last per-step motion starts a new branch.
    std::vector<int> assigned(cands.size(), -1);
    std::vector<bool> branch_used(branches.size(), false);
    struct Pair {
      double dist;
      std::size_t cand;
      std::size_t branch;
    };
    std::vector<Pair> pairs;
    for (std::size_t ci = 0; ci < cands.size(); ++ci) {
      for (std::size_t bi = 0; bi < branches.size(); ++bi) {
        if (!branches[bi].alive) continue;
        pairs.push_back({std::abs(cands[ci].tf - branches[bi].last_tf), ci, bi});
      }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.dist < b.dist; });
    for (const auto& pr : pairs) {
      if (assigned[pr.cand] != -1 || branch_used[pr.branch]) continue;
      const Branch& b = branches[pr.branch];
      // First continuation bootstraps the motion estimate; afterwards a jump
      // above 10x the last per-step motion starts a new branch instead.
      if (b.has_motion) {
        const double threshold =
            10.0 * std::max(b.last_motion, 1e-3 * (1.0 + std::abs(b.last_tf)));
        if (pr.dist > threshold) continue;
      }
      assigned[pr.cand] = static_cast<int>(pr.branch);
      branch_used[pr.branch] = true;
    }
    for (std::size_t ci = 0; ci < cands.size(); ++ci) {
      int bi = assigned[ci];
      if (bi == -1) {
        branches.push_back({next_id++, cands[ci].tf, 0.0, false, true});
        bi = static_cast<int>(branches.size() - 1);
      } else {
        auto& b = branches[static_cast<std::size_t>(bi)];
        b.last_motion = std::abs(cands[ci].tf - b.last_tf);
        b.last_tf = cands[ci].tf;
        b.has_motion = true;
      }
      out.push_back({c.c_i, cands[ci].tf, cands[ci].energy,
                     branches[static_cast<std::size_t>(bi)].id, cands[ci].is_local_min,
                     cands[ci].critical});
    }
    for (std::size_t bi = 0; bi < branches.size(); ++bi) {
      if (bi < branch_used.size() && !branch_used[bi]) branches[bi].alive = false;
    }
  }
  return out;
}

double critical_ci_1d(double x0, double v0) {
  if (x0 == 0.0) throw GuidanceError(Error::ZeroInitialOffset, "x0 must be nonzero");
  return v0 * v0 * v0 * v0 / (72.0 * x0 * x0);
}

VelocityRoots velocity_quadratic_roots(const Costates& costates, TradeOff c) {
  if (costates.p_r.x == 0.0)
    throw GuidanceError(Error::ZeroJerkCostate, "velocity quadratic needs p_rx != 0");
  if (!(c.c_i >= 0.0))
    throw GuidanceError(Error::InvalidInput, "trade-off C_I must be >= 0");
  const double s = std::sqrt(2.0 * c.c_i);
  const double r1 = (costates.p_v0.x + s) / costates.p_r.x;
  const double r2 = (costates.p_v0.x - s) / costates.p_r.x;
  return {std::min(r1, r2), std::max(r1, r2)};
}

HeadingAnalysis max_heading(ProblemKind kind, double v_gx0_magnitude) {
  if (!(std::abs(v_gx0_magnitude) > 0.0))
    throw GuidanceError(Error::InvalidInput, "max_heading needs a nonzero v_gx0 magnitude");
  HeadingAnalysis h;
  h.alpha0 = -4.0;       // discriminant 144 + 36*alpha0 vanishes here
  h.k_critical = 1.5;
  if (kind == ProblemKind::Rendezvous) {
    h.theta_max = std::atan(1.0);  // 45 deg
    h.v_gy0_max = std::abs(v_gx0_magnitude);
  } else {
    h.theta_max = std::atan(1.0 / std::sqrt(3.0));  // 30 deg
    h.v_gy0_max = std::abs(v_gx0_magnitude) / std::sqrt(3.0);
  }
  return h;
}

RootSweepResult root_sweep(SweepParam param, const std::vector<double>& grid,
                           const SweepScenario& fixed) {
  if (grid.empty()) throw GuidanceError(Error::InvalidInput, "sweep grid must be nonempty");

  RootSweepResult result;
  result.t_r = reference_time(fixed.x0, fixed.v_gx0);

  int prev_count = -1;
  double prev_param = 0.0;
  for (double value : grid) {
    double v_gy0 = fixed.v_gy0;
    double c_i = fixed.c_i;
    Vec3 wind_k = fixed.wind_k;
    switch (param) {
      case SweepParam::Vgy0: v_gy0 = value; break;
      case SweepParam::InvCI:
        if (!(value > 0.0))
          throw GuidanceError(Error::InvalidInput, "1/C_I sweep needs positive grid values");
        c_i = 1.0 / value;
        break;
      case SweepParam::WindK: wind_k = {value, 0.0, 0.0}; break;
    }

    const auto poly = sweep_poly(fixed, v_gy0, c_i, wind_k, param == SweepParam::Vgy0);
    RootSweepRow row;
    row.param = value;
    for (double r : polynomial::find_real_roots(poly)) {
      if (r > 1e-9) row.positive_roots.push_back(r);
    }
    if (result.t_r.valid) {
      for (double r : row.positive_roots) row.roots_in_tr.push_back(r / result.t_r.t_r);
    }
    const int count = static_cast<int>(row.positive_roots.size());
    if (prev_count >= 0 && count != prev_count) {
      row.bifurcation = true;
      result.bifurcation_params.push_back(0.5 * (prev_param + value));
    }
    prev_count = count;
    prev_param = value;
    result.rows.push_back(std::move(row));
  }
  return result;
}

}  // namespace windguide::analysis
