#include "windguide/guidance.hpp"

#include <cmath>

#include "windguide/errors.hpp"

namespace windguide::guidance {

namespace {

using polynomial::build_intercept_poly;
using polynomial::build_rendezvous_poly;
using polynomial::build_shear_poly;
using polynomial::solve_roots;

Vec3 wind_acceleration(const WindModel& wind) {
  if (const auto* lin = std::get_if<LinearInTimeWind>(&wind)) return lin->k;
  return {};
}

void require_positive_tf(double tf) {
  if (!(tf > 0.0) || !std::isfinite(tf))
    throw GuidanceError(Error::InvalidInput, "tf must be finite and > 0");
}

GuidanceSolution degenerate_solution(PolyCase tag, const BoundaryConditions& bc,
                                     const WindModel& wind, TradeOff c, double k_shear = 0.0) {
  GuidanceSolution sol;
  sol.case_tag = tag;
  sol.tf = 0.0;
  sol.cost = 0.0;
  sol.bc = bc;
  sol.wind = wind;
  sol.trade_off = c;
  sol.k_shear = k_shear;
  sol.degenerate = true;
  return sol;
}

void require_in_horizon(const GuidanceSolution& sol, double t) {
  if (!(t >= 0.0) || t > sol.tf || !std::isfinite(t))
    throw GuidanceError(Error::OutOfHorizon, "t outside [0, tf]");
}

double quadratic_control_energy(const Costates& cs, double tf) {
  // 1/2 int_0^tf |t p_r - p_v0|^2 dt, integrated exactly.
  return 0.5 * (squared_norm(cs.p_r) * tf * tf * tf / 3.0 - dot(cs.p_r, cs.p_v0) * tf * tf +
                squared_norm(cs.p_v0) * tf);
}

Costates shear_costates(const BoundaryConditions& bc, double k_shear, double tf) {
  const double x0 = bc.r0.x;
  const double vx0 = bc.vg0.x;
  const double vy0 = bc.vg0.y;
  Costates cs;
  cs.p_r = {12.0 * (x0 + vx0 * tf) / (tf * tf * tf) + 2.0 * k_shear * vy0 / tf, 0.0, 0.0};
  cs.p_v0 = {6.0 * (x0 + vx0 * tf) / (tf * tf) + k_shear * vy0, 2.0 * vy0 / tf, 0.0};
  return cs;
}

}  // namespace

double rendezvous_cost_for_tf(const BoundaryConditions& bc, const WindModel& wind, TradeOff c,
                              double tf) {
  const WindIntegrals wi = wind_integrals(wind, tf);
  const Vec3 w0 = wind_at(wind, 0.0, bc.r0);
  const Vec3 wtf = w0 + wi.delta_wf;
  const Vec3 va0 = bc.vg0 - w0;
  const Vec3 vaf = *bc.vgf - wtf;
  const Vec3 n = bc.r0 - bc.rf + wi.i_wf;
  const double a1 = 2.0 * (squared_norm(va0) + squared_norm(vaf) + dot(va0, vaf));
  const double a2 = 6.0 * dot(n, va0 + vaf);
  const double a3 = 6.0 * squared_norm(n);
  return c.c_i * tf + a1 / tf + a2 / (tf * tf) + a3 / (tf * tf * tf);
}

double intercept_cost_for_tf(const BoundaryConditions& bc, const WindModel& wind, TradeOff c,
                             double tf) {
  const Vec3 k = wind_acceleration(wind);
  const Vec3 dr = bc.r0 - bc.rf;
  return (c.c_i + 0.375 * dot(k, k)) * tf + 1.5 * dot(bc.vg0, k) +
         1.5 * (squared_norm(bc.vg0) + dot(dr, k)) / tf + 3.0 * dot(dr, bc.vg0) / (tf * tf) +
         1.5 * squared_norm(dr) / (tf * tf * tf);
}

GuidanceSolution rendezvous_solution_for_tf(const BoundaryConditions& bc, const WindModel& wind,
                                            TradeOff c, double tf) {
  if (bc.kind != ProblemKind::Rendezvous || !is_consistent(bc))
    throw GuidanceError(Error::InvalidInput, "rendezvous solution needs rendezvous boundary data");
  require_positive_tf(tf);

  const WindIntegrals wi = wind_integrals(wind, tf);
  const Vec3 w0 = wind_at(wind, 0.0, bc.r0);
  const Vec3 wtf = w0 + wi.delta_wf;
  const Vec3 va0 = bc.vg0 - w0;
  const Vec3 vaf = *bc.vgf - wtf;
  const Vec3 n = bc.r0 - bc.rf + wi.i_wf;

  GuidanceSolution sol;
  sol.case_tag = std::holds_alternative<ConstantWind>(wind) ? PolyCase::RendezvousConstWind
                                                            : PolyCase::RendezvousGeneral;
  sol.tf = tf;
  sol.costates.p_r = 6.0 * (2.0 * n + tf * (va0 + vaf)) / (tf * tf * tf);
  sol.costates.p_v0 = 2.0 * (3.0 * n + tf * (2.0 * va0 + vaf)) / (tf * tf);
  sol.cost = rendezvous_cost_for_tf(bc, wind, c, tf);
  sol.bc = bc;
  sol.wind = wind;
  sol.trade_off = c;
  return sol;
}

GuidanceSolution intercept_solution_for_tf(const BoundaryConditions& bc, const WindModel& wind,
                                           TradeOff c, double tf) {
  if (bc.kind != ProblemKind::Intercept || !is_consistent(bc))
    throw GuidanceError(Error::InvalidInput, "intercept solution needs intercept boundary data");
  if (!std::holds_alternative<ConstantWind>(wind) &&
      !std::holds_alternative<LinearInTimeWind>(wind))
    throw GuidanceError(Error::UnsupportedWindModel,
                        "intercept solution needs constant or linear-in-time wind");
  require_positive_tf(tf);

  const Vec3 k = wind_acceleration(wind);
  const Vec3 dr = bc.r0 - bc.rf;

  GuidanceSolution sol;
  sol.case_tag = PolyCase::Intercept;
  sol.tf = tf;
  // Free terminal velocity: p_v(tf) = 0, so p_v0 = tf * p_r and u*(t) = (t - tf) p_r.
  sol.costates.p_r = 3.0 * (dr + tf * bc.vg0 + (0.5 * tf * tf) * k) / (tf * tf * tf);
  sol.costates.p_v0 = tf * sol.costates.p_r;
  sol.cost = intercept_cost_for_tf(bc, wind, c, tf);
  sol.bc = bc;
  sol.wind = wind;
  sol.trade_off = c;
  return sol;
}

GuidanceSolution shear_solution_for_tf(const BoundaryConditions& bc2d, double k_shear, TradeOff c,
                                       double tf) {
  require_positive_tf(tf);
  // Builder re-checks the planar preconditions.
  (void)build_shear_poly(bc2d, k_shear, c);

  GuidanceSolution sol;
  sol.case_tag = PolyCase::Shear;
  sol.tf = tf;
  sol.costates = shear_costates(bc2d, k_shear, tf);
  sol.cost = c.c_i * tf + quadratic_control_energy(sol.costates, tf);
  sol.bc = bc2d;
  sol.bc.kind = ProblemKind::Rendezvous;
  sol.bc.vgf = Vec3{bc2d.vg0.x, -bc2d.vg0.y, 0.0};
  sol.wind = CrossTrackShearWind{k_shear};
  sol.trade_off = c;
  sol.k_shear = k_shear;
  return sol;
}

GuidanceSolution solve_rendezvous(const BoundaryConditions& bc, const WindModel& wind, TradeOff c) {
  if (bc.kind != ProblemKind::Rendezvous || !is_consistent(bc))
    throw GuidanceError(Error::InvalidInput, "solve_rendezvous needs rendezvous boundary data");
  if (bc.r0 == bc.rf && bc.vg0 == *bc.vgf) {
    return degenerate_solution(std::holds_alternative<ConstantWind>(wind)
                                   ? PolyCase::RendezvousConstWind
                                   : PolyCase::RendezvousGeneral,
                               bc, wind, c);
  }
  const auto poly = build_rendezvous_poly(bc, wind, c);
  const auto report =
      solve_roots(poly, [&](double t) { return rendezvous_cost_for_tf(bc, wind, c, t); });
  GuidanceSolution sol = rendezvous_solution_for_tf(
      bc, wind, c, report.admissible[*report.global_best].tf);
  sol.roots = report;
  return sol;
}

GuidanceSolution solve_intercept(const BoundaryConditions& bc, const WindModel& wind, TradeOff c) {
  if (bc.kind != ProblemKind::Intercept || !is_consistent(bc))
    throw GuidanceError(Error::InvalidInput, "solve_intercept needs intercept boundary data");
  if (bc.r0 == bc.rf) return degenerate_solution(PolyCase::Intercept, bc, wind, c);
  const auto poly = build_intercept_poly(bc, wind, c);
  const auto report =
      solve_roots(poly, [&](double t) { return intercept_cost_for_tf(bc, wind, c, t); });
  GuidanceSolution sol =
      intercept_solution_for_tf(bc, wind, c, report.admissible[*report.global_best].tf);
  sol.roots = report;
  return sol;
}

GuidanceSolution solve_shear(const BoundaryConditions& bc2d, double k_shear, TradeOff c) {
  const auto poly = build_shear_poly(bc2d, k_shear, c);
  if (bc2d.r0 == Vec3{} && bc2d.vg0 == Vec3{}) {
    return degenerate_solution(PolyCase::Shear, bc2d, CrossTrackShearWind{k_shear}, c, k_shear);
  }
  const auto report = solve_roots(poly, [&](double t) {
    return c.c_i * t + quadratic_control_energy(shear_costates(bc2d, k_shear, t), t);
  });
  GuidanceSolution sol =
      shear_solution_for_tf(bc2d, k_shear, c, report.admissible[*report.global_best].tf);
  sol.roots = report;
  return sol;
}

Vec3 control_at(const GuidanceSolution& sol, double t) {
  require_in_horizon(sol, t);
  if (sol.degenerate) return {};
  return sol.costates.control(t);
}

PropagatedState propagate(const GuidanceSolution& sol, double t) {
  require_in_horizon(sol, t);
  if (sol.degenerate) return {sol.bc.r0, sol.bc.vg0};

  const Costates& cs = sol.costates;
  const double t2 = t * t;
  const double t3 = t2 * t;

  if (sol.case_tag == PolyCase::Shear) {
    const double k = sol.k_shear;
    const double x0 = sol.bc.r0.x;
    const double vx0 = sol.bc.vg0.x;
    const double vy0 = sol.bc.vg0.y;
    const double y = t3 / 6.0 * cs.p_r.y - t2 / 2.0 * cs.p_v0.y + t * vy0;
    const double vy = t2 / 2.0 * cs.p_r.y - t * cs.p_v0.y + vy0;
    const double y_int = t2 * t2 / 24.0 * cs.p_r.y - t3 / 6.0 * cs.p_v0.y + t2 / 2.0 * vy0;
    const double vx = t2 / 2.0 * cs.p_r.x - t * cs.p_v0.x + vx0 + k * y;
    const double x = x0 + t * vx0 + t3 / 6.0 * cs.p_r.x - t2 / 2.0 * cs.p_v0.x + k * y_int;
    return {{x, y, 0.0}, {vx, vy, 0.0}};
  }

  const WindIntegrals wi = wind_integrals_at(sol.wind, t);
  const Vec3 vg = sol.bc.vg0 + (t2 / 2.0) * cs.p_r - t * cs.p_v0 + wi.delta_wf;
  const Vec3 r = sol.bc.r0 + t * sol.bc.vg0 + (t3 / 6.0) * cs.p_r - (t2 / 2.0) * cs.p_v0 +
                 wi.varpi_f;
  return {r, vg};
}

double hamiltonian_at(const GuidanceSolution& sol, double t) {
  if (!std::holds_alternative<ConstantWind>(sol.wind) &&
      !std::holds_alternative<LinearInTimeWind>(sol.wind))
    throw GuidanceError(Error::UnsupportedWindModel,
                        "Hamiltonian evaluation is defined for constant wind acceleration only");
  require_in_horizon(sol, t);
  if (sol.degenerate) return sol.trade_off.c_i;

  const Vec3 k = wind_acceleration(sol.wind);
  const Vec3 p_v = sol.costates.p_v(t);
  const Vec3 vg = propagate(sol, t).vg;
  // H = C_I + 1/2 u'u + p_r'v_g + p_v'(k + u) with u = -p_v.
  return sol.trade_off.c_i - 0.5 * squared_norm(p_v) + dot(sol.costates.p_r, vg) + dot(p_v, k);
}

double energy(const GuidanceSolution& sol) {
  if (sol.degenerate) return 0.0;
  return quadratic_control_energy(sol.costates, sol.tf);
}

Vec3 terminal_velocity(const GuidanceSolution& sol) {
  if (sol.degenerate) return sol.bc.vg0;
  return propagate(sol, sol.tf).vg;
}

}  // namespace windguide::guidance
