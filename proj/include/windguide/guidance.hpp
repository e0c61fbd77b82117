#pragma once

#include "windguide/polynomial.hpp"
#include "windguide/types.hpp"
#include "windguide/wind.hpp"

namespace windguide::guidance {

using polynomial::PolyCase;
using polynomial::RootReport;

/// Closed-form optimal solution. Sufficient to evaluate u*(t), the analytic
/// trajectory and the cost; carries the full root report for analysis
/// consumers. A degenerate (already-at-target) input yields the tf = 0
/// sentinel with u* = 0 and J = 0.
struct GuidanceSolution {
  PolyCase case_tag{PolyCase::RendezvousConstWind};
  double tf{};
  Costates costates;
  double cost{};
  BoundaryConditions bc;
  WindModel wind;
  TradeOff trade_off;
  double k_shear{};  // Shear cases only
  RootReport roots;
  bool degenerate{};
};

struct PropagatedState {
  Vec3 r;
  Vec3 vg;
};

/// Optimal rendezvous for constant or linear-in-time wind: tf is the
/// cost-minimizing admissible root of the flight-time polynomial, the
/// costates follow from the boundary data and the wind integrals.
GuidanceSolution solve_rendezvous(const BoundaryConditions& bc, const WindModel& wind, TradeOff c);

/// Optimal intercept (free terminal velocity): p_v(tf) = 0, so
/// u*(t) = (t - tf) p_r with p_r = 3[dr + vg0 tf + k tf^2/2]/tf^3.
GuidanceSolution solve_intercept(const BoundaryConditions& bc, const WindModel& wind, TradeOff c);

/// Cross-track shear rendezvous (planar, rf = 0, y0 = 0) under the terminal
/// convention vxf = vx0, vyf = -vy0.
GuidanceSolution solve_shear(const BoundaryConditions& bc2d, double k_shear, TradeOff c);

/// Fixed-tf evaluations of the same closed forms. These accept any
/// time-integrable wind (piecewise included) since no polynomial is needed
/// once tf is given.
GuidanceSolution rendezvous_solution_for_tf(const BoundaryConditions& bc, const WindModel& wind,
                                            TradeOff c, double tf);
GuidanceSolution intercept_solution_for_tf(const BoundaryConditions& bc, const WindModel& wind,
                                           TradeOff c, double tf);
GuidanceSolution shear_solution_for_tf(const BoundaryConditions& bc2d, double k_shear, TradeOff c,
                                       double tf);

/// Air-relative optimal acceleration u*(t) = t p_r - p_v0 for 0 <= t <= tf.
Vec3 control_at(const GuidanceSolution& sol, double t);

/// Closed-form state at t: cubic position, quadratic velocity plus the wind
/// terms (the shear case adds the k*integral(y) coupling).
PropagatedState propagate(const GuidanceSolution& sol, double t);

/// Hamiltonian along the optimal trajectory; identically zero for constant
/// wind acceleration when tf solves the flight-time polynomial. Restricted
/// to Constant/LinearInTime wind.
double hamiltonian_at(const GuidanceSolution& sol, double t);

/// Control energy 1/2 integral |u*|^2 dt, integrated exactly. Equals
/// cost - C_I * tf.
double energy(const GuidanceSolution& sol);

/// Ground velocity at the final time (propagate at tf).
Vec3 terminal_velocity(const GuidanceSolution& sol);

/// Rendezvous cost at a given tf: C_I tf + a1/tf + a2/tf^2 + a3/tf^3 with
/// the air-relative coefficients evaluated through the wind integrals.
double rendezvous_cost_for_tf(const BoundaryConditions& bc, const WindModel& wind, TradeOff c,
                              double tf);

/// Intercept cost at a given tf (constant-k wind).
double intercept_cost_for_tf(const BoundaryConditions& bc, const WindModel& wind, TradeOff c,
                             double tf);

}  // namespace windguide::guidance
