#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "windguide/types.hpp"
#include "windguide/wind.hpp"

namespace windguide::polynomial {

enum class PolyCase {
  RendezvousGeneral,    // linear-in-time wind, b-form coefficients
  RendezvousConstWind,  // constant (or zero) wind
  Intercept,
  Shear,
  ShearConstAirspeed,   // quadratic (c4 = c3 = 0)
};

/// Flight-time polynomial P(t) = c4 t^4 + c3 t^3 + c2 t^2 + c1 t + c0.
/// All rendezvous/intercept cases are depressed quartics (c3 = 0); only the
/// shear case can carry a cubic term.
struct TimePolynomial {
  std::array<double, 5> coeffs{};  // ordered (c4, c3, c2, c1, c0)
  PolyCase case_tag{PolyCase::RendezvousConstWind};

  double eval(double t) const {
    const auto& c = coeffs;
    return (((c[0] * t + c[1]) * t + c[2]) * t + c[3]) * t + c[4];
  }
  double deriv(double t) const {
    const auto& c = coeffs;
    return ((4.0 * c[0] * t + 3.0 * c[1]) * t + 2.0 * c[2]) * t + c[3];
  }
  double second_deriv(double t) const {
    const auto& c = coeffs;
    return (12.0 * c[0] * t + 6.0 * c[1]) * t + 2.0 * c[2];
  }
};

struct EvaluatedRoot {
  double tf{};
  double cost{};        // J at this root
  bool is_local_min{};  // false for critical/bifurcation (double) roots
};

struct RootReport {
  std::vector<double> all_real_roots;        // ascending, with multiplicity
  std::vector<EvaluatedRoot> admissible;     // positive roots with dP/dt > 0
  std::vector<EvaluatedRoot> critical;       // double roots: |dP/dt| within band
  std::optional<std::size_t> global_best;    // index into admissible, min cost
};

using CostEval = std::function<double(double)>;

/// Rendezvous flight-time polynomial for constant or linear-in-time wind.
/// Uses the expanded ground-velocity form whose coefficients are free of tf:
///   c4 = C_I + k'k/2, c2 = -2(|vg0|^2+|vgf|^2+vgf'vg0),
///   c1 = -12 dr'(vg0+vgf), c0 = -18 |dr|^2,  dr = r0 - rf.
TimePolynomial build_rendezvous_poly(const BoundaryConditions& bc, const WindModel& wind,
                                     TradeOff c);

/// Intercept polynomial:
///   (C_I + 3/8 k'k) t^4 - 3/2 (|vg0|^2 + dr'k) t^2 - 6 dr'vg0 t - 9/2 |dr|^2.
TimePolynomial build_intercept_poly(const BoundaryConditions& bc, const WindModel& wind,
                                    TradeOff c);

/// Cross-track shear polynomial (planar, rf = 0, y0 = 0, terminal velocity
/// convention vxf = vx0, vyf = -vy0):
///   (2C_I + k^2 vy0^2) t^4 + 4 k vx0 vy0 t^3 - 4(3 vx0^2 + vy0^2) t^2
///   - 48 x0 vx0 t - 36 x0^2.
TimePolynomial build_shear_poly(const BoundaryConditions& bc2d, double k_shear, TradeOff c);

/// Constant-airspeed second-order condition for the shear case:
///   -k vy0 t^2 - (2 vx0 + 4 Va0) t - 6 x0,  Va0 = |vg0|.
TimePolynomial build_const_airspeed_quadratic(const BoundaryConditions& bc2d, double k_shear);

/// All real roots of P (ascending, with multiplicity). Degree <= 2 is solved
/// in closed form; otherwise a companion-matrix eigensolve with Newton polish.
std::vector<double> find_real_roots(const TimePolynomial& p);

/// Root classification without the no-solution error: admissible roots are
/// the positive real roots with dP/dt above the double-root band; roots
/// inside the band are reported as critical/bifurcation. global_best picks
/// the admissible root of minimal cost (ties resolved toward smaller tf).
RootReport analyze_roots(const TimePolynomial& p, const CostEval& cost_eval);

/// analyze_roots plus the errors: AllCoefficientsZero for the zero
/// polynomial, NoAdmissibleRoot when no admissible root exists.
RootReport solve_roots(const TimePolynomial& p, const CostEval& cost_eval);

/// Residual scale for root acceptance: max(1, |coeffs|_inf * t^4).
double residual_scale(const TimePolynomial& p, double t);

}  // namespace windguide::polynomial
