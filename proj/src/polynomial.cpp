#include "windguide/polynomial.hpp"

#include <cmath>

#include "windguide/errors.hpp"

namespace windguide::polynomial {

namespace {

const Vec3& wind_acceleration(const WindModel& wind) {
  static const Vec3 zero{};
  if (const auto* lin = std::get_if<LinearInTimeWind>(&wind)) return lin->k;
  return zero;
}

void require_constant_or_linear(const WindModel& wind) {
  if (!std::holds_alternative<ConstantWind>(wind) &&
      !std::holds_alternative<LinearInTimeWind>(wind)) {
    throw GuidanceError(Error::UnsupportedWindModel,
                        "flight-time polynomial needs constant or linear-in-time wind "
                        "(use build_shear_poly for cross-track shear)");
  }
}

void require_trade_off(TradeOff c) {
  if (!(c.c_i >= 0.0) || !std::isfinite(c.c_i))
    throw GuidanceError(Error::InvalidInput, "trade-off C_I must be finite and >= 0");
}

// Planar shear preconditions: z = 0 everywhere, target at the origin, start
// on the x-axis, and (when given) the terminal velocity matching the
// vxf = vx0, vyf = -vy0 convention.
void require_shear_bc(const BoundaryConditions& bc) {
  if (bc.r0.z != 0.0 || bc.rf.z != 0.0 || bc.vg0.z != 0.0 ||
      (bc.vgf && bc.vgf->z != 0.0)) {
    throw GuidanceError(Error::NotPlanar, "shear case is 2D: z components must be zero");
  }
  if (bc.rf != Vec3{} || bc.r0.y != 0.0)
    throw GuidanceError(Error::InvalidInput,
                        "shear case expects the target at the origin and y0 = 0");
  if (bc.vgf) {
    const Vec3 expected{bc.vg0.x, -bc.vg0.y, 0.0};
    if (*bc.vgf != expected)
      throw GuidanceError(Error::InvalidInput,
                          "shear case fixes the terminal velocity to (vx0, -vy0)");
  }
}

}  // namespace

TimePolynomial build_rendezvous_poly(const BoundaryConditions& bc, const WindModel& wind,
                                     TradeOff c) {
  if (bc.kind != ProblemKind::Rendezvous || !is_consistent(bc))
    throw GuidanceError(Error::InvalidInput, "rendezvous polynomial needs rendezvous boundary data");
  require_constant_or_linear(wind);
  require_trade_off(c);

  const Vec3 k = wind_acceleration(wind);
  const Vec3 dr = bc.r0 - bc.rf;
  const Vec3& vg0 = bc.vg0;
  const Vec3& vgf = *bc.vgf;

  TimePolynomial p;
  p.case_tag = std::holds_alternative<ConstantWind>(wind) ? PolyCase::RendezvousConstWind
                                                          : PolyCase::RendezvousGeneral;
  p.coeffs = {c.c_i + 0.5 * dot(k, k),
              0.0,
              -2.0 * (squared_norm(vg0) + squared_norm(vgf) + dot(vgf, vg0)),
              -12.0 * dot(dr, vg0 + vgf),
              -18.0 * squared_norm(dr)};
  return p;
}

TimePolynomial build_intercept_poly(const BoundaryConditions& bc, const WindModel& wind,
                                    TradeOff c) {
  if (bc.kind != ProblemKind::Intercept || !is_consistent(bc))
    throw GuidanceError(Error::InvalidInput, "intercept polynomial needs intercept boundary data");
  require_constant_or_linear(wind);
  require_trade_off(c);

  const Vec3 k = wind_acceleration(wind);
  const Vec3 dr = bc.r0 - bc.rf;

  TimePolynomial p;
  p.case_tag = PolyCase::Intercept;
  p.coeffs = {c.c_i + 0.375 * dot(k, k),
              0.0,
              -1.5 * (squared_norm(bc.vg0) + dot(dr, k)),
              -6.0 * dot(dr, bc.vg0),
              -4.5 * squared_norm(dr)};
  return p;
}

TimePolynomial build_shear_poly(const BoundaryConditions& bc2d, double k_shear, TradeOff c) {
  require_shear_bc(bc2d);
  require_trade_off(c);
  if (!std::isfinite(k_shear))
    throw GuidanceError(Error::InvalidInput, "k_shear must be finite");

  const double x0 = bc2d.r0.x;
  const double vx0 = bc2d.vg0.x;
  const double vy0 = bc2d.vg0.y;

  TimePolynomial p;
  p.case_tag = PolyCase::Shear;
  p.coeffs = {2.0 * c.c_i + k_shear * k_shear * vy0 * vy0,
              4.0 * k_shear * vx0 * vy0,
              -4.0 * (3.0 * vx0 * vx0 + vy0 * vy0),
              -48.0 * x0 * vx0,
              -36.0 * x0 * x0};
  return p;
}

TimePolynomial build_const_airspeed_quadratic(const BoundaryConditions& bc2d, double k_shear) {
  require_shear_bc(bc2d);
  if (!std::isfinite(k_shear))
    throw GuidanceError(Error::InvalidInput, "k_shear must be finite");

  const double x0 = bc2d.r0.x;
  const double vx0 = bc2d.vg0.x;
  const double vy0 = bc2d.vg0.y;
  const double va0 = norm(bc2d.vg0);  // y0 = 0, so the initial airspeed is the ground speed

  TimePolynomial p;
  p.case_tag = PolyCase::ShearConstAirspeed;
  p.coeffs = {0.0, 0.0, -k_shear * vy0, -(2.0 * vx0 + 4.0 * va0), -6.0 * x0};
  return p;
}

}  // namespace windguide::polynomial
