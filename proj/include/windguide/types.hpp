#pragma once

#include <optional>

#include "windguide/vec3.hpp"

namespace windguide {

enum class ProblemKind { Rendezvous, Intercept };

/// Two-point boundary data. A rendezvous constrains the terminal ground
/// velocity; an intercept leaves it free (vgf absent).
struct BoundaryConditions {
  Vec3 r0;                    // initial position [m]
  Vec3 rf;                    // target position [m]
  Vec3 vg0;                   // initial ground velocity [m/s]
  std::optional<Vec3> vgf;    // terminal ground velocity [m/s]; absent => intercept
  ProblemKind kind{ProblemKind::Rendezvous};

  static BoundaryConditions rendezvous(const Vec3& r0, const Vec3& rf, const Vec3& vg0,
                                       const Vec3& vgf) {
    return {r0, rf, vg0, vgf, ProblemKind::Rendezvous};
  }
  static BoundaryConditions intercept(const Vec3& r0, const Vec3& rf, const Vec3& vg0) {
    return {r0, rf, vg0, std::nullopt, ProblemKind::Intercept};
  }
};

/// kind and vgf must agree; all components finite.
bool is_consistent(const BoundaryConditions& bc);

/// Time trade-off weight C_I >= 0 in the running cost (1/2 u'u + C_I).
struct TradeOff {
  double c_i{};
};

/// Costate pair of the double-integrator extremal: p_r constant,
/// p_v(t) = p_v0 - t*p_r, and u*(t) = -p_v(t).
struct Costates {
  Vec3 p_r;    // position costate [m/s^3]
  Vec3 p_v0;   // velocity costate at t = 0 [m/s^2]

  Vec3 p_v(double t) const { return p_v0 - t * p_r; }
  Vec3 control(double t) const { return t * p_r - p_v0; }
};

/// Wind quantities accumulated up to the final time:
///   i_wf     = integral of w over [0, tf]            [m]
///   delta_wf = w(tf) - w(0)                          [m/s]
///   varpi_f  = i_wf - w(0)*tf                        [m]
struct WindIntegrals {
  Vec3 i_wf;
  Vec3 delta_wf;
  Vec3 varpi_f;
};

}  // namespace windguide
