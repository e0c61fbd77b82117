#pragma once

#include "windguide/types.hpp"
#include "windguide/vec3.hpp"

namespace windguide::zemzev {

/// Zero-effort miss / zero-effort velocity at a given time-to-go:
///   zem = rf - r - vg*t_go - k*t_go^2/2
///   zev = vgf - vg - k*t_go        (zero for intercept problems)
struct ZemZevErrors {
  Vec3 zem;      // [m]
  Vec3 zev;      // [m/s]
  double t_go{};  // [s], > 0
};

ZemZevErrors compute_errors(const Vec3& r, const Vec3& vg, const BoundaryConditions& bc,
                            const Vec3& k, double t_go);

/// u* = (6/t_go^2) zem - (2/t_go) zev (air-relative).
Vec3 rendezvous_command(const ZemZevErrors& e);

/// u* = (3/t_go^2) zem.
Vec3 intercept_command(const ZemZevErrors& e);

/// Costate reconstruction from the errors: p_r = (12/t_go^3)(t_go/2 zev - zem)
/// for rendezvous, p_r = -(3/t_go^3) zem for intercept. This is the slope of
/// the commanded acceleration and is used by the sampled-data loop in sim.
Vec3 rendezvous_command_rate(const ZemZevErrors& e);
Vec3 intercept_command_rate(const ZemZevErrors& e);

}  // namespace windguide::zemzev
