#pragma once

#include <variant>
#include <vector>

#include "windguide/types.hpp"
#include "windguide/vec3.hpp"

namespace windguide {

struct ConstantWind {
  Vec3 w0;  // [m/s]
};

/// w(t) = w0 + k*t.
struct LinearInTimeWind {
  Vec3 w0;  // [m/s]
  Vec3 k;   // wind acceleration [m/s^2]
};

/// Planar shear: w_x = k_shear * y, w_y = w_z = 0.
struct CrossTrackShearWind {
  double k_shear{};  // [1/s]
};

/// Piecewise linear-in-time profile. Segment i is active on
/// [t_start_i, t_start_{i+1}) with w(t) = w0 + k*(t - t_start).
/// Start times strictly increasing, first segment at t = 0; the last
/// segment extends to infinity. Continuity across segments is not required.
struct PiecewiseLinearWind {
  struct Segment {
    double t_start{};
    Vec3 w0;
    Vec3 k;
  };
  std::vector<Segment> segments;
};

/// Planar wind field with bivariate polynomial components up to degree 2.
struct SpatialFieldWind {
  struct Poly2 {
    double c00{}, c10{}, c01{}, c20{}, c11{}, c02{};
    double eval(double x, double y) const {
      return c00 + c10 * x + c01 * y + c20 * x * x + c11 * x * y + c02 * y * y;
    }
  };
  Poly2 wx;
  Poly2 wy;
};

using WindModel =
    std::variant<ConstantWind, LinearInTimeWind, CrossTrackShearWind, PiecewiseLinearWind,
                 SpatialFieldWind>;

/// Wind velocity at time t and position r. Time-varying models ignore r,
/// except CrossTrackShear which reads r.y; SpatialField ignores t.
Vec3 wind_at(const WindModel& model, double t, const Vec3& r);

/// Exact analytic I_w(tf), Delta_w(tf) and varpi(tf) for the time-integrable
/// models (Constant, LinearInTime, PiecewiseLinear). Throws
/// UnsupportedWindModel for position-dependent models.
WindIntegrals wind_integrals(const WindModel& model, double tf);

/// Same integrals up to an arbitrary time t >= 0 (used by the analytic
/// trajectory propagation).
WindIntegrals wind_integrals_at(const WindModel& model, double t);

bool is_time_integrable(const WindModel& model);

/// Validates segment ordering of piecewise models and finiteness of all
/// numeric fields.
void validate(const WindModel& model);

}  // namespace windguide
