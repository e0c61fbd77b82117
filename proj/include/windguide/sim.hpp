#pragma once

#include <string>
#include <vector>

#include "windguide/guidance.hpp"
#include "windguide/types.hpp"
#include "windguide/wind.hpp"

namespace windguide::sim {

enum class GuidanceLaw { OpenLoop, ZemZev, AdaptivePiecewise };

struct SimConfig {
  double replan_period{0.05};      // [s] adaptive law resolve interval
  double step{0.005};              // [s] RK4 step, 0 < step <= replan_period
  GuidanceLaw law{GuidanceLaw::OpenLoop};
  double t_go_min_fraction{1e-4};  // feedback commands freeze below tf * fraction
  double max_time{300.0};          // [s] hard stop, > 0
  double capture_radius{0.1};      // [m] adaptive-law arrival test
};

void validate(const SimConfig& cfg);

struct TrajectorySample {
  double t{};
  Vec3 r;
  Vec3 v_g;
  Vec3 v_a;
  Vec3 w;
  Vec3 u;
  double hamiltonian{};
  double c_i_effective{};
};

struct TrajectorySummary {
  double t_arrival{};
  double position_error{};
  double velocity_error{};   // 0 for intercept/adaptive runs (free terminal velocity handling)
  double energy{};           // trapezoidal 1/2 sum |u|^2 dt
  double cost{};             // energy + C_I * t_arrival (base C_I)
};

struct TrajectoryLog {
  std::vector<TrajectorySample> samples;  // one per step, time-ordered
  TrajectorySummary summary;
  std::vector<std::string> events;
};

/// Closed-loop integration of r' = v_g, v_g' = u + w' under the selected
/// law. The wind rate is analytic for time models and a centered directional
/// difference along the velocity for spatial fields. Feedback commands are
/// resampled at every step start and applied as the affine-in-time optimal
/// profile until the next sample.
TrajectoryLog run(const BoundaryConditions& bc, const WindModel& wind, TradeOff c,
                  const SimConfig& cfg);

/// Effective trade-off for one replanning segment:
/// C'_I = max(C_I + k'(vg0_seg - vgf), eps) with eps = 1e-9.
double adaptive_tradeoff(TradeOff c_base, const Vec3& k_est, const Vec3& vg0_seg, const Vec3& vgf);

/// Piecewise-linear adaptive loop over a spatial wind field: every
/// replan_period the local wind acceleration is estimated along the current
/// course, the trade-off is corrected, the flight-time polynomial is
/// resolved from the current state and the resulting control is applied for
/// the segment. Arrival when |r - rf| < capture_radius.
TrajectoryLog run_piecewise(const BoundaryConditions& bc, const WindModel& field, TradeOff c_base,
                            const SimConfig& cfg);

}  // namespace windguide::sim
