#include "windguide/sim.hpp"

#include <cmath>
#include <functional>

#include "windguide/errors.hpp"
#include "windguide/zemzev.hpp"

namespace windguide::sim {

namespace {

constexpr double kEpsCi = 1e-9;         // lower clamp for the adaptive trade-off
constexpr double kSpatialFdStep = 1e-4;  // [s] centered difference along the course

Vec3 wind_acceleration_of(const WindModel& wind) {
  if (const auto* lin = std::get_if<LinearInTimeWind>(&wind)) return lin->k;
  return {};
}

Vec3 wind_rate_piecewise(const PiecewiseLinearWind& pw, double t) {
  std::size_t i = pw.segments.size();
  while (i > 1 && pw.segments[i - 1].t_start > t) --i;
  return pw.segments[i - 1].k;
}

// dw/dt seen by the vehicle: analytic for the time models, K*v_g for shear,
// centered directional difference along the velocity for spatial fields
// (exact for the quadratic fields used here).
Vec3 wind_rate(const WindModel& wind, double t, const Vec3& r, const Vec3& v) {
  return std::visit(
      [&](const auto& m) -> Vec3 {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ConstantWind>) {
          return {};
        } else if constexpr (std::is_same_v<T, LinearInTimeWind>) {
          return m.k;
        } else if constexpr (std::is_same_v<T, CrossTrackShearWind>) {
          return {m.k_shear * v.y, 0.0, 0.0};
        } else if constexpr (std::is_same_v<T, PiecewiseLinearWind>) {
          return wind_rate_piecewise(m, t);
        } else {
          const Vec3 wp = wind_at(wind, t, r + kSpatialFdStep * v);
          const Vec3 wm = wind_at(wind, t, r - kSpatialFdStep * v);
          return (wp - wm) / (2.0 * kSpatialFdStep);
        }
      },
      wind);
}

struct State {
  Vec3 r;
  Vec3 v;
};

using ControlFn = std::function<Vec3(double)>;

State rk4_step(const WindModel& wind, const ControlFn& u, double t, const State& s, double h) {
  const auto f = [&](double tt, const State& y) -> State {
    return {y.v, u(tt) + wind_rate(wind, tt, y.r, y.v)};
  };
  const State k1 = f(t, s);
  const State k2 = f(t + 0.5 * h, {s.r + 0.5 * h * k1.r, s.v + 0.5 * h * k1.v});
  const State k3 = f(t + 0.5 * h, {s.r + 0.5 * h * k2.r, s.v + 0.5 * h * k2.v});
  const State k4 = f(t + h, {s.r + h * k3.r, s.v + h * k3.v});
  return {s.r + (h / 6.0) * (k1.r + 2.0 * k2.r + 2.0 * k3.r + k4.r),
          s.v + (h / 6.0) * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v)};
}

// Hamiltonian of the logged state under costates (p_r, p_v = -u).
double log_hamiltonian(double c_i, const Vec3& p_r, const Vec3& u, const Vec3& vg,
                       const Vec3& wdot) {
  return c_i - 0.5 * squared_norm(u) + dot(p_r, vg) + dot(-1.0 * u, wdot);
}

struct Recorder {
  TrajectoryLog log;
  double prev_u2 = 0.0;
  bool has_prev = false;
  double prev_t = 0.0;

  void add(const WindModel& wind, double t, const State& s, const Vec3& u, double H,
           double ci_eff) {
    const Vec3 w = wind_at(wind, t, s.r);
    log.samples.push_back({t, s.r, s.v, s.v - w, w, u, H, ci_eff});
    const double u2 = squared_norm(u);
    if (has_prev) log.summary.energy += 0.25 * (t - prev_t) * (u2 + prev_u2);  // 1/2 trapezoid
    prev_u2 = u2;
    prev_t = t;
    has_prev = true;
  }
};

guidance::GuidanceSolution solve_open_loop(const BoundaryConditions& bc, const WindModel& wind, TradeOff c) {
  if (const auto* shear = std::get_if<CrossTrackShearWind>(&wind)) {
    return guidance::solve_shear(bc, shear->k_shear, c);
  }
  if (bc.kind == ProblemKind::Rendezvous) return guidance::solve_rendezvous(bc, wind, c);
  return guidance::solve_intercept(bc, wind, c);
}

TrajectoryLog immediate_arrival(const BoundaryConditions& bc, const WindModel& wind, TradeOff c) {
  Recorder rec;
  rec.add(wind, 0.0, {bc.r0, bc.vg0}, {}, c.c_i, c.c_i);
  rec.log.summary.t_arrival = 0.0;
  rec.log.summary.position_error = norm(bc.r0 - bc.rf);
  rec.log.summary.velocity_error = bc.vgf ? norm(bc.vg0 - *bc.vgf) : 0.0;
  rec.log.summary.cost = 0.0;
  rec.log.events.push_back("degenerate: already at target");
  return rec.log;
}

TrajectoryLog run_open_loop(const BoundaryConditions& bc, const WindModel& wind, TradeOff c,
                            const SimConfig& cfg) {
  const auto sol = solve_open_loop(bc, wind, c);
  if (sol.degenerate) return immediate_arrival(bc, wind, c);
  if (sol.tf > cfg.max_time)
    throw GuidanceError(Error::DivergedBeyondMaxTime, "optimal tf exceeds max_time");

  const auto ham = [&](double t, const State& s) {
    const Vec3 u = sol.costates.control(t);
    const Vec3 wdot = wind_rate(sol.wind, t, s.r, s.v);
    return log_hamiltonian(c.c_i, sol.costates.p_r, u, s.v, wdot);
  };

  Recorder rec;
  State s{sol.bc.r0, sol.bc.vg0};
  double t = 0.0;
  rec.add(sol.wind, t, s, guidance::control_at(sol, 0.0), ham(0.0, s), c.c_i);
  const ControlFn u = [&](double tt) -> Vec3 { return sol.costates.control(std::min(tt, sol.tf)); };
  while (t < sol.tf - 1e-12) {
    const double h = std::min(cfg.step, sol.tf - t);
    s = rk4_step(sol.wind, u, t, s, h);
    t += h;
    rec.add(sol.wind, t, s, u(t), ham(t, s), c.c_i);
  }

  rec.log.summary.t_arrival = sol.tf;
  rec.log.summary.position_error = norm(s.r - sol.bc.rf);
  rec.log.summary.velocity_error = sol.bc.vgf ? norm(s.v - *sol.bc.vgf) : 0.0;
  rec.log.summary.cost = rec.log.summary.energy + c.c_i * sol.tf;
  return rec.log;
}

TrajectoryLog run_zemzev(const BoundaryConditions& bc, const WindModel& wind, TradeOff c,
                         const SimConfig& cfg) {
  if (!std::holds_alternative<ConstantWind>(wind) &&
      !std::holds_alternative<LinearInTimeWind>(wind))
    throw GuidanceError(Error::UnsupportedWindModel,
                        "the ZEM/ZEV law is defined for constant wind acceleration");
  const auto sol = solve_open_loop(bc, wind, c);  // tf computed once at t = 0
  if (sol.degenerate) return immediate_arrival(bc, wind, c);
  if (sol.tf > cfg.max_time)
    throw GuidanceError(Error::DivergedBeyondMaxTime, "optimal tf exceeds max_time");

  const Vec3 k = wind_acceleration_of(wind);
  const double tf = sol.tf;
  const double t_go_min = tf * cfg.t_go_min_fraction;

  // Sampled-data loop: errors are recomputed at each step start and the
  // affine command profile u0 + tau*p_r is applied until the next sample.
  // Evaluating the 1/t_go^2 gains on RK4 stage states is unstable near the
  // endgame; the sampled profile reproduces the optimum exactly instead.
  Vec3 u0{}, du{};
  double t_samp = 0.0;
  bool frozen = false;

  Recorder rec;
  State s{bc.r0, bc.vg0};
  double t = 0.0;
  bool first = true;
  while (true) {
    const double t_go = tf - t;
    if (t_go >= t_go_min && !frozen) {
      const auto errors = zemzev::compute_errors(s.r, s.v, bc, k, t_go);
      if (bc.kind == ProblemKind::Rendezvous) {
        u0 = zemzev::rendezvous_command(errors);
        du = zemzev::rendezvous_command_rate(errors);
      } else {
        u0 = zemzev::intercept_command(errors);
        du = zemzev::intercept_command_rate(errors);
      }
      t_samp = t;
    } else if (!frozen) {
      u0 = u0 + (t - t_samp) * du;  // hold the profile value at the freeze instant
      du = {};
      t_samp = t;
      frozen = true;
      rec.log.events.push_back("commands frozen at t_go_min; coasting");
    }
    const ControlFn u = [&](double tt) -> Vec3 { return u0 + (tt - t_samp) * du; };
    if (first) {
      rec.add(wind, t, s, u(t), log_hamiltonian(c.c_i, du, u(t), s.v, k), c.c_i);
      first = false;
    }
    if (t >= tf - 1e-12) break;
    const double h = std::min(cfg.step, tf - t);
    s = rk4_step(wind, u, t, s, h);
    t += h;
    rec.add(wind, t, s, u(t), log_hamiltonian(c.c_i, du, u(t), s.v, k), c.c_i);
  }

  rec.log.summary.t_arrival = tf;
  rec.log.summary.position_error = norm(s.r - bc.rf);
  rec.log.summary.velocity_error = bc.vgf ? norm(s.v - *bc.vgf) : 0.0;
  rec.log.summary.cost = rec.log.summary.energy + c.c_i * tf;
  return rec.log;
}

}  // namespace

void validate(const SimConfig& cfg) {
  if (!(cfg.step > 0.0) || !(cfg.step <= cfg.replan_period))
    throw GuidanceError(Error::InvalidInput, "sim needs 0 < step <= replan_period");
  if (!(cfg.max_time > 0.0))
    throw GuidanceError(Error::InvalidInput, "sim needs max_time > 0");
  if (!(cfg.t_go_min_fraction > 0.0) || !(cfg.capture_radius > 0.0))
    throw GuidanceError(Error::InvalidInput,
                        "sim needs positive t_go_min_fraction and capture_radius");
}

double adaptive_tradeoff(TradeOff c_base, const Vec3& k_est, const Vec3& vg0_seg,
                         const Vec3& vgf) {
  return std::max(c_base.c_i + dot(k_est, vg0_seg - vgf), kEpsCi);
}

TrajectoryLog run(const BoundaryConditions& bc, const WindModel& wind, TradeOff c,
                  const SimConfig& cfg) {
  validate(cfg);
  if (!is_consistent(bc)) throw GuidanceError(Error::InvalidInput, "inconsistent boundary data");
  windguide::validate(wind);
  switch (cfg.law) {
    case GuidanceLaw::OpenLoop: return run_open_loop(bc, wind, c, cfg);
    case GuidanceLaw::ZemZev: return run_zemzev(bc, wind, c, cfg);
    case GuidanceLaw::AdaptivePiecewise: return run_piecewise(bc, wind, c, cfg);
  }
  throw GuidanceError(Error::InvalidInput, "unknown guidance law");
}

TrajectoryLog run_piecewise(const BoundaryConditions& bc, const WindModel& field, TradeOff c_base,
                            const SimConfig& cfg) {
  validate(cfg);
  if (cfg.law != GuidanceLaw::AdaptivePiecewise)
    throw GuidanceError(Error::InvalidInput, "run_piecewise needs law = AdaptivePiecewise");
  if (!std::holds_alternative<SpatialFieldWind>(field))
    throw GuidanceError(Error::UnsupportedWindModel,
                        "the adaptive loop replans over a spatial wind field");
  if (!is_consistent(bc) || bc.kind != ProblemKind::Rendezvous)
    throw GuidanceError(Error::InvalidInput,
                        "the adaptive loop needs rendezvous boundary data (terminal velocity)");
  if (bc.r0.z != 0.0 || bc.rf.z != 0.0 || bc.vg0.z != 0.0 || bc.vgf->z != 0.0)
    throw GuidanceError(Error::NotPlanar, "spatial wind fields are planar (z = 0)");

  const Vec3 vgf = *bc.vgf;
  State s{bc.r0, bc.vg0};
  double t = 0.0;
  double next_replan = 0.0;

  guidance::GuidanceSolution seg;
  bool have_segment = false;
  bool replan_failed_once = false;
  double seg_t0 = 0.0;
  double ci_eff = c_base.c_i;

  Recorder rec;
  const auto segment_control = [&](double tt) -> Vec3 {
    const double local = std::min(std::max(tt - seg_t0, 0.0), seg.tf);
    return seg.costates.control(local);
  };
  const auto ham = [&](double tt, const State& st) {
    if (!have_segment) return 0.0;
    const Vec3 u = segment_control(tt);
    return log_hamiltonian(ci_eff, seg.costates.p_r, u, st.v,
                           wind_rate(field, tt, st.r, st.v));
  };

  while (true) {
    if (norm(s.r - bc.rf) < cfg.capture_radius) {
      if (rec.log.samples.empty() || rec.log.samples.back().t < t)
        rec.add(field, t, s, have_segment ? segment_control(t) : Vec3{}, ham(t, s), ci_eff);
      rec.log.summary.t_arrival = t;
      rec.log.summary.position_error = norm(s.r - bc.rf);
      rec.log.summary.velocity_error = norm(s.v - vgf);
      rec.log.summary.cost = rec.log.summary.energy + c_base.c_i * t;
      rec.log.events.push_back("captured at radius " + std::to_string(cfg.capture_radius));
      return rec.log;
    }
    if (t >= cfg.max_time)
      throw GuidanceError(Error::DivergedBeyondMaxTime, "no capture before max_time");

    if (t >= next_replan - 1e-12) {
      next_replan = t + cfg.replan_period;
      // Local linear-in-time approximation of the field along the course.
      const Vec3 w_now = wind_at(field, t, s.r);
      const Vec3 w_ahead = wind_at(field, t, s.r + cfg.replan_period * s.v);
      const Vec3 k_est = (w_ahead - w_now) / cfg.replan_period;
      ci_eff = adaptive_tradeoff(c_base, k_est, s.v, vgf);
      if (ci_eff == kEpsCi)
        rec.log.events.push_back("trade-off clamped to eps at t=" + std::to_string(t));
      try {
        const auto seg_bc = BoundaryConditions::rendezvous(s.r, bc.rf, s.v, vgf);
        seg = guidance::solve_rendezvous(seg_bc, LinearInTimeWind{w_now, k_est}, {ci_eff});
        seg_t0 = t;
        have_segment = true;
        replan_failed_once = false;
      } catch (const GuidanceError& err) {
        if (err.code() != Error::NoAdmissibleRoot) throw;
        rec.log.events.push_back("replan failed (no admissible root) at t=" + std::to_string(t));
        if (!have_segment || replan_failed_once) throw;
        replan_failed_once = true;  // hold the previous command for one period
      }
    }

    if (rec.log.samples.empty())
      rec.add(field, t, s, segment_control(t), ham(t, s), ci_eff);
    const double h = std::min(cfg.step, std::max(next_replan - t, 1e-12));
    s = rk4_step(field, segment_control, t, s, h);
    t += h;
    rec.add(field, t, s, segment_control(t), ham(t, s), ci_eff);
  }
}

}  // namespace windguide::sim
