#pragma once

#include <vector>

#include "windguide/polynomial.hpp"
#include "windguide/types.hpp"
#include "windguide/wind.hpp"

namespace windguide::analysis {

/// Reference time t_r = -x0 / v_gx0; valid only when x0 * v_gx0 < 0 (initial
/// closing motion along x). Flight times are classified as K = tf / t_r.
struct ReferenceTime {
  double t_r{};
  bool valid{};
};

ReferenceTime reference_time(double x0, double v_gx0);

enum class KCategory {
  K1_ConstantVelocity,
  K2_ConstantAccel,
  K3_ZeroTerminalAccel,
  ReversalKgt3,
  Intermediate,
};

struct KClassification {
  KCategory category{KCategory::Intermediate};
  double k{};
};

/// Named category when |K - n| < 1e-9 for n in {1,2,3}; ReversalKgt3 for
/// K > 3. Throws InvalidReferenceTime when t_r is invalid.
KClassification classify_k(double tf, const ReferenceTime& tr);

struct ParetoPoint {
  double c_i{};
  double t_f{};
  double energy{};
  int branch{};        // stable label, continued across the sweep by proximity in t_f
  bool is_local_min{};  // admissible root (dP/dt > 0)
  bool critical{};      // double-root (bifurcation/branch-end) point
};

/// Flight-time / energy trade-off: for every C_I in the (sorted, >= 0) grid,
/// every positive stationary flight time with its energy. Admissible roots
/// carry is_local_min; double roots are flagged critical so branch endpoints
/// (e.g. the minimum-energy K = 3 point at C_I = 0) appear; the middle
/// (non-minimal) root is included so the three-branch trade-off structure is
/// complete. Output ordered by grid index, then t_f.
std::vector<ParetoPoint> pareto_sweep(const BoundaryConditions& bc, const WindModel& wind,
                                      const std::vector<double>& ci_grid);

/// Critical trade-off of the 1D zero-wind rendezvous (vgf = 0):
/// C_I = v0^4 / (72 x0^2); there the quartic has a double root at tf = 6 t_r.
double critical_ci_1d(double x0, double v0);

struct VelocityRoots {
  double t_v1{};  // smaller root
  double t_v2{};
};

/// Roots of the 1D quadratic velocity profile, t_v = (p_vx0 -+ sqrt(2 C_I))/p_rx,
/// returned ascending. Their midpoint p_vx0/p_rx is the zero-acceleration
/// instant. Throws ZeroJerkCostate when p_rx = 0.
VelocityRoots velocity_quadratic_roots(const Costates& costates, TradeOff c);

/// Existence limit of the minimum-energy problem (C_I = 0, constant wind)
/// under the symmetric terminal-velocity convention: the largest initial
/// heading for which a finite optimal tf exists.
struct HeadingAnalysis {
  double alpha0{};           // leading P(K) coefficient at the critical point (= -4)
  double theta_max{};        // [rad]
  double v_gy0_max{};        // critical cross-velocity for the given |v_gx0|
  double k_critical{};       // K at the double root (= 1.5)
};

HeadingAnalysis max_heading(ProblemKind kind, double v_gx0_magnitude = 1.0);

enum class SweepParam { Vgy0, InvCI, WindK };

/// Fixed scenario data for root sweeps. Cross-velocity sweeps tie the
/// rendezvous terminal velocity to the swept parameter through the
/// existence-analysis convention vxf = vx0, vyf = -vy0; the other sweeps use
/// the fixed vgf below. Intercepts leave the terminal velocity free.
struct SweepScenario {
  ProblemKind kind{ProblemKind::Intercept};
  double x0{3.0};
  double v_gx0{-1.0};
  double v_gy0{0.0};   // fixed value when not swept
  double c_i{1e-6};    // fixed value when not swept
  Vec3 wind_k{};       // fixed wind acceleration when not swept (along x when swept)
  Vec3 vgf{};          // rendezvous terminal velocity for non-Vgy0 sweeps
};

struct RootSweepRow {
  double param{};
  std::vector<double> positive_roots;   // ascending
  std::vector<double> roots_in_tr;      // same roots in multiples of t_r (when valid)
  bool bifurcation{};                   // positive-root count changed at this row
};

struct RootSweepResult {
  std::vector<RootSweepRow> rows;
  std::vector<double> bifurcation_params;  // midpoints of the transition intervals
  ReferenceTime t_r;
};

RootSweepResult root_sweep(SweepParam param, const std::vector<double>& grid,
                           const SweepScenario& fixed);

}  // namespace windguide::analysis
