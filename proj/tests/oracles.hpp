// Test-only numerical oracles, independent of the library's solution paths:
// quadrature, generic RK4, bisection, finite differences, random helpers.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <random>

#include "windguide/vec3.hpp"

namespace oracles {

using windguide::Vec3;

// Adaptive Simpson quadrature on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b, double fa,
                      double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(f, a, m, fa, flm, fm);
  const double right = simpson(f, m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, simpson(f, a, b, fa, fm, fb), tol, 40);
}

// Componentwise vector quadrature.
inline Vec3 integrate_vec(const std::function<Vec3(double)>& f, double a, double b,
                          double tol = 1e-12) {
  return {integrate([&](double t) { return f(t).x; }, a, b, tol),
          integrate([&](double t) { return f(t).y; }, a, b, tol),
          integrate([&](double t) { return f(t).z; }, a, b, tol)};
}

// Fixed-step RK4 on state (r, v); derivative gives (r', v').
struct RigidState {
  Vec3 r;
  Vec3 v;
};

using Deriv = std::function<RigidState(double, const RigidState&)>;

inline RigidState rk4_integrate(const Deriv& f, RigidState y, double t0, double t1, int steps) {
  const double h = (t1 - t0) / steps;
  double t = t0;
  for (int i = 0; i < steps; ++i) {
    const RigidState k1 = f(t, y);
    const RigidState k2 = f(t + h / 2, {y.r + h / 2 * k1.r, y.v + h / 2 * k1.v});
    const RigidState k3 = f(t + h / 2, {y.r + h / 2 * k2.r, y.v + h / 2 * k2.v});
    const RigidState k4 = f(t + h, {y.r + h * k3.r, y.v + h * k3.v});
    y = {y.r + h / 6 * (k1.r + 2 * k2.r + 2 * k3.r + k4.r),
         y.v + h / 6 * (k1.v + 2 * k2.v + 2 * k3.v + k4.v)};
    t += h;
  }
  return y;
}

// Bisection on a bracketed sign change.
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double tol = 1e-13) {
  double flo = f(lo);
  for (int i = 0; i < 200 && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((flo <= 0.0) == (fm <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double central_diff(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline Vec3 random_vec(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> d(-scale, scale);
  return {d(rng), d(rng), d(rng)};
}

// Rotation by angle about a (normalized) axis, Rodrigues form.
inline Vec3 rotate(const Vec3& v, const Vec3& axis_unit, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const Vec3 cross{axis_unit.y * v.z - axis_unit.z * v.y, axis_unit.z * v.x - axis_unit.x * v.z,
                   axis_unit.x * v.y - axis_unit.y * v.x};
  return c * v + s * cross + (1.0 - c) * dot(axis_unit, v) * axis_unit;
}

inline Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v{n(rng), n(rng), n(rng)};
  const double len = norm(v);
  return len > 1e-12 ? v / len : Vec3{1.0, 0.0, 0.0};
}

}  // namespace oracles
