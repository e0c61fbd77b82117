#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "windguide/errors.hpp"
#include "windguide/polynomial.hpp"

namespace windguide::polynomial {

namespace {

constexpr double kRootResidualTol = 1e-9;
constexpr double kCriticalBand = 1e-6;   // |dP/dt| band flagging double roots
constexpr double kTfCutoff = 1e-9;       // roots below this are the at-target degenerate
constexpr double kCostTieRel = 1e-9;

int degree(const TimePolynomial& p) {
  for (int i = 0; i < 5; ++i) {
    if (p.coeffs[static_cast<std::size_t>(i)] != 0.0) return 4 - i;
  }
  return -1;
}

double linf(const TimePolynomial& p) {
  double m = 0.0;
  for (double c : p.coeffs) m = std::max(m, std::abs(c));
  return m;
}

// Stable quadratic formula; returns roots with multiplicity.
void quadratic_roots(double a, double b, double c, std::vector<double>& out) {
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return;
  if (disc == 0.0) {
    const double r = -b / (2.0 * a);
    out.push_back(r);
    out.push_back(r);
    return;
  }
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  out.push_back(q / a);
  if (q != 0.0) out.push_back(c / q);
  else out.push_back(0.0);
}

// Magnitude bound of dP/dt at t from the coefficient sizes; the scale against
// which a derivative counts as numerically zero (double-root band).
double deriv_scale(const TimePolynomial& p, double t) {
  const double a = std::abs(t);
  const auto& c = p.coeffs;
  return std::max(1.0, 4.0 * std::abs(c[0]) * a * a * a + 3.0 * std::abs(c[1]) * a * a +
                           2.0 * std::abs(c[2]) * a + std::abs(c[3]));
}

// Newton polish with a second-derivative fallback so near-double roots
// converge too (plain Newton stalls where P' vanishes).
double polish(const TimePolynomial& p, double x) {
  const double scale = linf(p);
  for (int it = 0; it < 8; ++it) {
    const double f = p.eval(x);
    if (std::abs(f) <= 1e-15 * std::max(1.0, scale * std::pow(std::abs(x), 4.0))) break;
    const double d = p.deriv(x);
    const double d2 = p.second_deriv(x);
    double step;
    if (std::abs(d) > 1e-9 * deriv_scale(p, x)) {
      step = f / d;
    } else if (d2 != 0.0) {
      step = d / d2;  // drive toward the critical point of a double root
    } else {
      break;
    }
    if (!std::isfinite(step)) break;
    x -= step;
  }
  // A root inside the double-root band is pinned onto the critical point so
  // that the pair collapses to one value with both |P| and |P'| tiny.
  if (std::abs(p.deriv(x)) <= kCriticalBand * deriv_scale(p, x)) {
    for (int it = 0; it < 3; ++it) {
      const double d2 = p.second_deriv(x);
      if (d2 == 0.0) break;
      const double step = p.deriv(x) / d2;
      if (!std::isfinite(step)) break;
      x -= step;
    }
  }
  return x;
}

}  // namespace

double residual_scale(const TimePolynomial& p, double t) {
  return std::max(1.0, linf(p) * std::pow(std::abs(t), 4.0));
}

std::vector<double> find_real_roots(const TimePolynomial& p) {
  const int deg = degree(p);
  if (deg < 0) throw GuidanceError(Error::AllCoefficientsZero, "zero polynomial has no roots");

  std::vector<double> roots;
  const auto& c = p.coeffs;
  if (deg == 0) return roots;
  if (deg == 1) {
    roots.push_back(-c[4] / c[3]);
    return roots;
  }
  if (deg == 2) {
    quadratic_roots(c[2], c[3], c[4], roots);
    std::sort(roots.begin(), roots.end());
    return roots;
  }

  // Companion matrix of the monic polynomial; eigenvalues are the roots.
  const int n = deg;
  const std::size_t lead = static_cast<std::size_t>(4 - deg);
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double coeff_i = c[4 - static_cast<std::size_t>(i)] / c[lead];  // of t^i
    companion(i, n - 1) = -coeff_i;
    if (i > 0) companion(i, i - 1) = 1.0;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  const auto eigenvalues = solver.eigenvalues();

  for (int i = 0; i < n; ++i) {
    const double re = eigenvalues(i).real();
    const double im = eigenvalues(i).imag();
    // Double roots surface as conjugate pairs with ~sqrt(eps) imaginary parts.
    if (std::abs(im) > 1e-6 * std::max(1.0, std::abs(re))) continue;
    const double x = polish(p, re);
    if (std::abs(p.eval(x)) <= kRootResidualTol * residual_scale(p, x)) roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  // Collapse polished near-duplicates onto one representative value, keeping
  // multiplicity.
  for (std::size_t i = 1; i < roots.size(); ++i) {
    if (std::abs(roots[i] - roots[i - 1]) <= 1e-9 * (1.0 + std::abs(roots[i])))
      roots[i - 1] = roots[i];
  }
  return roots;
}

RootReport analyze_roots(const TimePolynomial& p, const CostEval& cost_eval) {
  RootReport report;
  report.all_real_roots = find_real_roots(p);

  for (std::size_t i = 0; i < report.all_real_roots.size(); ++i) {
    const double t = report.all_real_roots[i];
    if (!(t > kTfCutoff)) continue;
    if (i > 0 && report.all_real_roots[i - 1] == t) continue;  // multiplicity handled once
    const double d = p.deriv(t);
    const double band = kCriticalBand * deriv_scale(p, t);
    if (d > band) {
      report.admissible.push_back({t, cost_eval(t), true});
    } else if (std::abs(d) <= band) {
      report.critical.push_back({t, cost_eval(t), false});
    }
    // d < -band: a local maximum of the cost, listed in all_real_roots only.
  }

  for (std::size_t i = 0; i < report.admissible.size(); ++i) {
    if (!report.global_best) {
      report.global_best = i;
      continue;
    }
    const double best = report.admissible[*report.global_best].cost;
    const double tol = kCostTieRel * std::max(1.0, std::abs(best));
    if (report.admissible[i].cost < best - tol) report.global_best = i;
    // ties keep the earlier (smaller tf) entry
  }
  return report;
}

RootReport solve_roots(const TimePolynomial& p, const CostEval& cost_eval) {
  RootReport report = analyze_roots(p, cost_eval);
  if (report.admissible.empty()) {
    throw GuidanceError(Error::NoAdmissibleRoot,
                        "no positive real root with increasing polynomial; with C_I = 0 the "
                        "flight-time polynomial degenerates and can lose its positive roots "
                        "beyond the critical initial heading");
  }
  return report;
}

}  // namespace windguide::polynomial
