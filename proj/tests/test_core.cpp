#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "windguide/errors.hpp"
#include "windguide/wind.hpp"

using namespace windguide;

TEST_CASE("wind_at evaluates every model") {
  SUBCASE("constant wind ignores t and r") {
    const WindModel w = ConstantWind{{1.0, 2.0, 3.0}};
    CHECK(wind_at(w, 0.0, {}) == Vec3{1.0, 2.0, 3.0});
    CHECK(wind_at(w, 17.0, {100.0, -5.0, 2.0}) == Vec3{1.0, 2.0, 3.0});
  }
  SUBCASE("cross-track shear reads r.y") {
    const WindModel w = CrossTrackShearWind{0.5};
    const Vec3 result = wind_at(w, 3.0, {0.0, 4.0, 0.0});
    CHECK(result.x == doctest::Approx(2.0));
    CHECK(result.y == 0.0);
  }
  SUBCASE("spatial field of the planar scenario") {
    // w_x = 0.04 (x - 25) y + 4.36 expands to 4.36 - 1.0 y + 0.04 xy;
    // at x = 25 the product term dies.
    SpatialFieldWind field;
    field.wx = {4.36, 0.0, -1.0, 0.0, 0.04, 0.0};
    field.wy.c00 = -5.29;
    const Vec3 w = wind_at(field, 0.0, {25.0, 10.0, 0.0});
    CHECK(w.x == doctest::Approx(4.36));
    CHECK(w.y == doctest::Approx(-5.29));
  }
  SUBCASE("linear in time") {
    const WindModel w = LinearInTimeWind{{1.0, 0.0, 0.0}, {2.0, 0.0, 0.0}};
    CHECK(wind_at(w, 3.0, {}).x == doctest::Approx(7.0));
  }
  SUBCASE("piecewise picks the active segment") {
    PiecewiseLinearWind pw;
    pw.segments.push_back({0.0, {1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}});
    pw.segments.push_back({2.0, {5.0, 0.0, 0.0}, {1.0, 0.0, 0.0}});
    const WindModel w = pw;
    CHECK(wind_at(w, 1.0, {}).x == doctest::Approx(1.0));
    CHECK(wind_at(w, 3.0, {}).x == doctest::Approx(6.0));
  }
}

TEST_CASE("wind_integrals closed forms") {
  SUBCASE("constant wind: delta and varpi vanish") {
    const WindModel w = ConstantWind{{5.0, 0.0, 0.0}};
    const auto wi = wind_integrals(w, 2.0);
    CHECK(wi.i_wf.x == doctest::Approx(10.0));
    CHECK(wi.delta_wf == Vec3{});
    CHECK(wi.varpi_f == Vec3{});
  }
  SUBCASE("linear in time: delta = k tf, varpi = k tf^2/2") {
    const WindModel w = LinearInTimeWind{{1.0, 0.0, 0.0}, {2.0, 0.0, 0.0}};
    const auto wi = wind_integrals(w, 3.0);
    CHECK(wi.i_wf.x == doctest::Approx(12.0));
    CHECK(wi.delta_wf.x == doctest::Approx(6.0));
    CHECK(wi.varpi_f.x == doctest::Approx(9.0));
  }
  SUBCASE("spatial field is rejected") {
    CHECK_THROWS_AS((void)wind_integrals(SpatialFieldWind{}, 1.0), GuidanceError);
    try {
      (void)wind_integrals(SpatialFieldWind{}, 1.0);
    } catch (const GuidanceError& e) {
      CHECK(e.code() == Error::UnsupportedWindModel);
    }
  }
  SUBCASE("shear is not time-integrable either") {
    CHECK_THROWS_AS((void)wind_integrals(CrossTrackShearWind{1.0}, 1.0), GuidanceError);
  }
  SUBCASE("two-segment piecewise matches quadrature") {
    PiecewiseLinearWind pw;
    pw.segments.push_back({0.0, {1.0, -2.0, 0.5}, {0.3, 0.0, -1.0}});
    pw.segments.push_back({1.5, {4.0, 1.0, 0.0}, {-0.2, 0.7, 0.0}});
    const WindModel w = pw;
    const double tf = 4.0;
    const auto wi = wind_integrals(w, tf);
    const Vec3 iw_ref =
        oracles::integrate_vec([&](double t) { return wind_at(w, t, {}); }, 0.0, tf);
    CHECK(norm(wi.i_wf - iw_ref) < 1e-10);
  }
}

TEST_CASE("wind model validation") {
  PiecewiseLinearWind bad;
  bad.segments.push_back({0.0, {}, {}});
  bad.segments.push_back({0.0, {}, {}});  // not strictly increasing
  CHECK_THROWS_AS(validate(WindModel{bad}), GuidanceError);

  PiecewiseLinearWind late;
  late.segments.push_back({1.0, {}, {}});  // must start at t = 0
  CHECK_THROWS_AS(validate(WindModel{late}), GuidanceError);

  CHECK_THROWS_AS(validate(WindModel{ConstantWind{{1.0, std::nan(""), 0.0}}}), GuidanceError);
}

TEST_CASE("linear-in-time identities hold exactly") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const Vec3 w0 = oracles::random_vec(rng, 10.0);
    const Vec3 k = oracles::random_vec(rng, 3.0);
    std::uniform_real_distribution<double> td(0.1, 20.0);
    const double tf = td(rng);
    const auto wi = wind_integrals(LinearInTimeWind{w0, k}, tf);
    CHECK(norm(wi.varpi_f - (0.5 * tf * tf) * k) <= 1e-12 * (1.0 + norm(wi.varpi_f)));
    CHECK(norm(wi.delta_wf - tf * k) <= 1e-12 * (1.0 + norm(wi.delta_wf)));
  }
}

TEST_CASE("varpi identity and quadrature agreement on random piecewise models") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<int> nseg(1, 5);
  std::uniform_real_distribution<double> dt(0.2, 2.0);
  std::uniform_real_distribution<double> tfd(0.5, 8.0);
  for (int trial = 0; trial < 100; ++trial) {
    PiecewiseLinearWind pw;
    double t0 = 0.0;
    const int n = nseg(rng);
    for (int i = 0; i < n; ++i) {
      pw.segments.push_back({t0, oracles::random_vec(rng, 8.0), oracles::random_vec(rng, 2.0)});
      t0 += dt(rng);
    }
    const WindModel w = pw;
    validate(w);
    const double tf = tfd(rng);
    const auto wi = wind_integrals(w, tf);

    // varpi = I_w - w(0) tf, exactly by construction
    const Vec3 varpi_def = wi.i_wf - tf * wind_at(w, 0.0, {});
    CHECK(norm(wi.varpi_f - varpi_def) <= 1e-12 * (1.0 + norm(wi.varpi_f)));

    const Vec3 iw_ref =
        oracles::integrate_vec([&](double t) { return wind_at(w, t, {}); }, 0.0, tf, 1e-13);
    CHECK(norm(wi.i_wf - iw_ref) <= 1e-9 * (1.0 + norm(wi.i_wf)));
  }
}

TEST_CASE("boundary condition consistency") {
  const auto rdv = BoundaryConditions::rendezvous({1, 0, 0}, {}, {-1, 0, 0}, {});
  CHECK(is_consistent(rdv));
  const auto icp = BoundaryConditions::intercept({1, 0, 0}, {}, {-1, 0, 0});
  CHECK(is_consistent(icp));

  BoundaryConditions broken = rdv;
  broken.vgf.reset();  // rendezvous without terminal velocity
  CHECK_FALSE(is_consistent(broken));
}
