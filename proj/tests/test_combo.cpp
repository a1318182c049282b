#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "selfdual/combo_search.hpp"
#include "selfdual/error.hpp"
#include "selfdual/gaussian_core.hpp"

using namespace selfdual;

namespace {

double direct_value(const GaussianCombo& g, double X) {
  double v = g.limit_coeff() * X * (X - 0.5 * g.dim() - 1.0);
  for (const auto& n : g.nodes()) v += n.t * static_cast<double>(oracle::profile(n.a, g.dim(), X));
  return v;
}

double sampled_radius(const GaussianCombo& g, double hi) {
  return oracle::last_negative_crossing([&](double X) { return direct_value(g, X); }, 1e-9, hi,
                                        400000);
}

}  // namespace

TEST_CASE("construction rules") {
  CHECK_THROWS_AS(GaussianCombo(1, {{2.0, 1.0}, {2.0, 3.0}}), std::invalid_argument);
  CHECK_THROWS_AS(GaussianCombo(1, {{2.0, NAN}}), std::invalid_argument);
  CHECK_THROWS_AS(GaussianCombo(1, {{0.9, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(GaussianCombo(1, {{2.0, 0.0}}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(GaussianCombo(0, {{2.0, 1.0}}), std::invalid_argument);
  const GaussianCombo g(1, {{3.0, 1.0}, {2.0, -0.5}}, 0.25);
  CHECK(g.nodes()[0].a == 2.0);
  CHECK(g.dominant_coeff() == 1.0);
}

TEST_CASE("value and derivative") {
  const GaussianCombo g(2, {{1.5, -0.3}, {2.5, 1.0}}, 0.7);
  for (double X : {0.0, 0.4, 1.9, 6.0}) {
    CHECK(g.value(X) == doctest::Approx(direct_value(g, X)).epsilon(1e-12).scale(1.0));
    const double h = 1e-6;
    CHECK(g.derivative(X) ==
          doctest::Approx((g.value(X + h) - g.value(X - h)) / (2 * h)).epsilon(1e-6));
  }
  CHECK(limit_profile(1, 1.5) == 0.0);
}

TEST_CASE("second derivative bound dominates sampled curvature") {
  const GaussianCombo g(1, {{2.0, 142.2}, {2.08, -107.9}, {3.0, 1.0}}, -40.1);
  for (double lo : {0.0, 0.8, 2.0, 5.0}) {
    const double hi = lo + 0.25;
    const double bound = g.second_derivative_bound(lo, hi);
    for (int i = 0; i <= 50; ++i) {
      const double X = lo + 0.25 * i / 50.0;
      const double h = 1e-4;
      const double d2 = (g.value(X + h) - 2 * g.value(X) + g.value(X - h)) / (h * h);
      CHECK(std::abs(d2) <= bound * (1 + 1e-6) + 1e-6);
    }
  }
}

TEST_CASE("single node radius equals the family root") {
  for (double a : {1.3, 2.0, 4.0}) {
    const GaussianCombo g(1, {{a, 2.5}});
    const RadiusResult r = last_sign_change(g);
    CHECK(r.sign_change);
    CHECK(r.R == doctest::Approx(solve_Xa(GaussianParams(a, 1))).epsilon(1e-9));
  }
}

TEST_CASE("radius agrees with dense sampling") {
  const GaussianCombo g(1, {{2.0, 142.21292018763413}, {2.08, -107.91667184227207}, {3.0, 1.0}},
                        -40.10583633705214);
  const RadiusResult r = last_sign_change(g);
  CHECK(r.R == doctest::Approx(sampled_radius(g, 40.0)).epsilon(1e-6));
  CHECK(r.cert.X_tail >= r.R);
  CHECK(r.cert.samples_checked > 0);
}

TEST_CASE("tail threshold certifies positivity beyond it") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ua(1.05, 4.0);
  std::normal_distribution<double> nt;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ComboNode> nodes;
    for (int i = 0; i < 3; ++i) nodes.push_back({ua(rng), nt(rng)});
    nodes.push_back({4.5, 1.0});
    const GaussianCombo g(1, nodes, nt(rng));
    const double T = tail_threshold(g);
    for (int i = 0; i <= 200; ++i) {
      const double X = T * (1.0 + 0.05 * i);
      const double v = direct_value(g, X);
      if (!std::isfinite(v)) break;
      CHECK(v > 0.0);
    }
  }
}

TEST_CASE("negative at infinity") {
  CHECK_THROWS_AS(last_sign_change(GaussianCombo(1, {{2.0, 1.0}, {3.0, -1.0}})), SearchError);
  CHECK_THROWS_AS(last_sign_change(GaussianCombo(1, {}, -1.0)), SearchError);
}

TEST_CASE("limit profile alone") {
  const RadiusResult r = last_sign_change(GaussianCombo(3, {}, 1.0));
  CHECK(r.R == doctest::Approx(2.5));
}

TEST_CASE("correction radius matches sampling") {
  for (double tau : {0.2, 0.8, 1.3}) {
    const double R = correction_radius(2.0, 1, tau);
    const GaussianCombo g(1, {{2.0, 1.0}}, -tau);
    CHECK(R == doctest::Approx(sampled_radius(g, 40.0)).epsilon(1e-6));
  }
}

TEST_CASE("best correction improves on the bare family member") {
  const CorrectionResult c = minimize_correction(2.0, 1);
  CHECK(c.tau > 0.0);
  CHECK(c.R < solve_Xa(GaussianParams(2.0, 1)));
  CHECK(c.R == doctest::Approx(sampled_radius(c.combo, 60.0)).epsilon(1e-6));
  // Larger tau would make the combination negative somewhere far out.
  const GaussianCombo beyond(1, {{2.0, 1.0}}, -c.tau * 1.01);
  double worst = 0.0;
  for (int i = 0; i < 20000; ++i) worst = std::min(worst, direct_value(beyond, 1.6 + 0.001 * i));
  CHECK(worst < 0.0);
}

TEST_CASE("correction needs X_a0 below the limit") {
  CHECK_THROWS_AS(minimize_correction(4.0, 1), SearchError);
}

TEST_CASE("LP on tiny grids") {
  const std::vector<double> g1{2.0};
  CHECK(lp_min_radius(g1, 1).R == doctest::Approx(solve_Xa(GaussianParams(2.0, 1))).epsilon(1e-6));
  const std::vector<double> g2{kLimitProfileToken, 2.0};
  const LpResult r2 = lp_min_radius(g2, 1);
  CHECK(r2.R == doctest::Approx(minimize_correction(2.0, 1).R).epsilon(2e-4));
  const std::vector<double> gl{kLimitProfileToken};
  CHECK(lp_min_radius(gl, 2).R == doctest::Approx(2.0));
  const std::vector<double> bad{0.5};
  CHECK_THROWS_AS(lp_min_radius(bad, 1), std::invalid_argument);
}

TEST_CASE("LP witness is consistent with its reported radius") {
  const std::vector<double> grid{kLimitProfileToken, 2.0, 2.08, 3.0};
  const LpResult r = lp_min_radius(grid, 1);
  CHECK(r.R < 1.15);
  CHECK(r.R == doctest::Approx(sampled_radius(r.combo, 40.0)).epsilon(1e-6));
  CHECK(r.lp_solves > 0);
}
