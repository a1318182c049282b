// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "selfdual/bounds.hpp"
#include "selfdual/combo_search.hpp"
#include "selfdual/gaussian_core.hpp"
#include "selfdual/hermite_basis.hpp"
#include "selfdual/number_fields.hpp"
#include "selfdual/series_verify.hpp"

using namespace selfdual;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(const std::string& id, const std::string& name, double limit_ms,
            const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = ms < limit_ms;
  const bool ok = o.pass && in_time;
  if (!ok) ++failures;
  std::printf("%s %-4s %-34s %9.1f ms (limit %.0f)%s | %s\n", ok ? "PASS" : "FAIL", id.c_str(),
              name.c_str(), ms, limit_ms, in_time ? "" : " OVER TIME", o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

bool near(double x, double target, double tol) { return std::abs(x - target) <= tol; }

double combo_direct(const GaussianCombo& g, double X) {
  double v = g.limit_coeff() * X * (X - 0.5 * g.dim() - 1.0);
  for (const auto& n : g.nodes()) v += n.t * static_cast<double>(oracle::profile(n.a, g.dim(), X));
  return v;
}

}  // namespace

int main() {
  report("1", "lambda constants", 10.0, [] {
    const LambdaConstant l = lambda_const();
    const LowerBoundD1 b = lower_bound_d1();
    const bool ok = near(l.lambda, 0.2172, 1e-4) && near(b.A_min, 0.4107, 1e-4) &&
                    near(b.B1_min, 0.1687, 1e-4);
    return Outcome{ok, fmt("lambda=%.6f", l.lambda) + fmt(" A=%.6f B1=%.6f", b.A_min, b.B1_min)};
  });

  report("2a", "X_2 (d=1) vs 1.4534 +- 1e-3", 10.0, [] {
    const double X = solve_Xa(GaussianParams(2.0, 1));
    return Outcome{near(X, 1.4534, 1e-3), fmt("X_2=%.10f", X)};
  });
  const double s2 = std::sqrt(2.0);
  const double X_closed = 2.0 * std::log(0.5 * s2 * (1.0 + std::sqrt(1.0 + 2.0 * s2)));
  report("2b", "X_sqrt2 vs closed form +- 1e-4", 10.0, [&] {
    const double X = solve_Xa(GaussianParams(s2, 1));
    return Outcome{near(X, X_closed, 1e-4), fmt("X=%.10f closed=%.10f", X, X_closed)};
  });
  report("2c", "X_sqrt2 vs literal 1.47537 +- 1e-4", 10.0, [&] {
    const double X = solve_Xa(GaussianParams(s2, 1));
    return Outcome{near(X, 1.47537, 1e-4),
                   fmt("X=%.10f; the closed form itself gives %.10f", X, X_closed)};
  });
  report("2d", "X_sqrt2 vs four-digit 1.4749 +- 1e-2", 10.0, [&] {
    const double X = solve_Xa(GaussianParams(s2, 1));
    return Outcome{near(X, 1.4749, 1e-2), fmt("X=%.10f", X)};
  });

  report("3", "a -> 1 limits, d=2 grid above 2", 1000.0, [] {
    bool ok = true;
    std::string detail;
    for (int d : {1, 2, 3, 8}) {
      const double X = solve_Xa(GaussianParams(1.0 + 1e-4, d));
      ok = ok && near(X, 0.5 * d + 1.0, 1e-2);
      detail += fmt("d=%.0f:%.6f ", d, X);
    }
    double min_X = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 100; ++i) min_X = std::min(min_X, solve_Xa(GaussianParams(1.0 + 0.03 * i, 2)));
    ok = ok && min_X > 2.0;
    return Outcome{ok, detail + fmt("min_{d=2 grid} X=%.9f", min_X)};
  });

  report("4", "family minimizer in [2.0, 2.15]", 1000.0, [] {
    const FamilyMinimum m = minimize_Xa(1);
    // Independent check of the location with the long-double root oracle.
    double best_a = 0.0;
    double best_X = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 2000; ++i) {
      const double a = 1.5 + i * 1e-3 * 0.5;
      const double X = oracle::root_of_profile(a, 1);
      if (X < best_X) {
        best_X = X;
        best_a = a;
      }
    }
    return Outcome{m.a >= 2.0 && m.a <= 2.15,
                   fmt("argmin a=%.6f X=%.9f", m.a, m.X) + fmt("; oracle scan a=%.4f X=%.9f", best_a, best_X)};
  });

  report("5", "exact series identities", 100.0, [] {
    int passed = 0;
    int total = 0;
    std::string failed;
    for (const auto& c : run_identity_checks(4)) {
      ++total;
      if (c.passed) ++passed;
      else failed += " [" + c.name + "]";
    }
    const P56 p = p56_check();
    const bool p56 = p.p5 == 0 && p.p6 == mpq_class(-4, 45);
    return Outcome{passed == total && p56, std::to_string(passed) + "/" + std::to_string(total) +
                                               " identities; p5=" + p.p5.get_str() +
                                               " p6=" + p.p6.get_str() + failed};
  });

  report("6", "Hermite two-mode value, monotone search", 5000.0, [] {
    const double v = combo_pi_a2(HermiteCombo({0.0, 1.0}).projected());
    bool ok = near(v, 1.5, 1e-9) && v <= 3.0;
    std::string detail = fmt("{h0,h4} piA^2=%.12f; search:", v);
    double prev = std::numeric_limits<double>::infinity();
    for (int M = 1; M <= 4; ++M) {
      const double p = hermite_search(M).pi_a2;
      ok = ok && p <= prev;
      prev = p;
      detail += fmt(" %.9f", p);
    }
    return Outcome{ok, detail};
  });

  report("7a", "LP grid {L,2,2.08,3}: R/pi <= 0.41", 60000.0, [] {
    const std::vector<double> grid{kLimitProfileToken, 2.0, 2.08, 3.0};
    const LpResult r = lp_min_radius(grid, 1);
    const double sampled = oracle::last_negative_crossing(
        [&](double X) { return combo_direct(r.combo, X); }, 1e-9, 40.0, 400000);
    const bool ok = r.R / oracle::kPi <= 0.41 && near(sampled, r.R, 1e-6);
    return Outcome{ok, fmt("R=%.9f R/pi=%.6f", r.R, r.R / oracle::kPi) +
                           fmt(" A=%.6f sampled R=%.9f", radius_from_X(r.R), sampled)};
  });
  report("7b", "correction at a0=2: R = 1.25 +- 0.04", 60000.0, [] {
    const CorrectionResult c = minimize_correction(2.0, 1);
    const double sampled = oracle::last_negative_crossing(
        [&](double X) { return combo_direct(c.combo, X); }, 1e-9, 60.0, 400000);
    return Outcome{near(c.R, 1.25, 0.04),
                   fmt("R=%.9f tau=%.9f", c.R, c.tau) + fmt("; sampled R=%.9f", sampled)};
  });

  report("8", "volume bound and ceiling", 1000.0, [] {
    bool ok = lower_bound_volume(1) == 1.0 / 16.0;
    for (int d = 1; d <= 64; ++d) ok = ok && lower_bound_volume(d) > d / (2.0 * oracle::kPi * std::exp(1.0));
    double worst = -std::numeric_limits<double>::infinity();
    for (int d = 1; d <= 16; ++d) {
      std::vector<Effort> efforts{Effort::family, Effort::correction, Effort::lp};
      if (d == 1) efforts.push_back(Effort::hermite);
      for (Effort e : efforts) {
        const BoundReport r = upper_bound_assembly(d, e);
        worst = std::max(worst, r.upper - analytic_ceiling(d));
      }
    }
    ok = ok && worst <= 1e-9;
    return Outcome{ok, fmt("max(upper - ceiling)=%.3e", worst)};
  });

  report("9", "self-duality by quadrature", 5000.0, [] {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double y = 0.05 * i;
      for (double a : {1.5, 2.0}) {
        const double ft = oracle::fourier_1d([a](double x) { return eval_g(GaussianParams(a, 1), std::abs(x)); }, y);
        worst = std::max(worst, std::abs(ft - eval_g(GaussianParams(a, 1), y)));
      }
      const double ft2 = oracle::fourier_2d_radial(
          [](double r2) { return eval_g(GaussianParams(2.0, 2), std::sqrt(r2)); }, y);
      worst = std::max(worst, std::abs(ft2 - eval_g(GaussianParams(2.0, 2), y)));
      const double fth = oracle::fourier_1d([](double x) { return eigenfunction(4, x); }, y);
      worst = std::max(worst, std::abs(fth - eigenfunction(4, y)));
    }
    return Outcome{worst <= 1e-8, fmt("max |F f - f| = %.3e over 50 points", worst)};
  });

  report("10", "number-field calculators", 100.0, [] {
    const Prop1Margin q = prop1_margin(NumberFieldParams(1, mpz_class(1)), analytic_ceiling(1));
    bool ok = q.verdict == Prop1Verdict::no_real_zero_certified;
    double drift = 0.0;
    const double base = std::log(23.0) / 2.0;
    for (int m = 0; m <= 6; ++m) {
      const TowerLevel t = tower(2, mpz_class(23), 3, m);
      drift = std::max(drift, std::abs(t.log_disc / static_cast<double>(t.degree) - base));
    }
    ok = ok && drift <= 1e-12;
    double prev = std::numeric_limits<double>::infinity();
    bool decreasing = true;
    for (int D = 1; D <= 1000; ++D) {
      const double v = prop1_margin(NumberFieldParams(4, mpz_class(D)), 1.0).value;
      decreasing = decreasing && v < prev;
      prev = v;
    }
    ok = ok && decreasing;
    return Outcome{ok, fmt("Q value=%.6f", q.value) + fmt(" tower drift=%.3e decreasing=%.0f", drift, decreasing)};
  });

  report("11", "property suites", 120000.0, [] {
    constexpr long kBudget = 1000000;
    std::mt19937_64 rng(20261015);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::string detail;
    bool ok = true;

    // Convexity of H_a on random triples.
    long bad_convex = 0;
    for (long i = 0; i < kBudget; ++i) {
      const double a = 1.0 + 1e-6 + 5.0 * u01(rng);
      const int d = 1 + static_cast<int>(8 * u01(rng));
      const GaussianParams p(a, d);
      const double x1 = 10.0 * u01(rng);
      const double x2 = 10.0 * u01(rng);
      const double t = u01(rng);
      const double lhs = eval_H(p, t * x1 + (1 - t) * x2);
      const double rhs = t * eval_H(p, x1) + (1 - t) * eval_H(p, x2);
      const double slack = 1e-12 * (std::abs(eval_H(p, x1)) + std::abs(eval_H(p, x2)) + 1e-300);
      if (lhs > rhs + slack) ++bad_convex;
    }
    ok = ok && bad_convex == 0;
    detail += "convexity violations=" + std::to_string(bad_convex);

    // Positive scaling leaves radii unchanged.
    long samples = 0;
    int scale_bad = 0;
    int scale_trials = 0;
    std::normal_distribution<double> nt;
    while (samples < kBudget) {
      std::vector<ComboNode> nodes;
      for (int i = 0; i < 3; ++i) nodes.push_back({1.1 + 2.5 * u01(rng), nt(rng)});
      nodes.push_back({3.8, 1.0});
      GaussianCombo g(1, nodes, nt(rng));
      const RadiusResult r = last_sign_change(g);
      const double k = std::exp(8.0 * (u01(rng) - 0.5));
      const RadiusResult rk = last_sign_change(g.scaled(k));
      samples += r.cert.samples_checked + rk.cert.samples_checked;
      ++scale_trials;
      if (std::abs(r.R - rk.R) > 1e-9 * (1.0 + r.R)) ++scale_bad;
    }
    ok = ok && scale_bad == 0;
    detail += "; scaling " + std::to_string(scale_bad) + "/" + std::to_string(scale_trials) + " off";

    // Refining the LP grid never increases the certified radius.
    const std::vector<std::vector<double>> chain{
        {2.0}, {kLimitProfileToken, 2.0}, {kLimitProfileToken, 2.0, 3.0}, {kLimitProfileToken, 2.0, 2.08, 3.0}};
    double prev = std::numeric_limits<double>::infinity();
    bool mono = true;
    const double r_tol = LpConfig{}.r_tol;
    detail += "; LP chain";
    for (const auto& g : chain) {
      const double R = lp_min_radius(g, 1).R;
      mono = mono && R <= prev + r_tol;
      prev = R;
      detail += fmt(" %.6f", R);
    }
    ok = ok && mono;

    // Certificates: a combination certified with radius R is nonnegative beyond it.
    long cert_bad = 0;
    long cert_samples = 0;
    int cert_trials = 0;
    while (cert_samples < kBudget) {
      std::vector<ComboNode> nodes;
      for (int i = 0; i < 3; ++i) nodes.push_back({1.1 + 2.5 * u01(rng), nt(rng)});
      nodes.push_back({3.8, 1.0});
      const GaussianCombo g(1 + cert_trials % 3, nodes, nt(rng));
      const RadiusResult r = last_sign_change(g);
      const double hi = std::max(2.0 * r.cert.X_tail, r.R + 10.0);
      const double tol = kCertRelTol * g.scale() * 10.0;
      for (int i = 0; i < 10000; ++i) {
        const double X = r.R + 1e-9 + (hi - r.R) * u01(rng);
        if (g.value(X) < -tol) ++cert_bad;
      }
      cert_samples += 10000;
      ++cert_trials;
    }
    ok = ok && cert_bad == 0;
    detail += "; certificate violations=" + std::to_string(cert_bad) + " over " +
              std::to_string(cert_trials) + " combos";
    return Outcome{ok, detail};
  });

  std::printf("%s: %d criterion line(s) failed\n", failures == 0 ? "ALL PASS" : "SUMMARY", failures);
  return failures == 0 ? 0 : 1;
}
