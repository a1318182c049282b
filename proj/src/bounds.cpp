#include "selfdual/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "selfdual/error.hpp"

namespace selfdual {

LambdaConstant lambda_const(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("lambda_const: tol must be > 0");
  // Stationary points of sin(u)/u solve u cos u - sin u = 0; the first
  // negative lobe has its minimum in this bracket.
  auto g = [](double u) { return u * std::cos(u) - std::sin(u); };
  double lo = std::numbers::pi + 0.1;
  double hi = 1.5 * std::numbers::pi - 0.1;
  const bool lo_negative = g(lo) < 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if ((g(mid) < 0.0) == lo_negative) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double u = 0.5 * (lo + hi);
  return {-std::sin(u) / u, u};
}

LowerBoundD1 lower_bound_d1(double lambda) {
  const double a = 1.0 / (2.0 * (1.0 + lambda));
  return {a, a * a};
}

LowerBoundD1 lower_bound_d1() { return lower_bound_d1(lambda_const().lambda); }

double log_gamma_half_integer(int d) {
  if (d < 1) throw std::invalid_argument("log_gamma_half_integer: d must be >= 1");
  // Gamma(d/2 + 1) = prod of (d/2), (d/2 - 1), ... down to 1 or 1/2.
  double log_g = (d % 2 == 0) ? 0.0 : 0.5 * std::log(std::numbers::pi);
  for (int twice = d; twice >= 1; twice -= 2) log_g += std::log(0.5 * twice);
  return log_g;
}

double lower_bound_volume(int d) {
  if (d < 1) throw std::invalid_argument("lower_bound_volume: d must be >= 1");
  // Gamma(d/2 + 1) / 2 = pi^{e} r with e = 1/2 for odd d, 0 for even d, r rational.
  const double e = (d % 2 == 1) ? 0.5 : 0.0;
  const double pi_power = std::pow(std::numbers::pi, 2.0 * e / d - 1.0);
  if (d <= 300) {
    double r = 0.5;
    for (int k = d; k >= 2; k -= 2) r *= 0.5 * k;  // (d/2)(d/2 - 1)... down to 1 or 1/2
    if (d % 2 == 1) r *= 0.5;
    return pi_power * std::pow(r, 2.0 / d);
  }
  const double log_r = log_gamma_half_integer(d) - std::log(2.0) - e * std::log(std::numbers::pi);
  return pi_power * std::exp(2.0 / d * log_r);
}

const char* to_string(Effort e) {
  switch (e) {
    case Effort::family: return "family";
    case Effort::correction: return "correction";
    case Effort::lp: return "lp";
    case Effort::hermite: return "hermite";
  }
  return "unknown";
}

std::optional<Effort> parse_effort(const std::string& s) {
  for (Effort e : {Effort::family, Effort::correction, Effort::lp, Effort::hermite}) {
    if (s == to_string(e)) return e;
  }
  return std::nullopt;
}

double recertify(const Witness& w) {
  if (const auto* g = std::get_if<GaussianCombo>(&w)) return last_sign_change(*g).R;
  return combo_pi_a2(std::get<HermiteCombo>(w));
}

namespace {

struct Candidate {
  double X;
  Witness witness;
  std::string method;
};

GaussianCombo limit_witness(int d) { return GaussianCombo(d, {}, 1.0); }

Candidate family_candidate(int d, const BoundOptions& opts) {
  if (opts.family_a) {
    GaussianCombo combo(d, {{*opts.family_a, 1.0}});
    return {last_sign_change(combo).R, combo, "family at fixed a"};
  }
  const FamilyMinimum fm = minimize_Xa(d);
  if (fm.X < limit_X(d)) {
    GaussianCombo combo(d, {{fm.a, 1.0}});
    return {last_sign_change(combo).R, combo, "family minimum over a"};
  }
  return {limit_X(d), limit_witness(d), "family limit a -> 1"};
}

void keep_better(Candidate& best, Candidate c) {
  if (c.X < best.X) best = std::move(c);
}

}  // namespace

BoundReport upper_bound_assembly(int d, Effort effort, const BoundOptions& opts) {
  if (d < 1) throw std::invalid_argument("upper_bound_assembly: d must be >= 1");
  if (effort == Effort::hermite && d != 1) {
    throw std::invalid_argument("upper_bound_assembly: hermite effort is one-dimensional only");
  }

  std::optional<Candidate> best;
  if (effort == Effort::hermite) {
    const HermiteSearchResult hs = hermite_search(opts.hermite_modes, opts.hermite);
    best = Candidate{hs.pi_a2, hs.best, "hermite eigenfunction search"};
  } else {
    best = family_candidate(d, opts);
    if (effort == Effort::correction || effort == Effort::lp) {
      const auto* fam = std::get_if<GaussianCombo>(&best->witness);
      const double a0 =
          (fam && !fam->nodes().empty()) ? fam->nodes().back().a : 2.0;
      try {
        CorrectionResult cr = minimize_correction(a0, d);
        keep_better(*best, {cr.R, cr.combo, "limit-profile correction"});
      } catch (const SearchError&) {
        // No admissible correction in this dimension; keep the family result.
      }
    }
    if (effort == Effort::lp) {
      LpResult lr = lp_min_radius(opts.lp_grid, d, opts.lp);
      keep_better(*best, {lr.R, lr.combo, "LP over fixed grid"});
    }
  }

  const bool one_dim = d == 1;
  BoundReport rep{.dim = d,
                  .lower = one_dim ? lower_bound_d1().B1_min : lower_bound_volume(d),
                  .lower_method = one_dim ? "lambda-refined" : "volume",
                  .upper = 0.0,
                  .upper_X = best->X,
                  .upper_method = best->method,
                  .effort = effort,
                  .capped = false,
                  .witness = best->witness,
                  .bbar_note = {}};
  if (rep.upper_X > limit_X(d)) {
    rep.upper_X = limit_X(d);
    rep.witness = limit_witness(d);
    rep.upper_method = "analytic ceiling (family limit a -> 1)";
    rep.capped = true;
  }
  rep.upper = rep.upper_X / std::numbers::pi;
  rep.bbar_note =
      "upper bounds the smooth-class constant Bbar_d, hence B_d <= upper; "
      "B_d >= Bbar_d / 2 relates the two classes";
  return rep;
}

}  // namespace selfdual
