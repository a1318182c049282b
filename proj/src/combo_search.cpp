#include "selfdual/combo_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include "selfdual/error.hpp"
#include "selfdual/simplex.hpp"

namespace selfdual {

double limit_profile(int dim, double X) { return X * (X - 0.5 * dim - 1.0); }

GaussianCombo::GaussianCombo(int dim, std::vector<ComboNode> nodes, double limit_coeff)
    : dim_(dim), nodes_(std::move(nodes)), limit_coeff_(limit_coeff) {
  if (dim < 1) throw std::invalid_argument("GaussianCombo: dimension must be >= 1");
  if (!std::isfinite(limit_coeff)) {
    throw std::invalid_argument("GaussianCombo: limit coefficient must be finite");
  }
  std::sort(nodes_.begin(), nodes_.end(),
            [](const ComboNode& x, const ComboNode& y) { return x.a < y.a; });
  bool any_nonzero = limit_coeff != 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!std::isfinite(nodes_[i].t)) {
      throw std::invalid_argument("GaussianCombo: weights must be finite");
    }
    if (i > 0 && nodes_[i].a == nodes_[i - 1].a) {
      throw std::invalid_argument("GaussianCombo: duplicate node a = " +
                                  std::to_string(nodes_[i].a));
    }
    params_.emplace_back(nodes_[i].a, dim);
    any_nonzero = any_nonzero || nodes_[i].t != 0.0;
  }
  if (!any_nonzero) throw std::invalid_argument("GaussianCombo: all coefficients are zero");
}

double GaussianCombo::dominant_coeff() const {
  return nodes_.empty() ? limit_coeff_ : nodes_.back().t;
}

double GaussianCombo::scale() const {
  double s = std::abs(limit_coeff_);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    s += std::abs(nodes_[i].t) * (1.0 + params_[i].a_pow_d());
  }
  return s;
}

GaussianCombo GaussianCombo::scaled(double factor) const {
  std::vector<ComboNode> n = nodes_;
  for (auto& node : n) node.t *= factor;
  return GaussianCombo(dim_, std::move(n), limit_coeff_ * factor);
}

double GaussianCombo::value(double X) const {
  double v = limit_coeff_ != 0.0 ? limit_coeff_ * limit_profile(dim_, X) : 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].t != 0.0) v += nodes_[i].t * eval_H(params_[i], X);
  }
  return v;
}

double GaussianCombo::derivative(double X) const {
  double v = limit_coeff_ * (2.0 * X - 0.5 * dim_ - 1.0);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].t != 0.0) v += nodes_[i].t * eval_dH(params_[i], X);
  }
  return v;
}

double GaussianCombo::second_derivative_bound(double lo, double hi) const {
  double b = 2.0 * std::abs(limit_coeff_);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const double k = params_[i].k();
    const double r = k / (1.0 + k);
    b += std::abs(nodes_[i].t) *
         (params_[i].a_pow_d() * k * k * std::exp(-k * lo) + r * r * std::exp(r * hi));
  }
  return b * (1.0 + 1e-12);
}

// ---------------------------------------------------------------------------
// Tail certification

namespace {

struct NegativeTerm {
  double coeff;  // > 0
  double rate;   // exponential rate
  int power;     // 0 or 2: coeff * X^power * e^{rate X}
};

std::vector<NegativeTerm> negative_terms(const GaussianCombo& combo) {
  std::vector<NegativeTerm> out;
  const auto nodes = combo.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const GaussianParams p(nodes[i].a, combo.dim());
    const double t = nodes[i].t;
    const double k = p.k();
    const double ad = p.a_pow_d();
    const bool dominant = i + 1 == nodes.size();
    if (t < 0.0) {
      out.push_back({-t * ad, -k, 0});
      if (!dominant) out.push_back({-t, k / (1.0 + k), 0});
    } else if (t > 0.0) {
      out.push_back({t * (1.0 + ad), 0.0, 0});
    }
  }
  const double tl = combo.limit_coeff();
  if (tl < 0.0) {
    out.push_back({-tl, 0.0, 2});
  } else if (tl > 0.0) {
    const double half = 0.5 * (0.5 * combo.dim() + 1.0);
    out.push_back({tl * half * half, 0.0, 0});
  }
  return out;
}

}  // namespace

double tail_threshold(const GaussianCombo& combo) {
  const double dom = combo.dominant_coeff();
  if (!(dom > 0.0)) throw SearchError("negative at infinity: dominant coefficient <= 0");
  if (combo.nodes().empty()) return limit_X(combo.dim());

  const GaussianParams top(combo.nodes().back().a, combo.dim());
  const double r_dom = top.k() / (1.0 + top.k());
  const auto terms = negative_terms(combo);
  if (terms.empty()) return 0.0;

  // Each term must satisfy dom e^{r_dom X} > N * term(X); then the sum of
  // all negative terms stays below the dominant exponential.
  const double log_n = std::log(static_cast<double>(terms.size()) * (1.0 + 1e-9));
  double x_tail = 0.0;
  for (const auto& term : terms) {
    const double gap = r_dom - term.rate;
    const double K = log_n + std::log(term.coeff) - std::log(dom);
    double xj = 0.0;
    if (term.power == 0) {
      xj = std::max(0.0, K / gap);
    } else {
      // g(X) = gap X - p log X - K is increasing for X > p / gap.
      auto g = [&](double X) { return gap * X - term.power * std::log(X) - K; };
      double lo = std::max(1.0, term.power / gap);
      double hi = lo;
      while (g(hi) <= 0.0) {
        lo = hi;
        hi *= 2.0;
      }
      if (g(lo) > 0.0) {
        hi = lo;
      } else {
        for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
          const double mid = 0.5 * (lo + hi);
          (g(mid) > 0.0 ? hi : lo) = mid;
        }
      }
      xj = hi;
    }
    x_tail = std::max(x_tail, xj);
  }
  return x_tail * (1.0 + 1e-12) + 1e-12;
}

namespace {

struct Screen {
  std::optional<double> failure;  // where F < floor or screening gave up
  double certified_from = 0.0;    // F >= floor holds on [certified_from, hi]
  std::int64_t evaluations = 0;
};

// Taylor screening of F >= floor on [lo, hi] using endpoint values, slopes and
// a second-derivative bound, worked right to left. Stops at the rightmost
// failure.
Screen certify_interval(const GaussianCombo& combo, double lo, double hi, double floor) {
  Screen out;
  out.certified_from = lo;
  if (!(hi > lo)) return out;
  std::vector<std::pair<double, double>> stack{{lo, hi}};
  while (!stack.empty()) {
    auto [u, v] = stack.back();
    stack.pop_back();
    const double fv = combo.value(v);
    const double fu = combo.value(u);
    out.evaluations += 2;
    out.certified_from = v;
    if (fv < floor) {
      out.failure = v;
      return out;
    }
    if (fu < floor) {
      out.failure = u;
      return out;
    }
    const double du = combo.derivative(u);
    const double dv = combo.derivative(v);
    const double m2 = combo.second_derivative_bound(u, v);
    const double w = v - u;
    const double left = std::min(fu, fu + du * w - 0.5 * m2 * w * w);
    const double right = std::min(fv, fv - dv * w - 0.5 * m2 * w * w);
    if (std::max(left, right) >= floor) continue;
    if (w < 1e-12 * (1.0 + u)) {
      out.failure = v;
      return out;
    }
    const double mid = 0.5 * (u + v);
    // Right half on top so the rightmost failure comes first.
    stack.push_back({u, mid});
    stack.push_back({mid, v});
  }
  out.certified_from = lo;
  return out;
}

}  // namespace

RadiusResult last_sign_change(const GaussianCombo& combo, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("last_sign_change: tol must be > 0");
  if (!(combo.dominant_coeff() > 0.0)) {
    throw SearchError("negative at infinity: dominant coefficient <= 0");
  }
  const double eps = kCertRelTol * combo.scale();
  const double x_tail = std::max(tail_threshold(combo), 1e-6);
  // Values within eps of zero are not trusted to be positive.
  auto negative = [&](double X) { return combo.value(X) < eps; };

  RadiusResult res;
  res.cert.X_tail = x_tail;
  res.cert.tolerance = 0.5 * eps;

  double R = 0.0;
  double top = x_tail;
  for (int round = 0; round < 10000; ++round) {
    const Screen screen = certify_interval(combo, R, top, 0.5 * eps);
    res.cert.samples_checked += screen.evaluations;
    if (!screen.failure) {
      res.R = R;
      res.sign_change = R > 0.0;
      res.cert.R = R;
      return res;
    }
    // F >= eps/2 on [top, x_tail]; the failure brackets the last crossing.
    top = screen.certified_from;
    double lo = *screen.failure;
    double hi = top;
    if (lo < hi && !negative(hi)) {
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        ++res.cert.samples_checked;
        (negative(mid) ? lo : hi) = mid;
      }
    }
    R = hi;
  }
  throw SearchError("last_sign_change: certification did not converge");
}

// ---------------------------------------------------------------------------
// Correction by the limit profile

double correction_radius(double a0, int dim, double tau, double tol) {
  const GaussianCombo combo(dim, {{a0, 1.0}}, -tau);
  return last_sign_change(combo, tol).R;
}

namespace {

template <class F>
std::pair<double, double> golden_min(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

}  // namespace

CorrectionResult minimize_correction(double a0, int dim, double tol) {
  const GaussianParams p0(a0, dim);
  const double x0 = solve_Xa(p0);
  const double x_lim = limit_X(dim);
  if (!(x0 < x_lim)) {
    throw SearchError("minimize_correction: X_a0 >= d/2 + 1, no positive multiple of "
                      "the limit profile can be subtracted");
  }

  // Largest feasible tau: H_{a0} >= tau L must hold where L > 0.
  auto ratio_at = [&](double s) {
    const double X = x_lim + std::pow(10.0, s);
    return eval_H(p0, X) / limit_profile(dim, X);
  };
  constexpr int kScan = 4000;
  const double s_lo = -6.0;
  const double s_hi = 3.0;
  int best = 0;
  double best_ratio = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kScan; ++i) {
    const double r = ratio_at(s_lo + (s_hi - s_lo) * i / kScan);
    if (r < best_ratio) {
      best_ratio = r;
      best = i;
    }
  }
  const double ds = (s_hi - s_lo) / kScan;
  const double s_best = s_lo + best * ds;
  const auto [s_star, tau_max] = golden_min(ratio_at, std::max(s_lo, s_best - ds),
                                            std::min(s_hi, s_best + ds), 1e-12);
  (void)s_star;
  const double tau_feasible = std::min(best_ratio, tau_max) * (1.0 - 1e-9);
  if (!(tau_feasible > 0.0)) {
    throw SearchError("minimize_correction: no tau > 0 keeps the correction nonnegative");
  }

  auto radius = [&](double tau) { return correction_radius(a0, dim, tau, tol); };

  // Coarse scan of R(tau) over the feasible range, then golden refinement.
  constexpr int kTauScan = 64;
  std::vector<double> r_scan(kTauScan + 1);
  int best_j = 0;
  for (int j = 0; j <= kTauScan; ++j) {
    r_scan[j] = radius(tau_feasible * j / kTauScan);
    if (r_scan[j] < r_scan[best_j]) best_j = j;
  }
  double tau_best = tau_feasible * best_j / kTauScan;
  double r_best = r_scan[best_j];
  const double t_lo = tau_feasible * std::max(0, best_j - 1) / kTauScan;
  const double t_hi = tau_feasible * std::min(kTauScan, best_j + 1) / kTauScan;
  const auto [tau_g, r_g] = golden_min(radius, t_lo, t_hi, 1e-10 * (1.0 + tau_feasible));
  if (r_g < r_best) {
    tau_best = tau_g;
    r_best = r_g;
  }
  if (!(tau_best > 0.0) || !(r_best < r_scan[0] - tol)) {
    throw SearchError("minimize_correction: no tau > 0 improves on tau = 0");
  }

  GaussianCombo combo(dim, {{a0, 1.0}}, -tau_best);
  const RadiusResult cert = last_sign_change(combo, tol);
  return CorrectionResult{tau_best, cert.R, std::move(combo), cert.cert};
}

// ---------------------------------------------------------------------------
// LP search over a fixed grid

namespace {

struct Basis {
  std::vector<double> free_nodes;  // non-dominant a values
  bool has_limit = false;
  double dominant_a = 0.0;
};

struct Trial {
  bool feasible = false;
  double margin = 0.0;
  std::optional<GaussianCombo> combo;
};

Trial solve_trial(const Basis& basis, int dim, double R, const LpConfig& cfg) {
  const int n = cfg.nodes;
  const int p = static_cast<int>(basis.free_nodes.size()) + (basis.has_limit ? 1 : 0);
  const GaussianParams dom(basis.dominant_a, dim);
  std::vector<GaussianParams> free_params;
  for (double a : basis.free_nodes) free_params.emplace_back(a, dim);

  // Dual of: max s  s.t.  (H_dom(X_j) + sum_i t_i F_i(X_j)) / sigma_j >= s,
  // s <= 1, t free. Its simplex multipliers are (t, s).
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(p + 1, n + 1);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(p + 1);
  Eigen::VectorXd c(n + 1);
  b(p) = 1.0;
  for (int j = 0; j < n; ++j) {
    const double X =
        R + 0.5 * cfg.x_span * (1.0 - std::cos(std::numbers::pi * (j + 0.5) / n));
    Eigen::VectorXd F(p);
    for (std::size_t i = 0; i < free_params.size(); ++i) F(i) = eval_H(free_params[i], X);
    if (basis.has_limit) F(p - 1) = limit_profile(dim, X);
    const double h = eval_H(dom, X);
    double sigma = std::abs(h);
    for (int i = 0; i < p; ++i) sigma = std::max(sigma, std::abs(F(i)));
    if (!(sigma > 0.0)) sigma = 1.0;
    for (int i = 0; i < p; ++i) A(i, j) = -F(i) / sigma;
    A(p, j) = 1.0;
    c(j) = h / sigma;
  }
  A(p, n) = 1.0;
  c(n) = 1.0;

  const lp::Solution sol = lp::solve_standard_form(A, b, c);
  Trial out;
  if (sol.status != lp::Status::optimal) return out;
  out.margin = sol.duals(p);
  if (out.margin < 0.0) return out;

  std::vector<ComboNode> nodes;
  for (std::size_t i = 0; i < basis.free_nodes.size(); ++i) {
    nodes.push_back({basis.free_nodes[i], sol.duals(static_cast<int>(i))});
  }
  nodes.push_back({basis.dominant_a, 1.0});
  const double tl = basis.has_limit ? sol.duals(p - 1) : 0.0;
  out.combo.emplace(dim, std::move(nodes), tl);
  out.feasible = true;
  return out;
}

}  // namespace

LpResult lp_min_radius(std::span<const double> grid, int dim, const LpConfig& cfg) {
  if (grid.empty()) throw std::invalid_argument("lp_min_radius: empty grid");
  if (dim < 1) throw std::invalid_argument("lp_min_radius: dimension must be >= 1");
  if (cfg.nodes < 2 || !(cfg.x_span > 0.0) || !(cfg.r_tol > 0.0)) {
    throw std::invalid_argument("lp_min_radius: invalid configuration");
  }

  std::vector<double> sorted(grid.begin(), grid.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Basis basis;
  for (double a : sorted) {
    if (!std::isfinite(a) || a < kLimitProfileToken) {
      throw std::invalid_argument("lp_min_radius: grid entries must be >= 1");
    }
    if (a == kLimitProfileToken) {
      basis.has_limit = true;
    } else {
      basis.free_nodes.push_back(a);
    }
  }

  if (basis.free_nodes.empty()) {
    GaussianCombo only_limit(dim, {}, 1.0);
    const RadiusResult r = last_sign_change(only_limit, cfg.cert_tol);
    return LpResult{r.R, std::move(only_limit), r.cert, 0};
  }
  basis.dominant_a = basis.free_nodes.back();
  basis.free_nodes.pop_back();

  // The dominant node alone is always a valid fallback witness.
  GaussianCombo fallback(dim, {{basis.dominant_a, 1.0}}, 0.0);
  RadiusResult fallback_cert = last_sign_change(fallback, cfg.cert_tol);
  LpResult best{fallback_cert.R, std::move(fallback), fallback_cert.cert, 0};

  if (basis.free_nodes.empty() && !basis.has_limit) return best;

  auto accept = [&](double R) {
    Trial trial = solve_trial(basis, dim, R, cfg);
    ++best.lp_solves;
    if (!trial.feasible) return false;
    RadiusResult cert;
    try {
      cert = last_sign_change(*trial.combo, cfg.cert_tol);
    } catch (const SearchError&) {
      return false;
    }
    if (cert.R > R + cfg.r_tol) return false;
    if (cert.R < best.R) {
      best.R = cert.R;
      best.combo = std::move(*trial.combo);
      best.cert = cert.cert;
    }
    return true;
  };

  double lo = 0.0;
  double hi = best.R;
  while (hi - lo > cfg.r_tol) {
    const double mid = 0.5 * (lo + hi);
    if (accept(mid)) {
      hi = std::min(mid, best.R);
    } else {
      lo = mid;
    }
  }
  return best;
}

}  // namespace selfdual
