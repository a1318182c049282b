#include "selfdual/hermite_basis.hpp"

#include <gmpxx.h>

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "selfdual/error.hpp"
#include "selfdual/parallel.hpp"

namespace selfdual {

namespace {

void check_degree(int n) {
  if (n < 0 || n > kMaxHermiteDegree) {
    throw std::invalid_argument("Hermite degree " + std::to_string(n) +
                                " outside [0, " + std::to_string(kMaxHermiteDegree) + "]");
  }
}

const double kSqrt2Pi = std::sqrt(2.0 * std::numbers::pi);

template <typename T>
T horner(const std::vector<T>& p, T x) {
  T v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

std::vector<double> hermite_coefficients_impl(int n);

const std::vector<double>& cached_coefficients(int n) {
  static const std::vector<std::vector<double>> table = [] {
    std::vector<std::vector<double>> t;
    for (int k = 0; k <= kMaxHermiteDegree; ++k) t.push_back(hermite_coefficients_impl(k));
    return t;
  }();
  return table[n];
}

const std::vector<long double>& cached_coefficients_long(int n);

// Polynomial factor in v = u^2 after dividing out the root at v = 0.
template <typename T>
std::vector<T> reduced_factor(const HermiteCombo& projected) {
  const auto& c = projected.coeffs();
  const int M = projected.modes();
  std::vector<T> q(2 * M + 1, T(0));
  for (int m = 0; m <= M; ++m) {
    if (c[m] == 0.0) continue;
    if constexpr (std::is_same_v<T, double>) {
      const auto& h = cached_coefficients(4 * m);
      for (int j = 0; j <= 2 * m; ++j) q[j] += c[m] * h[2 * j];
    } else {
      const auto& h = cached_coefficients_long(4 * m);
      for (int j = 0; j <= 2 * m; ++j) q[j] += T(c[m]) * h[2 * j];
    }
  }
  std::vector<T> r(q.begin() + 1, q.end());
  while (!r.empty() && r.back() == T(0)) r.pop_back();
  return r;
}

// Degree bound of the polynomial factor in v = u^2.
constexpr int kMaxFactorDegree = kMaxHermiteDegree / 2;
template <typename T>
using Coeffs = std::array<T, kMaxFactorDegree + 1>;

// Coefficients of r(a + w) in powers of w.
template <typename T>
Coeffs<T> taylor_shift(const std::vector<T>& r, T a) {
  Coeffs<T> c{};
  std::copy(r.begin(), r.end(), c.begin());
  const int n = static_cast<int>(r.size()) - 1;
  for (int i = 0; i < n; ++i) {
    for (int k = n - 1; k >= i; --k) c[k] += a * c[k + 1];
  }
  return c;
}

template <typename T>
T magnitude(const std::vector<T>& r, T v) {
  T m = 0;
  for (auto it = r.rbegin(); it != r.rend(); ++it) m = m * v + std::abs(*it);
  return m;
}

// Values below this fraction of sum |r_i| v^i are not trusted to be positive;
// roughly 450 units in the last place.
template <typename T>
constexpr T kTrust = 450 * std::numeric_limits<T>::epsilon();
constexpr double kTrustRel = kTrust<double>;

bool positive_beyond(const std::vector<double>& r, double a) {
  const Coeffs<double> c = taylor_shift(r, a);
  if (!(c[0] >= kTrustRel * magnitude(r, a))) return false;
  return std::all_of(c.begin() + 1, c.begin() + r.size(), [](double x) { return x >= 0.0; });
}

std::optional<double> eigen_candidate(const std::vector<double>& r) {
  const int n = static_cast<int>(r.size()) - 1;
  std::vector<double> roots;
  if (n == 1) {
    roots.push_back(-r[0] / r[1]);
  } else {
    using Companion = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxFactorDegree,
                                    kMaxFactorDegree>;
    Companion companion = Companion::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -r[i] / r[n];
    Eigen::EigenSolver<Companion> solver(companion, false);
    const auto ev = solver.eigenvalues();
    for (int i = 0; i < n; ++i) {
      const double re = ev(i).real();
      if (std::abs(ev(i).imag()) < 1e-6 * (1.0 + std::abs(re))) roots.push_back(re);
    }
  }
  std::vector<double> deriv(n);
  for (int i = 1; i <= n; ++i) deriv[i - 1] = i * r[i];
  double best = -1.0;
  for (double x : roots) {
    for (int it = 0; it < 3; ++it) {
      const double d = horner(deriv, x);
      if (d == 0.0) break;
      const double nx = x - horner(r, x) / d;
      if (!std::isfinite(nx) || std::abs(nx - x) > 1e-6 * (1.0 + std::abs(x))) break;
      x = nx;
    }
    if (x > 0.0 && std::isfinite(x) && horner(r, x * (1.0 - 1e-7)) < 0.0) best = std::max(best, x);
  }
  if (best > 0.0) return best;
  return std::nullopt;
}

// Right-first subdivision of [lo, top] certified by Taylor bounds; returns the
// first point below the trust margin.
template <typename T>
std::optional<double> scan(const std::vector<T>& r, double lo, double top) {
  const int n = static_cast<int>(r.size()) - 1;
  std::vector<std::pair<double, double>> stack{{lo, top}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    const T margin = kTrust<T> * magnitude<T>(r, b);
    if (horner<T>(r, b) < margin) return b;
    // c_1 w plus the negative higher terms is concave in w, so its minimum
    // over [0, w] sits at an endpoint.
    const Coeffs<T> c = taylor_shift<T>(r, a);
    const T w = T(b) - T(a);
    T tail = c[1] * w;
    T wk = w;
    // Negative terms of degree >= 3 folded into the w^2 coefficient: for
    // w <= W, c_k w^k >= c_k W^(k-2) w^2.
    T curv = n >= 2 ? c[2] : T(0);
    for (int k = 2; k <= n; ++k) {
      wk *= w;
      if (c[k] < 0) {
        tail += c[k] * wk;
        if (k >= 3) curv += c[k] * (wk / (w * w));
      }
    }
    T lower = c[0] + std::min(T(0), tail);
    const T end = c[0] + c[1] * w + curv * w * w;
    T quad = std::min(c[0], end);
    if (curv > 0 && c[1] < 0 && -c[1] < 2 * curv * w) quad = c[0] - c[1] * c[1] / (4 * curv);
    lower = std::max(lower, quad);
    if (lower >= 0.5 * margin) continue;
    if (w <= 1e-13 * b) return b;
    const double mid = (a > 0.0 && b > 4.0 * a) ? std::sqrt(a * b) : 0.5 * (a + b);
    stack.push_back({a, mid});
    stack.push_back({mid, b});
  }
  return std::nullopt;
}

// Supremum of {v > 0 : r(v) < trusted margin}. Requires a positive leading
// coefficient.
double largest_sign_change(const std::vector<double>& r) {
  const int n = static_cast<int>(r.size()) - 1;
  if (n < 1) throw SearchError("HermiteCombo: no sign change resolved");

  std::optional<double> guess = eigen_candidate(r);
  if (guess) {
    *guess *= 1.0 + 1e-11;
    if (positive_beyond(r, *guess)) return *guess;
  }

  // Fujiwara bound on the moduli of all roots.
  double bound = 0.0;
  for (int k = 1; k <= n; ++k) {
    bound = std::max(bound, std::pow(std::abs(r[n - k] / r[n]), 1.0 / k));
  }
  const double hi = 4.0 * bound + 1.0;

  if (guess && *guess < hi) {
    if (auto b = scan(r, *guess, hi)) return *b;
    const double below = *guess * (1.0 - 1e-10);
    if (horner(r, below) < -kTrustRel * magnitude(r, below)) return *guess;
    if (auto b = scan(r, 0.0, *guess)) return *b;
  } else if (auto b = scan(r, 0.0, hi)) {
    return *b;
  }
  // A self-dual combination vanishing at the origin has zero mean, so it
  // must change sign; getting here means the roots were not resolved.
  throw SearchError("HermiteCombo: no sign change resolved");
}

// A crossing is bracketed when r is clearly negative just below v; then the
// scan over the bracket settles it.
template <typename T>
std::optional<double> settle(const std::vector<T>& r, double v) {
  const double below = v * (1.0 - 1e-9);
  if (!(horner<T>(r, below) < -kTrust<T> * magnitude<T>(r, below))) return std::nullopt;
  if (auto b = scan(r, below, v)) return b;
  return v;
}

// Multiprecision rerun for dips that long double cannot resolve.
constexpr mp_bitcnt_t kWideBits = 256;
constexpr double kWideTrustRel = 1e-40;

const std::vector<mpz_class>& exact_coefficients(int n) {
  static const std::vector<std::vector<mpz_class>> table = [] {
    std::vector<std::vector<mpz_class>> t{{1}, {0, 2}};
    for (int k = 1; k < kMaxHermiteDegree; ++k) {
      std::vector<mpz_class> next(k + 2, 0);
      for (int i = 0; i <= k; ++i) next[i + 1] += 2 * t[k][i];
      for (int i = 0; i < k; ++i) next[i] -= 2 * k * t[k - 1][i];
      t.push_back(std::move(next));
    }
    return t;
  }();
  return table[n];
}

const std::vector<long double>& cached_coefficients_long(int n) {
  static const std::vector<std::vector<long double>> table = [] {
    std::vector<std::vector<long double>> t;
    for (int k = 0; k <= kMaxHermiteDegree; ++k) {
      std::vector<long double> row;
      for (const mpz_class& z : exact_coefficients(k)) row.push_back(std::stold(z.get_str()));
      t.push_back(std::move(row));
    }
    return t;
  }();
  return table[n];
}

std::vector<mpf_class> wide_factor(const HermiteCombo& projected) {
  const auto& c = projected.coeffs();
  const int M = projected.modes();
  std::vector<mpf_class> q(2 * M + 1, mpf_class(0, kWideBits));
  for (int m = 0; m <= M; ++m) {
    if (c[m] == 0.0) continue;
    const mpf_class cm(c[m], kWideBits);
    const auto& h = exact_coefficients(4 * m);
    for (int j = 0; j <= 2 * m; ++j) q[j] += cm * mpf_class(h[2 * j], kWideBits);
  }
  std::vector<mpf_class> r(q.begin() + 1, q.end());
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

std::optional<double> wide_scan(const std::vector<mpf_class>& r, double lo, double top) {
  const int n = static_cast<int>(r.size()) - 1;
  std::vector<double> rd(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) rd[i] = r[i].get_d();
  std::vector<mpf_class> c(r.size(), mpf_class(0, kWideBits));
  mpf_class value(0, kWideBits), x(0, kWideBits), w(0, kWideBits), wk(0, kWideBits),
      tail(0, kWideBits);
  std::vector<std::pair<double, double>> stack{{lo, top}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    const double margin = kWideTrustRel * magnitude(rd, b);
    x = b;
    value = 0;
    for (int k = n; k >= 0; --k) value = value * x + r[k];
    if (value < margin) return b;
    x = a;
    for (int k = 0; k <= n; ++k) c[k] = r[k];
    for (int i = 0; i < n; ++i) {
      for (int k = n - 1; k >= i; --k) c[k] += x * c[k + 1];
    }
    w = b;
    w -= x;
    tail = c[1] * w;
    wk = w;
    for (int k = 2; k <= n; ++k) {
      wk *= w;
      if (c[k] < 0) tail += c[k] * wk;
    }
    if (tail > 0) tail = 0;
    tail += c[0];
    if (tail >= 0.5 * margin) continue;
    if (b - a <= 1e-13 * b) return b;
    const double mid = (a > 0.0 && b > 4.0 * a) ? std::sqrt(a * b) : 0.5 * (a + b);
    stack.push_back({a, mid});
    stack.push_back({mid, b});
  }
  return std::nullopt;
}

}  // namespace

double hermite_poly(int n, double u) {
  check_degree(n);
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * u;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * u * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> hermite_coefficients(int n) {
  check_degree(n);
  return cached_coefficients(n);
}

namespace {

std::vector<double> hermite_coefficients_impl(int n) {
  std::vector<double> prev{1.0};
  if (n == 0) return prev;
  std::vector<double> cur{0.0, 2.0};
  for (int k = 1; k < n; ++k) {
    std::vector<double> next(k + 2, 0.0);
    for (int i = 0; i <= k; ++i) next[i + 1] += 2.0 * cur[i];
    for (int i = 0; i < k; ++i) next[i] -= 2.0 * k * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

double eigenfunction(int n, double x) {
  return hermite_poly(n, kSqrt2Pi * x) * std::exp(-std::numbers::pi * x * x);
}

HermiteCombo::HermiteCombo(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("HermiteCombo: no coefficients");
  if (4 * modes() > kMaxHermiteDegree) {
    throw std::invalid_argument("HermiteCombo: too many modes");
  }
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw std::invalid_argument("HermiteCombo: non-finite coefficient");
  }
}

double HermiteCombo::value(double x) const {
  double v = 0.0;
  for (int m = 0; m <= modes(); ++m) {
    if (coeffs_[m] != 0.0) v += coeffs_[m] * eigenfunction(4 * m, x);
  }
  return v;
}

HermiteCombo HermiteCombo::projected() const {
  std::vector<double> c = coeffs_;
  double at_zero = 0.0;
  for (int m = 1; m <= modes(); ++m) at_zero += c[m] * hermite_poly(4 * m, 0.0);
  c[0] = -at_zero;
  return HermiteCombo(std::move(c));
}

double combo_pi_a2(const HermiteCombo& combo) {
  const HermiteCombo projected = combo.projected();
  const std::vector<double> r = reduced_factor<double>(projected);
  if (r.empty()) throw SearchError("HermiteCombo: combination vanishes identically");
  if (r.back() < 0.0) throw SearchError("negative at infinity: leading coefficient < 0");
  // Accept only a bracketed crossing; a dip that merely touches the trust
  // margin is rescanned in more precision.
  const double v = largest_sign_change(r);
  if (auto b = settle(r, v)) return 0.5 * *b;
  const auto rl = reduced_factor<long double>(projected);
  if (auto b = scan(rl, 0.0, v)) {
    if (auto s = settle(rl, *b)) return 0.5 * *s;
  }
  const auto b = wide_scan(wide_factor(projected), 0.0, v);
  if (!b) throw SearchError("HermiteCombo: no sign change resolved");
  return 0.5 * *b;
}

double combo_radius(const HermiteCombo& combo) {
  return std::sqrt(combo_pi_a2(combo) / std::numbers::pi);
}

// ---------------------------------------------------------------------------

namespace {

// Search coordinates s_m = c_m H_{4m}(0), m = 1..M, on the unit sphere.
struct Scaled {
  std::vector<double> weights;  // H_{4m}(0)

  explicit Scaled(int M) : weights(M) {
    for (int m = 1; m <= M; ++m) weights[m - 1] = hermite_poly(4 * m, 0.0);
  }

  HermiteCombo to_combo(const std::vector<double>& s) const {
    std::vector<double> c(s.size() + 1, 0.0);
    double norm = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      c[i + 1] = s[i] / weights[i];
      norm += c[i + 1] * c[i + 1];
    }
    norm = std::sqrt(norm);
    for (double& x : c) x /= norm;
    return HermiteCombo(std::move(c)).projected();
  }

  std::vector<double> from_combo(const HermiteCombo& combo) const {
    std::vector<double> s(weights.size(), 0.0);
    const auto& c = combo.coeffs();
    for (std::size_t i = 0; i + 1 < c.size() && i < s.size(); ++i) s[i] = c[i + 1] * weights[i];
    return s;
  }
};

void normalize(std::vector<double>& s) {
  double n = 0.0;
  for (double x : s) n += x * x;
  n = std::sqrt(n);
  if (n > 0.0) {
    for (double& x : s) x /= n;
  }
}

// pi A^2 of the combination, or infinity once it is certainly >= cap.
double objective(const Scaled& sc, const std::vector<double>& s, double cap) {
  double n = 0.0;
  for (double x : s) n += x * x;
  if (!(n > 0.0)) return std::numeric_limits<double>::infinity();
  try {
    const HermiteCombo combo = sc.to_combo(s);
    if (std::isfinite(cap)) {
      const std::vector<double> r = reduced_factor<double>(combo);
      const double v = 2.0 * cap;
      if (!r.empty() && horner(r, v) < -kTrustRel * magnitude(r, v)) {
        return std::numeric_limits<double>::infinity();
      }
    }
    return combo_pi_a2(combo);
  } catch (const SearchError&) {
    return std::numeric_limits<double>::infinity();
  }
}

struct Local {
  std::vector<double> s;
  double value;
};

Local pattern_search(const Scaled& sc, std::vector<double> s, const HermiteSearchConfig& cfg) {
  normalize(s);
  double best = objective(sc, s, std::numeric_limits<double>::infinity());
  double step = cfg.initial_step;
  constexpr long kMaxEvaluations = 20000;
  long evals = 0;
  while (step >= cfg.min_step && evals < kMaxEvaluations) {
    bool improved = false;
    for (std::size_t i = 0; i < s.size() && !improved; ++i) {
      for (double dir : {1.0, -1.0}) {
        std::vector<double> trial = s;
        trial[i] += dir * step;
        normalize(trial);
        const double v = objective(sc, trial, best);
        ++evals;
        if (v < best) {
          best = v;
          s = std::move(trial);
          improved = true;
          break;
        }
      }
    }
    step = improved ? std::min(2.0 * step, cfg.initial_step) : step * cfg.shrink;
  }
  return {s, best};
}

}  // namespace

HermiteSearchResult hermite_search(int M, const HermiteSearchConfig& cfg) {
  if (M < 1) throw std::invalid_argument("hermite_search: M must be >= 1");
  if (4 * M > kMaxHermiteDegree) throw std::invalid_argument("hermite_search: M too large");
  if (cfg.starts < 1 || !(cfg.shrink > 0.0 && cfg.shrink < 1.0) || !(cfg.min_step > 0.0)) {
    throw std::invalid_argument("hermite_search: invalid configuration");
  }
  const Scaled sc(M);

  std::vector<std::vector<double>> starts;
  if (M > 1) {
    const HermiteSearchResult prev = hermite_search(M - 1, cfg);
    std::vector<double> s = sc.from_combo(prev.best);
    starts.push_back(std::move(s));
  }
  for (int i = 0; i < cfg.starts; ++i) {
    std::mt19937_64 rng(cfg.seed + 0x9e3779b97f4a7c15ULL * static_cast<unsigned>(i + 1));
    std::normal_distribution<double> normal;
    std::vector<double> s(M);
    for (double& x : s) x = normal(rng);
    s.back() = std::abs(s.back());
    starts.push_back(std::move(s));
  }

  std::vector<Local> results(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) { results[i] = pattern_search(sc, starts[i], cfg); });

  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i) {
    if (results[i].value < results[best].value) best = i;
  }
  if (!std::isfinite(results[best].value)) {
    throw SearchError("hermite_search: no admissible combination found");
  }
  HermiteCombo combo = sc.to_combo(results[best].s);
  const double pi_a2 = combo_pi_a2(combo);
  return HermiteSearchResult{combo, std::sqrt(pi_a2 / std::numbers::pi), pi_a2};
}

}  // namespace selfdual
