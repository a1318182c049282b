#include "selfdual/gaussian_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "selfdual/error.hpp"

namespace selfdual {

namespace {

// expm1(x) - x, accurate when |x| is small.
double expm1_minus_linear(double x) {
  if (std::abs(x) < 0.5) {
    double term = 0.5 * x * x;
    double sum = term;
    for (int n = 3; n < 40; ++n) {
      term *= x / n;
      sum += term;
      if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
  }
  return std::expm1(x) - x;
}

// H_a written as a sum of three expm1-minus-linear pieces plus an exactly
// cancelled O(k^2) linear remainder.
double eval_H_stable(const GaussianParams& p, double X) {
  const double k = p.k();
  const double log_ad = p.c() * std::log1p(k);
  const double s1 = log_ad - k * X;
  const double s2 = k * X / (1.0 + k);
  const double linear = -k * k * X / (1.0 + k);
  return expm1_minus_linear(s1) + expm1_minus_linear(s2) -
         expm1_minus_linear(log_ad) + linear;
}

}  // namespace

GaussianParams::GaussianParams(double a, int dim) : a_(a), dim_(dim) {
  if (!(a > 1.0) || !std::isfinite(a)) {
    throw std::invalid_argument("GaussianParams: a must be finite and > 1 (got " +
                                std::to_string(a) + ")");
  }
  if (dim < 1) {
    throw std::invalid_argument("GaussianParams: dimension must be >= 1");
  }
  a_pow_d_ = std::pow(a, dim);
}

double eval_G(const GaussianParams& p, double X) {
  const double a2 = p.a() * p.a();
  const double ad = p.a_pow_d();
  return ad * std::exp(-a2 * X) + std::exp(-X / a2) - (1.0 + ad) * std::exp(-X);
}

double eval_g(const GaussianParams& p, double x_norm) {
  if (!std::isfinite(x_norm)) {
    throw std::invalid_argument("eval_g: x_norm must be finite");
  }
  return eval_G(p, std::numbers::pi * x_norm * x_norm);
}

double eval_H(const GaussianParams& p, double X) {
  if (p.h() < kNearOneThreshold) return eval_H_stable(p, X);
  const double k = p.k();
  const double ad = p.a_pow_d();
  return ad * std::exp(-k * X) + std::exp(k / (1.0 + k) * X) - (1.0 + ad);
}

double eval_dH(const GaussianParams& p, double X) {
  const double k = p.k();
  const double r = k / (1.0 + k);
  return -p.a_pow_d() * k * std::exp(-k * X) + r * std::exp(r * X);
}

double dH_at_zero(const GaussianParams& p) {
  const double k = p.k();
  return k / (1.0 + k) * (1.0 - std::pow(1.0 + k, p.c() + 1.0));
}

double solve_Xa(const GaussianParams& p, double tol, double x_ceiling) {
  if (!(tol > 0.0)) throw std::invalid_argument("solve_Xa: tol must be > 0");

  double lo = tol;
  double hi = std::max(4.0, static_cast<double>(p.dim()));
  while (eval_H(p, hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > x_ceiling) {
      throw SearchError("solve_Xa: no sign change below X = " +
                        std::to_string(x_ceiling) + " for a = " +
                        std::to_string(p.a()));
    }
  }

  // H is convex with H(0) = 0 and H'(0) < 0, so H < 0 on (0, X_a).
  for (int it = 0; it < 400 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (eval_H(p, mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  double x = 0.5 * (lo + hi);
  const double slope = eval_dH(p, x);
  if (slope > 0.0) {
    const double polished = x - eval_H(p, x) / slope;
    if (polished > lo && polished < hi) x = polished;
  }
  if (x > x_ceiling) {
    throw SearchError("solve_Xa: root X = " + std::to_string(x) + " exceeds the ceiling " +
                      std::to_string(x_ceiling));
  }
  return x;
}

double radius_from_X(double X) {
  if (!(X >= 0.0)) throw std::invalid_argument("radius_from_X: X must be >= 0");
  return std::sqrt(X / std::numbers::pi);
}

FamilyMinimum minimize_Xa(int dim, double a_lo, double a_hi, double a_tol) {
  if (!(a_lo > 1.0) || !(a_hi > a_lo)) {
    throw std::invalid_argument("minimize_Xa: need 1 < a_lo < a_hi");
  }
  auto objective = [dim](double a) { return solve_Xa(GaussianParams(a, dim)); };

  constexpr int kScan = 256;
  int best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  const double step = (a_hi - a_lo) / kScan;
  for (int i = 0; i <= kScan; ++i) {
    const double v = objective(a_lo + i * step);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }

  double lo = a_lo + std::max(0, best - 1) * step;
  double hi = a_lo + std::min(kScan, best + 1) * step;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (hi - lo > a_tol) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = objective(x2);
    }
  }
  FamilyMinimum out{0.5 * (lo + hi), 0.0};
  out.X = objective(out.a);
  if (best_val < out.X) {
    out.a = a_lo + best * step;
    out.X = best_val;
  }
  return out;
}

}  // namespace selfdual
