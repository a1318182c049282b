#pragma once

#include <cmath>
#include <numbers>

namespace selfdual {

/// Parameters of the self-dual Gaussian family
///   g_a(x) = a^d gamma(a x) + gamma(x / a) - (1 + a^d) gamma(x),
/// with gamma(x) = exp(-pi |x|^2) in dimension d.
///
/// Construction rejects a <= 1 (g_1 vanishes identically) and dim < 1.
class GaussianParams {
 public:
  GaussianParams(double a, int dim);

  double a() const { return a_; }
  int dim() const { return dim_; }

  /// Half the dimension.
  double c() const { return 0.5 * dim_; }
  /// a^2 - 1, computed without cancellation from a - 1.
  double k() const { return h() * (2.0 + h()); }
  double h() const { return a_ - 1.0; }
  double a_pow_d() const { return a_pow_d_; }

 private:
  double a_;
  int dim_;
  double a_pow_d_;
};

/// Below this value of a - 1 the rescaled profile is evaluated through the
/// cancellation-free expm1 decomposition.
inline constexpr double kNearOneThreshold = 1e-5;

inline constexpr double kDefaultXTol = 1e-12;
inline constexpr double kDefaultXCeiling = 1e6;

/// g_a at a point of Euclidean norm x_norm.
double eval_g(const GaussianParams& p, double x_norm);

/// G_a(X) = g_a(x) with X = pi |x|^2.
double eval_G(const GaussianParams& p, double X);

/// H_a(X) = e^X G_a(X) = a^d e^{(1-a^2)X} + e^{(1-a^-2)X} - (1 + a^d).
/// H_a is convex with H_a(0) = 0 and H_a'(0) < 0.
double eval_H(const GaussianParams& p, double X);

/// dH_a/dX.
double eval_dH(const GaussianParams& p, double X);

/// Closed form of dH_a/dX at X = 0: (k / (1+k)) (1 - (1+k)^{c+1}).
double dH_at_zero(const GaussianParams& p);

/// Unique positive zero X_a of H_a, to absolute tolerance `tol`.
/// Throws SearchError if the upper bracket would exceed `x_ceiling`.
double solve_Xa(const GaussianParams& p, double tol = kDefaultXTol,
                double x_ceiling = kDefaultXCeiling);

/// Radius sqrt(X / pi) of the X-domain value X.
double radius_from_X(double X);

/// Limit of X_a as a -> 1+, d/2 + 1.
inline double limit_X(int dim) { return 0.5 * dim + 1.0; }

struct FamilyMinimum {
  double a;  ///< minimizing scale parameter
  double X;  ///< X_a at the minimizer
};

/// Minimizes X_a over a in [a_lo, a_hi] by a coarse scan followed by
/// golden-section refinement. Does not compare against the a -> 1 limit.
FamilyMinimum minimize_Xa(int dim, double a_lo = 1.0 + 1e-3,
                          double a_hi = 8.0, double a_tol = 1e-9);

}  // namespace selfdual
