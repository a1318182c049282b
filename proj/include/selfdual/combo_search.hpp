#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "selfdual/gaussian_core.hpp"

namespace selfdual {

struct ComboNode {
  double a;  ///< family parameter, > 1
  double t;  ///< signed weight
};

/// Finite signed combination of rescaled family profiles in dimension d:
///
///   F(X) = sum_i t_i H_{a_i}(X) + t_L L(X),   L(X) = X (X - d/2 - 1).
///
/// L is the normalized a -> 1 direction of the family. Nodes are kept
/// sorted by a; duplicate a values are rejected. The limit coefficient t_L
/// is signed (corrections subtract a multiple of L).
class GaussianCombo {
 public:
  GaussianCombo(int dim, std::vector<ComboNode> nodes, double limit_coeff = 0.0);

  int dim() const { return dim_; }
  std::span<const ComboNode> nodes() const { return nodes_; }
  double limit_coeff() const { return limit_coeff_; }

  /// Weight of the fastest-growing term: the node with the largest a, or
  /// the limit profile when there are no nodes.
  double dominant_coeff() const;

  /// Sum of term magnitudes at X = 0 scale; used for relative tolerances.
  double scale() const;

  GaussianCombo scaled(double factor) const;

  double value(double X) const;
  double derivative(double X) const;

  /// Upper bound on |F''| over [lo, hi].
  double second_derivative_bound(double lo, double hi) const;

 private:
  int dim_;
  std::vector<ComboNode> nodes_;
  std::vector<GaussianParams> params_;
  double limit_coeff_;
};

/// The limit profile X (X - d/2 - 1).
double limit_profile(int dim, double X);

/// combo_H: value of the combination at X.
inline double combo_H(const GaussianCombo& combo, double X) { return combo.value(X); }

struct RadiusCertificate {
  double R = 0.0;       ///< last sign change in the X-domain
  double X_tail = 0.0;  ///< dominance inequality certifies F > 0 beyond this
  std::int64_t samples_checked = 0;
  double tolerance = 0.0;  ///< F >= tolerance > 0 was certified on [R, X_tail]
};

struct RadiusResult {
  double R = 0.0;
  bool sign_change = true;  ///< false when F >= 0 on (0, inf); then R = 0
  RadiusCertificate cert;
};

inline constexpr double kDefaultRadiusTol = 1e-10;
/// Certification tolerance relative to GaussianCombo::scale().
inline constexpr double kCertRelTol = 1e-13;

/// Smallest X at which the dominant exponential beats (number of negative
/// terms) x (each negative term), so F > 0 on [X_tail, inf).
double tail_threshold(const GaussianCombo& combo);

/// Largest X where the combination changes sign to permanently >= 0, with a
/// certificate of nonnegativity on [R, inf). Throws SearchError when the
/// dominant coefficient is not positive ("negative at infinity").
RadiusResult last_sign_change(const GaussianCombo& combo, double tol = kDefaultRadiusTol);

struct CorrectionResult {
  double tau = 0.0;  ///< multiple of L subtracted from H_{a0}
  double R = 0.0;
  GaussianCombo combo;
  RadiusCertificate cert;
};

/// Last sign change of H_{a0} - tau L.
double correction_radius(double a0, int dim, double tau, double tol = kDefaultRadiusTol);

/// Minimizes over tau >= 0 the last sign change of H_{a0} - tau L.
/// Throws SearchError if no tau > 0 improves on tau = 0.
CorrectionResult minimize_correction(double a0, int dim, double tol = kDefaultRadiusTol);

struct LpConfig {
  int nodes = 2000;          ///< Chebyshev-spaced X samples per trial radius
  double x_span = 40.0;      ///< X_max = R + x_span
  double r_tol = 1e-4;       ///< bisection tolerance on R
  double cert_tol = kDefaultRadiusTol;
};

struct LpResult {
  double R = 0.0;  ///< certified radius
  GaussianCombo combo;
  RadiusCertificate cert;
  int lp_solves = 0;
};

/// Grid value standing for the a -> 1 limit profile.
inline constexpr double kLimitProfileToken = 1.0;

/// Bisection on R over LP feasibility of "combination >= 0 on sampled
/// [R, X_max]" with the dominant weight fixed to 1. A grid entry equal to 1
/// selects the limit profile. Every accepted trial is re-certified by
/// last_sign_change; the certified radius is reported.
LpResult lp_min_radius(std::span<const double> grid, int dim, const LpConfig& config = {});

}  // namespace selfdual
