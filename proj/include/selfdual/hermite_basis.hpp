#pragma once

#include <cstdint>
#include <vector>

namespace selfdual {

inline constexpr int kMaxHermiteDegree = 64;

/// Physicists' Hermite polynomial H_n(u) by the three-term recurrence.
/// Throws std::invalid_argument for n < 0 or n > kMaxHermiteDegree.
double hermite_poly(int n, double u);

/// Monomial coefficients of H_n (index = power of u).
std::vector<double> hermite_coefficients(int n);

/// h_n(x) = H_n(sqrt(2 pi) x) exp(-pi x^2). Under the kernel exp(-2 i pi x y)
/// this is an eigenfunction of the Fourier transform with eigenvalue (-i)^n,
/// so every mode 4m is self-dual.
double eigenfunction(int n, double x);

/// Weights c_0..c_M on the self-dual modes h_0, h_4, ..., h_{4M}.
class HermiteCombo {
 public:
  explicit HermiteCombo(std::vector<double> coeffs);

  const std::vector<double>& coeffs() const { return coeffs_; }
  int modes() const { return static_cast<int>(coeffs_.size()) - 1; }

  double value(double x) const;

  /// Same combination with c_0 chosen so that f(0) = 0.
  HermiteCombo projected() const;

 private:
  std::vector<double> coeffs_;
};

/// Sign-change radius A(f) in x-units of the combination after the f(0) = 0
/// projection: the largest sign-changing real root of the polynomial factor
/// sum_m c_m H_{4m}(sqrt(2 pi) x). Throws SearchError when the projected
/// polynomial is negative at infinity or identically zero.
double combo_radius(const HermiteCombo& combo);

/// pi A^2 for the projected combination.
double combo_pi_a2(const HermiteCombo& combo);

struct HermiteSearchConfig {
  int starts = 64;
  double initial_step = 0.5;
  double shrink = 0.5;
  double min_step = 1e-10;
  std::uint64_t seed = 0x5e1fd0a1;
};

struct HermiteSearchResult {
  HermiteCombo best;  ///< projected, unit-norm over c_1..c_M
  double radius;      ///< A in x-units
  double pi_a2;       ///< pi A^2
};

/// Multi-start coordinate pattern search for the combination of modes
/// 0, 4, ..., 4M with smallest sign-change radius. The search for M also
/// starts from the embedded optimum for M - 1, so results are nonincreasing
/// in M.
HermiteSearchResult hermite_search(int M, const HermiteSearchConfig& config = {});

}  // namespace selfdual
