#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace selfdual {

/// Degree and absolute discriminant of a number field. Only the two numbers
/// are used; nothing checks that such a field exists.
class NumberFieldParams {
 public:
  NumberFieldParams(std::int64_t degree, mpz_class abs_disc);

  std::int64_t degree() const { return degree_; }
  const mpz_class& abs_disc() const { return abs_disc_; }

 private:
  std::int64_t degree_;
  mpz_class abs_disc_;
};

/// Natural logarithm of a positive big integer.
double log_abs(const mpz_class& n);

/// 2 pi e: d / Bbar_d stays below it for every d by the volume lower bound.
inline constexpr double kTwoPiE = 2.0 * 3.14159265358979323846 * 2.71828182845904523536;
/// Asymptotic root-discriminant lower bound used for comparison.
inline constexpr double kOdlyzkoRootDisc = 22.2;

enum class Prop1Verdict { no_real_zero_certified, inconclusive };

const char* to_string(Prop1Verdict v);

struct Prop1Margin {
  double value;                ///< d |D|^{-1/d}
  double root_discriminant;    ///< |D|^{1/d}
  Prop1Verdict verdict;        ///< certified iff value > bbar_upper
  bool discriminant_condition_automatic;  ///< |D|^{1/d} >= 22.2 > 2 pi e
};

/// Compares d |D|^{-1/d} (computed in the log domain) against an upper bound
/// on the smooth-class constant. "inconclusive" never asserts a real zero.
Prop1Margin prop1_margin(const NumberFieldParams& params, double bbar_upper);

inline constexpr double kTowerBitBudget = 1e6;

struct TowerLevel {
  std::int64_t degree;              ///< d0 p^m
  std::optional<mpz_class> disc;    ///< D0^{p^m}, absent beyond the bit budget
  double log_disc;                  ///< p^m log D0
  double C;                         ///< D0^{-1/d0}
  double linear_bound;              ///< C d_m
  std::string note;                 ///< "result too large" when disc is absent
};

/// Level m of an unramified tower of degree-p steps over a base field of
/// degree d0 and discriminant D0.
TowerLevel tower(std::int64_t d0, const mpz_class& D0, std::int64_t p, int m,
                 double bit_budget = kTowerBitBudget);

}  // namespace selfdual
