#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace selfdual {

/// Dense univariate polynomial with exact rational coefficients
/// (index = power of the variable). Trailing zero coefficients are always
/// trimmed, so equal polynomials compare equal coefficient by coefficient.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<mpq_class> coeffs);

  static RationalPolynomial constant(const mpq_class& c);
  static RationalPolynomial monomial(const mpq_class& c, int power);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Coefficient of X^i (zero beyond the degree).
  mpq_class coeff(int i) const;
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }

  mpq_class operator()(const mpq_class& x) const;
  double evaluate(double x) const;

  RationalPolynomial& operator+=(const RationalPolynomial& o);
  RationalPolynomial& operator-=(const RationalPolynomial& o);
  RationalPolynomial& operator*=(const mpq_class& s);

  friend RationalPolynomial operator+(RationalPolynomial a, const RationalPolynomial& b) { return a += b; }
  friend RationalPolynomial operator-(RationalPolynomial a, const RationalPolynomial& b) { return a -= b; }
  friend RationalPolynomial operator*(RationalPolynomial a, const mpq_class& s) { return a *= s; }
  friend RationalPolynomial operator*(const mpq_class& s, RationalPolynomial a) { return a *= s; }
  friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b);
  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  /// Quotient by X when the constant term is zero; throws otherwise.
  RationalPolynomial divided_by_variable() const;

  std::string to_string(const std::string& var = "X") const;

 private:
  void trim();
  std::vector<mpq_class> coeffs_;
};

/// Truncated power series in an expansion variable whose coefficients are
/// polynomials in X. Entry n is the coefficient of the n-th power.
using PolySeries = std::vector<RationalPolynomial>;

/// Cauchy product truncated to `order`.
PolySeries series_multiply(const PolySeries& a, const PolySeries& b, int order);

/// exp(A) for A with zero constant term, by n E_n = sum_k k A_k E_{n-k}.
PolySeries series_exp(const PolySeries& a, int order);

/// Generalized binomial coefficient r (r-1) ... (r-n+1) / n!.
mpq_class binomial(const mpq_class& r, int n);

mpq_class factorial(int n);

}  // namespace selfdual
