#include "selfdual/rational_poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace selfdual {

RationalPolynomial::RationalPolynomial(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

RationalPolynomial RationalPolynomial::constant(const mpq_class& c) { return monomial(c, 0); }

RationalPolynomial RationalPolynomial::monomial(const mpq_class& c, int power) {
  if (power < 0) throw std::invalid_argument("monomial: negative power");
  std::vector<mpq_class> v(power + 1, mpq_class(0));
  v[power] = c;
  return RationalPolynomial(std::move(v));
}

void RationalPolynomial::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

mpq_class RationalPolynomial::coeff(int i) const {
  if (i < 0 || i > degree()) return mpq_class(0);
  return coeffs_[i];
}

mpq_class RationalPolynomial::operator()(const mpq_class& x) const {
  mpq_class v(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * x + *it;
  return v;
}

double RationalPolynomial::evaluate(double x) const {
  double v = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * x + it->get_d();
  return v;
}

RationalPolynomial& RationalPolynomial::operator+=(const RationalPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), mpq_class(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator-=(const RationalPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), mpq_class(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator*=(const mpq_class& s) {
  for (auto& c : coeffs_) c *= s;
  trim();
  return *this;
}

RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> out(a.coeffs_.size() + b.coeffs_.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return RationalPolynomial(std::move(out));
}

RationalPolynomial RationalPolynomial::divided_by_variable() const {
  if (is_zero()) return {};
  if (sgn(coeffs_[0]) != 0) throw std::domain_error("divided_by_variable: nonzero constant term");
  return RationalPolynomial(std::vector<mpq_class>(coeffs_.begin() + 1, coeffs_.end()));
}

std::string RationalPolynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const mpq_class& c = coeffs_[i];
    if (sgn(c) == 0) continue;
    mpq_class mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == 1;
    if (!unit || i == 0) os << mag.get_str();
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

PolySeries series_multiply(const PolySeries& a, const PolySeries& b, int order) {
  PolySeries out(order + 1);
  for (int i = 0; i <= order && i < static_cast<int>(a.size()); ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j <= order && j < static_cast<int>(b.size()); ++j) {
      if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

PolySeries series_exp(const PolySeries& a, int order) {
  if (!a.empty() && !a[0].is_zero()) {
    throw std::invalid_argument("series_exp: constant term must vanish");
  }
  PolySeries e(order + 1);
  e[0] = RationalPolynomial::constant(1);
  for (int n = 1; n <= order; ++n) {
    RationalPolynomial acc;
    for (int k = 1; k <= n && k < static_cast<int>(a.size()); ++k) {
      if (!a[k].is_zero()) acc += (a[k] * e[n - k]) * mpq_class(k);
    }
    e[n] = acc * mpq_class(1, n);
  }
  return e;
}

mpq_class binomial(const mpq_class& r, int n) {
  if (n < 0) return 0;
  mpq_class v(1);
  for (int i = 0; i < n; ++i) {
    v *= (r - i);
    v /= (i + 1);
  }
  return v;
}

mpq_class factorial(int n) {
  mpz_class f(1);
  for (int i = 2; i <= n; ++i) f *= i;
  return mpq_class(f);
}

}  // namespace selfdual
