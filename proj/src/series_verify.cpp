#include "selfdual/series_verify.hpp"

#include <stdexcept>
#include <string>

namespace selfdual {

namespace {

void check_order(int order) {
  if (order < 0 || order > kMaxSeriesOrder) {
    throw std::invalid_argument("series order must be in [0, " +
                                std::to_string(kMaxSeriesOrder) + "]");
  }
}

using RP = RationalPolynomial;

// Scalar series (constant polynomials) from rational coefficients.
PolySeries scalar_series(const std::vector<mpq_class>& c) {
  PolySeries s;
  for (const auto& x : c) s.push_back(RP::constant(x));
  return s;
}

// Series whose n-th coefficient is coeffs[n] * X.
PolySeries linear_in_X(const std::vector<mpq_class>& coeffs) {
  PolySeries s;
  for (const auto& x : coeffs) s.push_back(RP::monomial(x, 1));
  return s;
}

// Coefficients of (1+v)^r through `order`.
std::vector<mpq_class> binomial_series(const mpq_class& r, int order) {
  std::vector<mpq_class> c;
  for (int n = 0; n <= order; ++n) c.push_back(binomial(r, n));
  return c;
}

PolySeries add(PolySeries a, const PolySeries& b) {
  if (b.size() > a.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

PolySeries scale(PolySeries a, const mpq_class& s) {
  for (auto& p : a) p *= s;
  return a;
}

}  // namespace

PolySeries taylor_h_d1(int order) {
  check_order(order);
  // (1+h) e^{-(2h + h^2) X}
  std::vector<mpq_class> e1(order + 1, mpq_class(0));
  if (order >= 1) e1[1] = -2;
  if (order >= 2) e1[2] = -1;
  const PolySeries first =
      series_multiply(scalar_series(binomial_series(1, order)), series_exp(linear_in_X(e1), order), order);

  // e^{(1 - (1+h)^{-2}) X}
  std::vector<mpq_class> e2 = binomial_series(-2, order);
  for (auto& x : e2) x = -x;
  e2[0] += 1;
  const PolySeries second = series_exp(linear_in_X(e2), order);

  PolySeries out = add(first, second);
  out = add(out, scale(scalar_series(binomial_series(1, order)), -1));
  out[0] -= RP::constant(1);
  return out;
}

PolySeries taylor_k_general(const mpq_class& c, int order) {
  check_order(order);
  if (sgn(c) <= 0) throw std::invalid_argument("taylor_k_general: c must be > 0");
  const PolySeries power_c = scalar_series(binomial_series(c, order));

  std::vector<mpq_class> e1(order + 1, mpq_class(0));
  if (order >= 1) e1[1] = -1;
  const PolySeries first = series_multiply(power_c, series_exp(linear_in_X(e1), order), order);

  // 1 - (1+k)^{-1} = k - k^2 + k^3 - ...
  std::vector<mpq_class> e2 = binomial_series(-1, order);
  for (auto& x : e2) x = -x;
  e2[0] += 1;
  const PolySeries second = series_exp(linear_in_X(e2), order);

  PolySeries out = add(first, second);
  out = add(out, scale(power_c, -1));
  out[0] -= RP::constant(1);
  return out;
}

PolySeries substitute_k_in_h(const PolySeries& k_series, int order) {
  check_order(order);
  const PolySeries k_of_h = scalar_series({0, 2, 1});
  PolySeries out(order + 1);
  PolySeries power = scalar_series({1});
  for (std::size_t n = 0; n < k_series.size() && static_cast<int>(n) <= order; ++n) {
    for (std::size_t i = 0; i < power.size(); ++i) {
      if (!power[i].is_zero()) out[i] += k_series[n] * power[i];
    }
    power = series_multiply(power, k_of_h, order);
  }
  return out;
}

mpq_class residue_q(int n) {
  if (n < 0) throw std::invalid_argument("residue_q: n must be >= 0");
  mpq_class q(0);
  for (int j = 0; j <= n; ++j) {
    mpq_class term = binomial(mpq_class(n - 1), n - j);
    if ((n - j) % 2 != 0) term = -term;
    mpz_class pow2(1);
    pow2 <<= j;
    term *= mpq_class(pow2);
    term /= factorial(j);
    q += term;
  }
  q.canonicalize();
  return q;
}

mpq_class first_part_coeff(int n) {
  if (n < 1) throw std::invalid_argument("first_part_coeff: n must be >= 1");
  auto signed_pow2 = [](int e) {
    mpz_class p(1);
    p <<= e;
    return (e % 2 == 0) ? mpq_class(p) : mpq_class(-p);
  };
  mpq_class v = signed_pow2(n) / factorial(n) + signed_pow2(n - 1) / factorial(n - 1);
  v.canonicalize();
  return v;
}

P56 p56_check() {
  return P56{first_part_coeff(5) + residue_q(5), first_part_coeff(6) + residue_q(6)};
}

std::vector<IdentityCheck> run_identity_checks(int order) {
  if (order < 4 || order > kMaxSeriesOrder) {
    throw std::invalid_argument("run_identity_checks: order must be in [4, 8]");
  }
  std::vector<IdentityCheck> out;
  auto record = [&](std::string name, bool ok, std::string detail) {
    out.push_back({std::move(name), ok, std::move(detail)});
  };
  auto poly = [](std::vector<mpq_class> c) { return RP(std::move(c)); };

  const PolySeries h = taylor_h_d1(order);
  record("h-series P1 = 0", h[1].is_zero(), h[1].to_string());
  record("h-series P2 = 2X(2X-3)", h[2] == poly({0, -6, 4}), h[2].to_string());
  record("h-series P3 = -X(2X-3)", h[3] == poly({0, 3, -2}), h[3].to_string());
  record("h-series P4 = -5X + 15X^2 - 28/3 X^3 + 4/3 X^4",
         h[4] == poly({0, -5, 15, mpq_class(-28, 3), mpq_class(4, 3)}), h[4].to_string());
  record("h-series P4(3/2) = 3/2", h[4](mpq_class(3, 2)) == mpq_class(3, 2),
         h[4](mpq_class(3, 2)).get_str());

  for (const mpq_class& c : {mpq_class(1, 2), mpq_class(1), mpq_class(3, 2), mpq_class(2),
                            mpq_class(5, 2), mpq_class(4)}) {
    const std::string tag = " (c = " + c.get_str() + ")";
    const PolySeries k = taylor_k_general(c, order);
    const RP L = poly({0, -(c + 1), 1});  // X (X - c - 1)
    record("k-series P1 = 0" + tag, k[1].is_zero(), k[1].to_string());
    record("k-series P2 = X(X-c-1)" + tag, k[2] == L, k[2].to_string());
    record("k-series P3 = (c-2)/2 X(X-c-1)" + tag, k[3] == L * mpq_class((c - 2) / 2),
           k[3].to_string());
    const RP p4_closed =
        poly({0, -(2 * c * (c - 1) * (c - 2) + 12), 3 * c * (c - 1) + 18, -(2 * c + 6), 1}) *
        mpq_class(1, 12);
    record("k-series P4 closed form" + tag, k[4] == p4_closed, k[4].to_string());
    const RP q4 = k[4].divided_by_variable() * mpq_class(12);
    record("Q4(c+1) = 1 - c^2" + tag, q4(c + 1) == 1 - c * c, q4(c + 1).get_str());
  }

  const PolySeries via_k = substitute_k_in_h(taylor_k_general(mpq_class(1, 2), order), order);
  bool cross = true;
  for (int n = 0; n <= order; ++n) cross = cross && via_k[n] == h[n];
  record("k-series at c = 1/2 with k = 2h + h^2 equals h-series through order " +
             std::to_string(order),
         cross, cross ? "identical" : "mismatch");

  // Residue coefficients against direct composition of e^{2z/(1+z)}.
  {
    constexpr int kQ = 12;
    std::vector<mpq_class> inner = binomial_series(-1, kQ);  // 1/(1+z)
    PolySeries arg(kQ + 1);
    for (int n = 1; n <= kQ; ++n) arg[n] = RP::constant(2 * inner[n - 1]);
    const PolySeries direct = series_exp(arg, kQ);
    bool ok = true;
    for (int n = 0; n <= kQ; ++n) ok = ok && direct[n].coeff(0) == residue_q(n);
    record("q_n equals Taylor coefficients of e^{2z/(1+z)}, n <= 12", ok, ok ? "identical" : "mismatch");
  }
  record("q_5 = -2/5", residue_q(5) == mpq_class(-2, 5), residue_q(5).get_str());
  record("first-part k^5 coefficient = 2/5", first_part_coeff(5) == mpq_class(2, 5),
         first_part_coeff(5).get_str());

  const P56 p = p56_check();
  record("p5 = 0", sgn(p.p5) == 0, p.p5.get_str());
  record("p6 = -4/45", p.p6 == mpq_class(-4, 45), p.p6.get_str());

  // Same coefficients from the d = 2 k-series evaluated at X = 2.
  const PolySeries d2 = taylor_k_general(mpq_class(1), std::max(order, 6));
  record("k-series (d = 2) at X = 2 gives p5, p6",
         d2[5](mpq_class(2)) == p.p5 && d2[6](mpq_class(2)) == p.p6,
         d2[5](mpq_class(2)).get_str() + ", " + d2[6](mpq_class(2)).get_str());
  return out;
}

}  // namespace selfdual
