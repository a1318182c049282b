#include "selfdual/number_fields.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace selfdual {

NumberFieldParams::NumberFieldParams(std::int64_t degree, mpz_class abs_disc)
    : degree_(degree), abs_disc_(std::move(abs_disc)) {
  if (degree_ < 1) throw std::invalid_argument("NumberFieldParams: degree must be >= 1");
  if (abs_disc_ < 1) throw std::invalid_argument("NumberFieldParams: |D| must be >= 1");
}

double log_abs(const mpz_class& n) {
  if (sgn(n) == 0) throw std::domain_error("log_abs: zero");
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
  return std::log(std::abs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

const char* to_string(Prop1Verdict v) {
  return v == Prop1Verdict::no_real_zero_certified ? "no-real-zero-certified" : "inconclusive";
}

Prop1Margin prop1_margin(const NumberFieldParams& params, double bbar_upper) {
  if (!std::isfinite(bbar_upper) || !(bbar_upper > 0.0)) {
    throw std::invalid_argument("prop1_margin: bbar_upper must be finite and > 0");
  }
  const double d = static_cast<double>(params.degree());
  const double log_root = log_abs(params.abs_disc()) / d;
  Prop1Margin out;
  out.value = d * std::exp(-log_root);
  out.root_discriminant = std::exp(log_root);
  out.verdict = out.value > bbar_upper ? Prop1Verdict::no_real_zero_certified
                                       : Prop1Verdict::inconclusive;
  out.discriminant_condition_automatic = out.root_discriminant >= kOdlyzkoRootDisc;
  return out;
}

TowerLevel tower(std::int64_t d0, const mpz_class& D0, std::int64_t p, int m, double bit_budget) {
  if (d0 < 1) throw std::invalid_argument("tower: d0 must be >= 1");
  if (D0 < 1) throw std::invalid_argument("tower: D0 must be >= 1");
  if (p < 2) throw std::invalid_argument("tower: p must be >= 2");
  if (m < 0) throw std::invalid_argument("tower: m must be >= 0");

  mpz_class pm;
  mpz_ui_pow_ui(pm.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(m));
  const mpz_class dm = pm * d0;
  if (dm > std::numeric_limits<std::int64_t>::max()) {
    throw std::invalid_argument("tower: degree d0 p^m overflows 64 bits");
  }

  TowerLevel out;
  out.degree = dm.get_si();
  const double log_d0 = log_abs(D0);
  out.log_disc = pm.get_d() * log_d0;
  out.C = std::exp(-log_d0 / static_cast<double>(d0));
  out.linear_bound = out.C * static_cast<double>(out.degree);

  const double bits = pm.get_d() * static_cast<double>(mpz_sizeinbase(D0.get_mpz_t(), 2));
  if (bits <= bit_budget) {
    mpz_class disc;
    mpz_pow_ui(disc.get_mpz_t(), D0.get_mpz_t(), pm.get_ui());
    out.disc = std::move(disc);
  } else {
    out.note = "result too large";
  }
  return out;
}

}  // namespace selfdual
