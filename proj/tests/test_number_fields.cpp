#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "selfdual/number_fields.hpp"

using namespace selfdual;

TEST_CASE("log of big integers") {
  CHECK(log_abs(mpz_class(1)) == 0.0);
  mpz_class big;
  mpz_ui_pow_ui(big.get_mpz_t(), 10, 400);
  CHECK(log_abs(big) == doctest::Approx(400 * std::log(10.0)).epsilon(1e-14));
}

TEST_CASE("parameters are validated") {
  CHECK_THROWS_AS(NumberFieldParams(0, mpz_class(5)), std::invalid_argument);
  CHECK_THROWS_AS(NumberFieldParams(2, mpz_class(0)), std::invalid_argument);
}

TEST_CASE("rational field is certified") {
  const Prop1Margin m = prop1_margin(NumberFieldParams(1, mpz_class(1)), 0.5);
  CHECK(m.value == 1.0);
  CHECK(m.verdict == Prop1Verdict::no_real_zero_certified);
  CHECK_FALSE(m.discriminant_condition_automatic);
}

TEST_CASE("margin decreases in the discriminant") {
  double prev = INFINITY;
  for (int D = 1; D <= 400; ++D) {
    const double v = prop1_margin(NumberFieldParams(3, mpz_class(D)), 1.0).value;
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("quadratic field value") {
  const Prop1Margin m = prop1_margin(NumberFieldParams(2, mpz_class(5)), 0.41);
  CHECK(m.value == doctest::Approx(2.0 / std::sqrt(5.0)));
  CHECK(m.root_discriminant == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("large root discriminant makes the condition automatic") {
  mpz_class D;
  mpz_ui_pow_ui(D.get_mpz_t(), 23, 2);
  const Prop1Margin m = prop1_margin(NumberFieldParams(2, D), 1.0);
  CHECK(m.root_discriminant == doctest::Approx(23.0));
  CHECK(m.discriminant_condition_automatic);
  CHECK(m.verdict == Prop1Verdict::inconclusive);
}

TEST_CASE("tower keeps the root discriminant") {
  const double base = std::log(23.0) / 2.0;
  for (int m = 0; m <= 6; ++m) {
    const TowerLevel t = tower(2, mpz_class(23), 3, m);
    CHECK(std::abs(t.log_disc / static_cast<double>(t.degree) - base) < 1e-12);
    CHECK(t.C == doctest::Approx(1.0 / std::sqrt(23.0)));
    CHECK(t.linear_bound == doctest::Approx(t.C * t.degree));
    if (t.disc) CHECK(log_abs(*t.disc) == doctest::Approx(t.log_disc).epsilon(1e-14));
  }
  const TowerLevel t0 = tower(2, mpz_class(23), 3, 0);
  REQUIRE(t0.disc);
  CHECK(*t0.disc == 23);
}

TEST_CASE("tower beyond the bit budget") {
  const TowerLevel t = tower(2, mpz_class(23), 3, 20, 1000.0);
  CHECK_FALSE(t.disc.has_value());
  CHECK(t.note == "result too large");
  CHECK(t.degree == 2 * 3486784401LL);
}
