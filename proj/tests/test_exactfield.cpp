#include <doctest.h>

#include <random>

#include "harmvol/cyclotomic.hpp"
#include "harmvol/error.hpp"

using namespace harmvol;

namespace {

IntPoly poly(std::initializer_list<long> c) {
  IntPoly p;
  for (long v : c) p.emplace_back(v);
  return p;
}

CycloNum from_coeffs(int order, std::initializer_list<long long> c) {
  CycloNum out = CycloNum::zero(order);
  int k = 0;
  for (long long v : c) out += CycloNum::zeta_power(order, k++) * Rational(v);
  return out;
}

}  // namespace

TEST_CASE("rational canonical form") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, -6).str() == "-1/2");
  CHECK(Rational(-7, 3).frac() == Rational(2, 3));
  CHECK(Rational(5).str() == "5");
  CHECK(Rational::parse("10/4") == Rational(5, 2));
  CHECK_FALSE(Rational::parse("1/0"));
  CHECK_FALSE(Rational::parse("x"));
  CHECK_THROWS_AS(Rational(1) / Rational(0), DivisionByZero);
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == poly({-1, 1}));
  CHECK(cyclotomic_polynomial(6) == poly({1, -1, 1}));
  CHECK(cyclotomic_polynomial(8) == poly({1, 0, 0, 0, 1}));
  for (int n = 1; n <= 50; ++n) {
    const IntPoly phi = cyclotomic_polynomial(n);
    CHECK(static_cast<int>(phi.size()) - 1 == euler_phi(n));
    IntPoly zn(n + 1, mpz_class(0));
    zn[0] = -1;
    zn[n] = 1;
    CHECK_NOTHROW(exact_divide(zn, phi));
  }
}

TEST_CASE("field arithmetic") {
  const int n = 6;
  const CycloNum z = CycloNum::zeta_power(n, 1);
  const CycloNum one = CycloNum::one(n);
  CHECK(z * CycloNum::zeta_power(n, n - 1) == one);
  CHECK(CycloNum::zeta_power(n, -1) == CycloNum::zeta_power(n, 5));
  CHECK((one - z) * (one - z).inverse() == one);
  CHECK((one + z) / (one - z) == from_coeffs(n, {-1, 2}));
  CHECK_THROWS_AS(one / CycloNum::zero(n), DivisionByZero);
  CHECK_THROWS_AS(one + CycloNum::one(8), DomainError);
  CHECK(z.str() == "z");
}

TEST_CASE("real part and conjugation") {
  const int n = 6;
  const CycloNum z = CycloNum::zeta_power(n, 1);
  const CycloNum sym = CycloNum::zeta_power(n, 2) + CycloNum::zeta_power(n, 4);
  CHECK(sym.real_part() == sym);
  CHECK(z.real_part() == CycloNum(n, Rational(1, 2)));
  CHECK(z.conj().conj() == z);
  CHECK(z.real_part().real_part() == z.real_part());
}

TEST_CASE("rational extraction") {
  CHECK(CycloNum(6, Rational(5, 3)).try_rational() == Rational(5, 3));
  CHECK_FALSE(CycloNum::zeta_power(6, 1).try_rational());
  CHECK((CycloNum(6, Rational(2)) * Rational(1, 6)).try_rational() == Rational(1, 3));
}

TEST_CASE("embedding") {
  PrecisionScope scope(128);
  const auto one = CycloNum::one(6).embed(128);
  CHECK(one.re == 1);
  CHECK(one.im == 0);
  const auto z = CycloNum::zeta_power(6, 1).embed(128);
  CHECK(std::abs((z.re - Real(1) / 2).convert_to<double>()) < 1e-35);
  CHECK(std::abs((z.im - boost::multiprecision::sqrt(Real(3)) / 2).convert_to<double>()) < 1e-35);
  const auto t1 = from_coeffs(6, {-1, 2}).embed(128);
  CHECK(std::abs(t1.re.convert_to<double>()) < 1e-35);
  CHECK(t1.im.convert_to<double>() == doctest::Approx(1.7320508075688772));
  CHECK_THROWS(CycloNum::one(6).embed(32));
}

TEST_CASE("embedding is a homomorphism") {
  PrecisionScope scope(128);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> coef(-9, 9);
  const double bound = std::ldexp(1.0, -100);
  for (int order : {6, 8, 10, 12}) {
    const int d = euler_phi(order);
    for (int trial = 0; trial < 250; ++trial) {
      std::vector<Rational> ca, cb;
      for (int k = 0; k < d; ++k) {
        ca.emplace_back(coef(rng), 1 + (coef(rng) + 9) % 4);
        cb.emplace_back(coef(rng), 1 + (coef(rng) + 9) % 4);
      }
      const CycloNum a(CycloField::get(order), ca);
      const CycloNum b(CycloField::get(order), cb);
      const ComplexHP ea = a.embed(128), eb = b.embed(128);
      CHECK(distance((a + b).embed(128), ea + eb) < bound);
      CHECK(distance((a - b).embed(128), ea - eb) < bound);
      CHECK(distance((a * b).embed(128), ea * eb) < bound);
      if (!b.is_zero()) CHECK(distance((a / b).embed(128), ea / eb) < bound * (1 + (ea / eb).abs().convert_to<double>()));
    }
  }
}

TEST_CASE("rational inputs stay rational") {
  for (int a = -3; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) {
      const CycloNum x(10, Rational(a, b)), y(10, Rational(b, 7));
      CHECK((x + y).try_rational() == Rational(a, b) + Rational(b, 7));
      CHECK((x * y).try_rational() == Rational(a, b) * Rational(b, 7));
      CHECK((x / y).try_rational() == Rational(a, b) / Rational(b, 7));
    }
}
