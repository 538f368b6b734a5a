#include "harmvol/rational.hpp"

#include <cstdio>
#include <limits>

#include "harmvol/error.hpp"

namespace harmvol {

std::string ConvergenceError::format(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

mpq_class Rational::mpz_from(long long n) {
  static_assert(sizeof(long) == sizeof(long long), "LP64 assumed for GMP conversions");
  return mpq_class(mpz_class(static_cast<long>(n)));
}

Rational::Rational(long long num, long long den) : Rational(mpz_from(num).get_num(), mpz_from(den).get_num()) {}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DivisionByZero();
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DivisionByZero();
  q_ /= o.q_;
  return *this;
}

Rational Rational::frac() const {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return *this - Rational(mpq_class(fl));
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::optional<Rational> Rational::parse(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0 || q.get_den() == 0) return std::nullopt;
  return Rational(q);
}

long long to_int64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw DomainError("integer does not fit in 64 bits: " + z.get_str());
  return z.get_si();
}

}  // namespace harmvol
