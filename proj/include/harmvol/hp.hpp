#pragma once

#include <string>

#include <boost/multiprecision/mpfr.hpp>

namespace harmvol {

using Real = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultPrecisionBits = 128;

/// Sets the MPFR working precision (in bits) for newly created Real values and
/// restores the previous one on scope exit. Not thread safe: open it outside
/// parallel regions.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_digits10_;
};

unsigned digits10_for_bits(unsigned bits);
/// Effective binary precision of the current default.
unsigned current_precision_bits();

/// Complex number over the MPFR working precision.
struct ComplexHP {
  Real re;
  Real im;
  unsigned bits = kDefaultPrecisionBits;

  ComplexHP() : re(0), im(0) {}
  ComplexHP(Real r, Real i, unsigned b) : re(std::move(r)), im(std::move(i)), bits(b) {}

  ComplexHP& operator+=(const ComplexHP& o) { re += o.re; im += o.im; return *this; }
  ComplexHP& operator-=(const ComplexHP& o) { re -= o.re; im -= o.im; return *this; }
  ComplexHP& operator*=(const ComplexHP& o);
  ComplexHP& operator*=(const Real& s) { re *= s; im *= s; return *this; }
  ComplexHP& operator/=(const ComplexHP& o);

  friend ComplexHP operator+(ComplexHP a, const ComplexHP& b) { return a += b; }
  friend ComplexHP operator-(ComplexHP a, const ComplexHP& b) { return a -= b; }
  friend ComplexHP operator*(ComplexHP a, const ComplexHP& b) { return a *= b; }
  friend ComplexHP operator*(ComplexHP a, const Real& s) { return a *= s; }
  friend ComplexHP operator/(ComplexHP a, const ComplexHP& b) { return a /= b; }
  friend ComplexHP operator-(const ComplexHP& a) { return {Real(-a.re), Real(-a.im), a.bits}; }

  ComplexHP conj() const { return {re, Real(-im), bits}; }
  Real abs() const;
  std::string str(int digits = 20) const;
};

/// |a - b| as a double, for tolerance checks.
double distance(const ComplexHP& a, const ComplexHP& b);

Real pi_hp();
/// exp(2πi·k/n) at the current working precision.
ComplexHP unit_root(long long k, long long n);

}  // namespace harmvol
