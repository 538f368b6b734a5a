#pragma once

#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "harmvol/hp.hpp"
#include "harmvol/rational.hpp"

namespace harmvol {

/// Integer polynomial, coefficients from the constant term upward.
using IntPoly = std::vector<mpz_class>;

/// Φ_n, obtained from z^n − 1 by exact division by Φ_d for every proper divisor d.
IntPoly cyclotomic_polynomial(int n);
int euler_phi(int n);

/// Nearest Real at the current working precision.
Real to_real(const Rational& q);

/// Exact division of integer polynomials; throws DomainError if the division
/// leaves a remainder or the divisor is not monic up to sign.
IntPoly exact_divide(const IntPoly& num, const IntPoly& den);

/// Arithmetic context for ℚ(ζ_N) = ℚ[z]/Φ_N(z). Shared, immutable.
class CycloField {
 public:
  static std::shared_ptr<const CycloField> get(int order);

  int order() const noexcept { return order_; }
  int degree() const noexcept { return static_cast<int>(modulus_.size()) - 1; }
  const IntPoly& modulus() const noexcept { return modulus_; }
  /// Canonical coordinates of ζ^k, k ∈ [0, N).
  const std::vector<Rational>& power(int k) const { return powers_[k]; }

  /// Reduces a polynomial of arbitrary degree modulo Φ_N, in place.
  void reduce(std::vector<Rational>& coeffs) const;

 private:
  explicit CycloField(int order);
  int order_;
  IntPoly modulus_;
  std::vector<std::vector<Rational>> powers_;
};

/// Exact element of ℚ(ζ_N), stored in the canonical basis 1, ζ, …, ζ^{φ(N)−1}.
class CycloNum {
 public:
  CycloNum(int order, const Rational& value);
  CycloNum(std::shared_ptr<const CycloField> field, std::vector<Rational> coeffs);

  static CycloNum zero(int order) { return {order, Rational(0)}; }
  static CycloNum one(int order) { return {order, Rational(1)}; }
  /// ζ^u for any integer u; u is taken mod N.
  static CycloNum zeta_power(int order, long long u);

  int order() const noexcept { return field_->order(); }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  const CycloField& field() const noexcept { return *field_; }

  bool is_zero() const;
  CycloNum conj() const;
  CycloNum real_part() const;
  CycloNum inverse() const;
  std::optional<Rational> try_rational() const;
  /// Value at ζ = exp(2πi/N) with the given working precision.
  ComplexHP embed(unsigned bits = kDefaultPrecisionBits) const;
  std::string str() const;

  CycloNum& operator+=(const CycloNum& o);
  CycloNum& operator-=(const CycloNum& o);
  CycloNum& operator*=(const CycloNum& o);
  CycloNum& operator*=(const Rational& s);
  CycloNum& operator/=(const CycloNum& o) { return *this *= o.inverse(); }

  friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
  friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
  friend CycloNum operator*(CycloNum a, const CycloNum& b) { return a *= b; }
  friend CycloNum operator*(CycloNum a, const Rational& s) { return a *= s; }
  friend CycloNum operator*(const Rational& s, CycloNum a) { return a *= s; }
  friend CycloNum operator/(CycloNum a, const CycloNum& b) { return a /= b; }
  friend CycloNum operator-(CycloNum a);

  friend bool operator==(const CycloNum& a, const CycloNum& b);
  friend std::ostream& operator<<(std::ostream& os, const CycloNum& a) { return os << a.str(); }

 private:
  void check_order(const CycloNum& o) const;
  std::shared_ptr<const CycloField> field_;
  std::vector<Rational> coeffs_;
};

inline CycloNum reciprocal(const CycloNum& a) { return a.inverse(); }

}  // namespace harmvol
