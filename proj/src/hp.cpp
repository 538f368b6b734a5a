#include "harmvol/hp.hpp"

#include <cmath>
#include <sstream>

namespace harmvol {

unsigned digits10_for_bits(unsigned bits) {
  // Boost stores MPFR precision in decimal digits; round up so that the
  // binary precision is never below the request.
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

unsigned current_precision_bits() {
  return boost::multiprecision::detail::digits10_2_2(Real::default_precision());
}

PrecisionScope::PrecisionScope(unsigned bits) : saved_digits10_(Real::default_precision()) {
  Real::default_precision(digits10_for_bits(bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_digits10_); }

ComplexHP& ComplexHP::operator*=(const ComplexHP& o) {
  Real r = re * o.re - im * o.im;
  Real i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

ComplexHP& ComplexHP::operator/=(const ComplexHP& o) {
  const Real d = o.re * o.re + o.im * o.im;
  Real r = (re * o.re + im * o.im) / d;
  Real i = (im * o.re - re * o.im) / d;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Real ComplexHP::abs() const { return boost::multiprecision::sqrt(re * re + im * im); }

std::string ComplexHP::str(int digits) const {
  std::ostringstream os;
  os.precision(digits);
  os << re << (im < 0 ? " - " : " + ") << Real(boost::multiprecision::abs(im)) << "i";
  return os.str();
}

double distance(const ComplexHP& a, const ComplexHP& b) { return (a - b).abs().convert_to<double>(); }

Real pi_hp() { return boost::multiprecision::acos(Real(-1)); }

ComplexHP unit_root(long long k, long long n) {
  const Real angle = 2 * pi_hp() * Real(k) / Real(n);
  return {boost::multiprecision::cos(angle), boost::multiprecision::sin(angle), current_precision_bits()};
}

}  // namespace harmvol
