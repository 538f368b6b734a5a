#pragma once

#include <ostream>
#include <string>

#include "harmvol/rational.hpp"

namespace harmvol {

/// Exact element of ℚ/ℤ, stored as its representative in [0, 1).
class QmodZ {
 public:
  QmodZ() = default;
  QmodZ(const Rational& r) : value_(r.frac()) {}  // NOLINT: implicit reduction

  const Rational& value() const noexcept { return value_; }
  bool is_zero() const { return value_.is_zero(); }
  bool is_half_or_zero() const { return value_.is_zero() || value_ == Rational(1, 2); }
  std::string str() const { return value_.str(); }

  QmodZ& operator+=(const QmodZ& o) { value_ = (value_ + o.value_).frac(); return *this; }
  QmodZ& operator-=(const QmodZ& o) { value_ = (value_ - o.value_).frac(); return *this; }
  friend QmodZ operator+(QmodZ a, const QmodZ& b) { return a += b; }
  friend QmodZ operator-(QmodZ a, const QmodZ& b) { return a -= b; }
  friend QmodZ operator-(const QmodZ& a) { return QmodZ(-a.value_); }
  friend QmodZ operator*(long long k, const QmodZ& a) { return QmodZ(Rational(k) * a.value_); }
  friend bool operator==(const QmodZ&, const QmodZ&) = default;
  friend std::ostream& operator<<(std::ostream& os, const QmodZ& q) { return os << q.str(); }

 private:
  Rational value_;
};

}  // namespace harmvol
