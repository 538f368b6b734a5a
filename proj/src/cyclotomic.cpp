#include "harmvol/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "harmvol/error.hpp"

namespace harmvol {
namespace {

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Quotient and remainder of a by b over ℚ, b nonzero and trimmed.
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  trim(a);
  QPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  const Rational& lead = b.back();
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const Rational c = a.back() / lead;
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    a.pop_back();
    trim(a);
  }
  return {std::move(q), std::move(a)};
}

QPoly sub_mul(const QPoly& a, const QPoly& q, const QPoly& b) {
  QPoly out(std::max(a.size(), q.empty() || b.empty() ? 0 : q.size() + b.size() - 1));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] -= q[i] * b[j];
  trim(out);
  return out;
}

const IntPoly& cached_cyclotomic(int n) {
  static std::mutex mu;
  static std::map<int, IntPoly> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  IntPoly p(n + 1);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = exact_divide(p, cached_cyclotomic(d));
  std::lock_guard lock(mu);
  return cache.emplace(n, std::move(p)).first->second;
}

}  // namespace

Real to_real(const Rational& q) {
  Real out;
  mpfr_set_q(out.backend().data(), q.raw().get_mpq_t(), MPFR_RNDN);
  return out;
}

IntPoly exact_divide(const IntPoly& num, const IntPoly& den) {
  IntPoly a = num;
  IntPoly b = den;
  trim(a);
  trim(b);
  if (b.empty()) throw DivisionByZero();
  if (b.back() != 1 && b.back() != -1) throw DomainError("exact_divide: divisor must be monic");
  if (a.size() < b.size()) {
    if (!a.empty()) throw DomainError("exact_divide: nonzero remainder");
    return {};
  }
  IntPoly q(a.size() - b.size() + 1);
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const mpz_class c = a.back() * b.back();  // b.back() is ±1
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    trim(a);
  }
  if (!a.empty()) throw DomainError("exact_divide: nonzero remainder");
  return q;
}

IntPoly cyclotomic_polynomial(int n) {
  if (n < 1) throw DomainError("cyclotomic_polynomial: order must be positive");
  return cached_cyclotomic(n);
}

int euler_phi(int n) {
  int count = 0;
  for (int k = 1; k <= n; ++k)
    if (std::gcd(k, n) == 1) ++count;
  return count;
}

std::shared_ptr<const CycloField> CycloField::get(int order) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const CycloField>> cache;
  if (order < 1) throw DomainError("cyclotomic order must be positive");
  std::lock_guard lock(mu);
  auto& slot = cache[order];
  if (!slot) slot = std::shared_ptr<const CycloField>(new CycloField(order));
  return slot;
}

CycloField::CycloField(int order) : order_(order), modulus_(cyclotomic_polynomial(order)) {
  powers_.reserve(order);
  for (int k = 0; k < order; ++k) {
    std::vector<Rational> c(k + 1);
    c[k] = 1;
    reduce(c);
    powers_.push_back(std::move(c));
  }
}

void CycloField::reduce(std::vector<Rational>& coeffs) const {
  const int deg = degree();
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= deg; --i) {
    if (coeffs[i].is_zero()) continue;
    const Rational c = coeffs[i];
    for (int j = 0; j <= deg; ++j) coeffs[i - deg + j] -= c * Rational(mpq_class(modulus_[j]));
  }
  coeffs.resize(deg);
}

CycloNum::CycloNum(int order, const Rational& value) : field_(CycloField::get(order)), coeffs_(field_->degree()) {
  coeffs_[0] = value;
}

CycloNum::CycloNum(std::shared_ptr<const CycloField> field, std::vector<Rational> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  field_->reduce(coeffs_);
}

CycloNum CycloNum::zeta_power(int order, long long u) {
  auto field = CycloField::get(order);
  const long long k = ((u % order) + order) % order;
  return {field, field->power(static_cast<int>(k))};
}

void CycloNum::check_order(const CycloNum& o) const {
  if (o.order() != order())
    throw DomainError("cyclotomic order mismatch: " + std::to_string(order()) + " vs " +
                      std::to_string(o.order()));
}

bool CycloNum::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

CycloNum& CycloNum::operator+=(const CycloNum& o) {
  check_order(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

CycloNum& CycloNum::operator-=(const CycloNum& o) {
  check_order(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

CycloNum& CycloNum::operator*=(const Rational& s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

CycloNum& CycloNum::operator*=(const CycloNum& o) {
  check_order(o);
  const std::size_t n = coeffs_.size();
  std::vector<Rational> prod(2 * n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) prod[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  field_->reduce(prod);
  coeffs_ = std::move(prod);
  return *this;
}

CycloNum operator-(CycloNum a) {
  for (auto& c : a.coeffs_) c = -c;
  return a;
}

bool operator==(const CycloNum& a, const CycloNum& b) { return a.order() == b.order() && a.coeffs_ == b.coeffs_; }

CycloNum CycloNum::inverse() const {
  if (is_zero()) throw DivisionByZero();
  QPoly r0;
  for (const auto& c : field_->modulus()) r0.emplace_back(mpq_class(c));
  QPoly r1 = coeffs_;
  trim(r1);
  QPoly s0;
  QPoly s1{Rational(1)};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1);
    QPoly s2 = sub_mul(s0, q, s1);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // Φ_N is irreducible, so the last nonzero remainder is a unit.
  if (r0.size() != 1) throw DomainError("CycloNum::inverse: non-constant gcd with the modulus");
  const Rational scale = Rational(1) / r0[0];
  for (auto& c : s0) c *= scale;
  return {field_, std::move(s0)};
}

CycloNum CycloNum::conj() const {
  CycloNum out = zero(order());
  const int n = order();
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    const auto& p = field_->power(static_cast<int>((n - static_cast<int>(k)) % n));
    for (std::size_t i = 0; i < p.size(); ++i) out.coeffs_[i] += coeffs_[k] * p[i];
  }
  return out;
}

CycloNum CycloNum::real_part() const { return (*this + conj()) * Rational(1, 2); }

std::optional<Rational> CycloNum::try_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero()) return std::nullopt;
  return coeffs_[0];
}

ComplexHP CycloNum::embed(unsigned bits) const {
  if (bits < 53) throw DomainError("embed: precision must be at least 53 bits");
  PrecisionScope scope(bits);
  const ComplexHP zeta = unit_root(1, order());
  // Horner from the top coefficient.
  ComplexHP acc(Real(0), Real(0), current_precision_bits());
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= zeta;
    acc.re += to_real(*it);
  }
  acc.bits = current_precision_bits();
  return acc;
}

std::string CycloNum::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Rational& c = coeffs_[k];
    if (c.is_zero()) continue;
    Rational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag;
      continue;
    }
    if (mag != Rational(1)) os << mag << "*";
    os << "z";
    if (k > 1) os << "^" << k;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace harmvol
