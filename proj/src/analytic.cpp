#include "harmvol/analytic.hpp"

#include "harmvol/error.hpp"

namespace harmvol {
namespace {

void check_index(int i, int g, const char* what) {
  if (i < 1 || i > g) throw DomainError(std::string(what) + " index out of range: " + std::to_string(i));
}

long long mod(long long u, long long n) { return ((u % n) + n) % n; }

}  // namespace

CurveParams::CurveParams(int genus)
    : genus(genus), order(2 * genus + 2), mu(1, 2 * genus + 2), zeta(CycloNum::zeta_power(2 * genus + 2, 1)) {
  check_genus(genus);
}

CycloNum t_value(long long u, const CurveParams& p) {
  const int n = p.order;
  if (mod(u, n) == 0) return {n, Rational(p.genus)};
  if (mod(u, 2) == 0) return {n, Rational(-1)};
  const CycloNum z = CycloNum::zeta_power(n, u);
  return (CycloNum::one(n) + z) / (CycloNum::one(n) - z);
}

CycloNum t_power_sum(long long u, const CurveParams& p) {
  CycloNum s = CycloNum::zero(p.order);
  for (int k = 1; k <= p.genus; ++k) s += CycloNum::zeta_power(p.order, u * k);
  return s;
}

CycloNum period_a(int i, int j, const CurveParams& p) {
  check_index(i, p.genus, "period_a");
  check_index(j, p.genus, "period_a");
  const int n = p.order;
  return CycloNum::zeta_power(n, static_cast<long long>(i) * (2 * j - 1)) *
         (CycloNum::one(n) - CycloNum::zeta_power(n, i));
}

CycloNum period_b(int i, int j, const CurveParams& p) {
  check_index(i, p.genus, "period_b");
  check_index(j, p.genus, "period_b");
  const int n = p.order;
  return (CycloNum::zeta_power(n, 2LL * i * j) - CycloNum::one(n)) / (CycloNum::zeta_power(n, i) + CycloNum::one(n));
}

Matrix<CycloNum> period_matrix_a(const CurveParams& p) {
  Matrix<CycloNum> m(p.genus, p.genus, CycloNum::zero(p.order));
  for (int i = 1; i <= p.genus; ++i)
    for (int j = 1; j <= p.genus; ++j) m(i - 1, j - 1) = period_a(i, j, p);
  return m;
}

Matrix<CycloNum> period_matrix_b(const CurveParams& p) {
  Matrix<CycloNum> m(p.genus, p.genus, CycloNum::zero(p.order));
  for (int i = 1; i <= p.genus; ++i)
    for (int j = 1; j <= p.genus; ++j) m(i - 1, j - 1) = period_b(i, j, p);
  return m;
}

CycloNum iter_ab_closed(int i, int j, int k, Loop loop, const CurveParams& p) {
  check_index(i, p.genus, "iter_ab_closed");
  check_index(j, p.genus, "iter_ab_closed");
  check_index(k, p.genus, "iter_ab_closed");
  const auto t = [&](long long u) { return t_value(u, p); };
  const Rational scale = Rational(-1, 2LL * (p.genus + 1) * (p.genus + 1));
  CycloNum out = CycloNum::zero(p.order);
  if (loop == Loop::a) {
    out = t(2 * k - 2 * i) * (t(2 * k - 2 * j) - t(2 * k));
  } else {
    for (int u = 1; u <= k; ++u) {
      CycloNum inner = CycloNum::zero(p.order);
      for (int v = 1; v <= j; ++v) inner += t(2 * v + 2 * u - 2 * j - 2);
      out += (t(2 * u - 2 * i - 2) - t(2 * u - 2 * i)) * inner;
    }
  }
  out *= scale;
  if (!(out == out.real_part())) throw std::logic_error("iter_ab_closed: closed form is not real");
  return out;
}

CycloNum ell_integral(HarmonicForm form, int i, int nu, const CurveParams& p) {
  check_index(i, p.genus, "ell_integral");
  if (nu < 0 || nu >= p.order) throw DomainError("ell_integral: base index out of range");
  const Rational scale(1, 2LL * (p.genus + 1));
  CycloNum out = CycloNum::zero(p.order);
  if (form == HarmonicForm::alpha) {
    out = (t_value(nu - 2 * i, p) + t_value(nu - 2 * i + 1, p)).real_part() * scale;
  } else {
    for (int u = nu - 2 * i + 1; u <= nu; ++u) out += t_value(u, p);
    out = out.real_part() * (-scale);
  }
  if (!out.try_rational()) throw std::logic_error("ell_integral: value is not rational");
  return out;
}

// --- ExactCurve ---------------------------------------------------------------

ExactCurve::ExactCurve(int genus) : params_(genus), basis_(genus) {
  const int n = params_.order;
  t_cache_.reserve(n);
  for (int u = 0; u < n; ++u) {
    CycloNum v = t_value(u, params_);
    if (!(v == t_power_sum(u, params_))) throw std::logic_error("t_u case table disagrees with its power sum");
    t_cache_.push_back(std::move(v));
  }
  const auto gens = generators(genus);
  ell_cache_.assign(n, std::vector<Rational>(gens.size()));
  for (int nu = 0; nu < n; ++nu)
    for (const Gen& z : gens) {
      const auto form = z.sym == Sym::x ? HarmonicForm::alpha : HarmonicForm::beta;
      ell_cache_[nu][flat_index(z, genus)] = *ell_integral(form, z.index, nu, params_).try_rational();
    }
}

void ExactCurve::check_nu(int nu) const {
  if (nu < 0 || nu >= params_.order)
    throw DomainError("base index ν must lie in 0…" + std::to_string(params_.order - 1));
}

const CycloNum& ExactCurve::t(long long u) const { return t_cache_[mod(u, params_.order)]; }

const Rational& ExactCurve::ell(Gen z, int nu) const {
  check_nu(nu);
  return ell_cache_[nu][flat_index(z, genus())];
}

QmodZ ExactCurve::lambda_nu(const HTensor& a, int nu) const {
  require_in_KH(a);
  check_nu(nu);
  Rational s(0);
  for (const auto& [k, c] : a.terms()) {
    const int p13 = pairing(k[0], k[2]);
    const int p23 = pairing(k[1], k[2]);
    if (p13 != 0) s += Rational(c * p13) * ell(k[1], nu);
    if (p23 != 0) s -= Rational(c * p23) * ell(k[0], nu);
  }
  return s;
}

QmodZ ExactCurve::lambda_nu(std::size_t element, Gen third, int nu) const {
  return lambda_nu(basis_.element_tensor(element, third), nu);
}

QmodZ ExactCurve::i_q0_table(std::size_t element, Gen third, TableVariant variant) const {
  const KBasisElement& e = basis_.elements().at(element);
  const int g = genus();
  const Rational& mu = params_.mu;
  const int k = third.index;
  switch (e.kase) {
    case KCase::mixed: {
      Gen first = e.first, second = e.second;
      bool negate = false;
      if (k != first.index && k != second.index) return {};
      if (k == second.index) {
        // I(a⊗b⊗c) ≡ −I(b⊗a⊗c): move the matching index to the front.
        std::swap(first, second);
        negate = true;
      }
      const int i = first.index, j = second.index;
      Rational v(0);
      if (first.sym == Sym::x && second.sym == Sym::x && third.sym == Sym::y) {
        v = mu;
      } else if (first.sym == Sym::x && second.sym == Sym::y && third.sym == Sym::y) {
        v = (i < j ? Rational(g - j + 1) : Rational(2 * g - j + 2)) * mu;
      } else if (first.sym == Sym::y && second.sym == Sym::x && third.sym == Sym::x) {
        v = Rational(2 * g + 1) * mu;
      } else if (first.sym == Sym::y && second.sym == Sym::y && third.sym == Sym::x) {
        v = (i < j ? Rational(g + j + 1) : Rational(j)) * mu;
      }
      return negate ? -QmodZ(v) : QmodZ(v);
    }
    case KCase::diagonal_difference: {
      const int i = e.index();
      if (third == x(i)) return Rational(g + 2) * mu;
      if (third == y(i)) return Rational(2 * g - i + 2) * mu;
      if (third == x(1)) return Rational(g) * mu;
      if (third == y(1)) return Rational(g + 2) * mu;
      if (variant == TableVariant::completed && third.sym == Sym::y && 1 < k && k < i) return Rational(1, 2);
      return {};
    }
    case KCase::symmetric:
      return {};
    case KCase::square:
      return (third.index == e.first.index && third.sym != e.first.sym) ? Rational(1, 2) : Rational(0);
  }
  return {};
}

HalfInt ExactCurve::value_table(std::size_t element, Gen third, int nu, TableVariant variant) const {
  check_nu(nu);
  const KBasisElement& e = basis_.elements().at(element);
  const int k = third.index;
  const auto in_pair = [nu](int j) { return nu == 2 * j - 1 || nu == 2 * j; };
  const auto ordered = [nu](int i, int j) { return (i < j && nu > 2 * j - 1) || (i > j && nu <= 2 * j - 1); };
  switch (e.kase) {
    case KCase::mixed: {
      const Sym s1 = e.first.sym, s2 = e.second.sym, s3 = third.sym;
      if (k == e.first.index) {
        // x_i⊗x_j⊗y_i, x_i⊗y_j⊗y_i, y_i⊗x_j⊗x_i, y_i⊗y_j⊗x_i
        const int i = e.first.index, j = e.second.index;
        if (s1 == Sym::x && s3 == Sym::y) return HalfInt(s2 == Sym::x ? in_pair(j) : ordered(i, j));
        if (s1 == Sym::y && s3 == Sym::x) return HalfInt(s2 == Sym::x ? in_pair(j) : ordered(i, j));
        return {};
      }
      if (k == e.second.index) {
        // x_j⊗x_i⊗y_i, y_j⊗x_i⊗y_i, x_j⊗y_i⊗x_i, y_j⊗y_i⊗x_i
        const int i = e.second.index, j = e.first.index;
        if (s2 == Sym::x && s3 == Sym::y) return HalfInt(s1 == Sym::x ? in_pair(j) : ordered(i, j));
        if (s2 == Sym::y && s3 == Sym::x) return HalfInt(s1 == Sym::x ? in_pair(j) : ordered(i, j));
        return {};
      }
      return {};
    }
    case KCase::diagonal_difference: {
      const int i = e.index();
      if (third == x(i)) return HalfInt(!in_pair(i));
      if (third == y(i)) return HalfInt(nu <= 2 * i - 1);
      if (third == x(1)) return HalfInt(!in_pair(1));
      if (third == y(1)) return HalfInt(nu > 1);
      if (variant == TableVariant::completed && third.sym == Sym::y && 1 < k && k < i) return HalfInt(true);
      return {};
    }
    case KCase::symmetric:
      return {};
    case KCase::square:
      return HalfInt(third.index == e.first.index && third.sym != e.first.sym);
  }
  return {};
}

QmodZ ExactCurve::value_on_basis(std::size_t element, Gen third, int nu, Engine engine, TableVariant variant) const {
  if (engine == Engine::table) return value_table(element, third, nu, variant).to_qmodz();
  return i_q0_table(element, third, variant) + lambda_nu(element, third, nu);
}

QmodZ ExactCurve::assemble(const std::vector<KHCoefficient>& coeffs, const HTensor& a, int nu, Engine engine,
                          TableVariant variant) const {
  QmodZ out;
  if (engine == Engine::composed) {
    for (const auto& c : coeffs) out += c.coeff * i_q0_table(c.element, c.third, variant);
    out += lambda_nu(a, nu);
  } else {
    for (const auto& c : coeffs)
      if (value_table(c.element, c.third, nu, variant).is_half()) out += c.coeff * QmodZ(Rational(1, 2));
  }
  if (!out.is_half_or_zero())
    throw std::logic_error("harmonic volume " + out.str() + " outside {0, 1/2} at ν = " + std::to_string(nu));
  return out;
}

QmodZ ExactCurve::harmonic_volume(const HTensor& a, int nu, Engine engine, TableVariant variant) const {
  check_nu(nu);
  return assemble(basis_.expand(a), a, nu, engine, variant);
}

std::vector<QmodZ> ExactCurve::harmonic_volume_all(const HTensor& a, Engine engine, TableVariant variant) const {
  const auto coeffs = basis_.expand(a);
  std::vector<QmodZ> out;
  out.reserve(order());
  for (int nu = 0; nu < order(); ++nu) out.push_back(assemble(coeffs, a, nu, engine, variant));
  return out;
}

}  // namespace harmvol
