#include "harmvol/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include <boost/math/special_functions/legendre.hpp>

#include "harmvol/cyclotomic.hpp"
#include "harmvol/error.hpp"
#include "harmvol/linalg.hpp"

namespace harmvol {

// --- paths -------------------------------------------------------------------

Endpoint Letter::start() const { return (iota != inverse) ? Endpoint::Q1 : Endpoint::Q0; }
Endpoint Letter::end() const { return start() == Endpoint::Q0 ? Endpoint::Q1 : Endpoint::Q0; }

std::string Letter::str() const {
  std::string s = "e" + std::to_string(j);
  if (iota) s = "ι(" + s + ")";
  if (inverse) s += "⁻¹";
  return s;
}

PathWord::PathWord(int genus, std::vector<Letter> letters) : genus_(genus), letters_(std::move(letters)) {
  check_genus(genus);
  for (std::size_t k = 0; k < letters_.size(); ++k) {
    const Letter& l = letters_[k];
    if (l.j < 0 || l.j > 2 * genus + 1) throw DomainError("path letter index out of range: " + l.str());
    if (k > 0 && letters_[k - 1].end() != l.start())
      throw DomainError("path letters do not concatenate: " + letters_[k - 1].str() + " then " + l.str());
  }
}

PathWord PathWord::a_loop(int k, int genus) {
  if (k < 1 || k > genus) throw DomainError("a-loop index out of range");
  return PathWord(genus, {{2 * k - 1, false, false}, {2 * k, true, false}});
}

PathWord PathWord::b_loop(int k, int genus) {
  if (k < 1 || k > genus) throw DomainError("b-loop index out of range");
  std::vector<Letter> letters;
  for (int u = k; u >= 1; --u) {
    letters.push_back({2 * u - 1, false, false});
    letters.push_back({2 * u - 2, true, false});
  }
  return PathWord(genus, std::move(letters));
}

PathWord PathWord::loop_for(Gen z, int genus) {
  return z.sym == Sym::x ? a_loop(z.index, genus) : b_loop(z.index, genus);
}

PathWord PathWord::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(it->reversed());
  return PathWord(genus_, std::move(out));
}

PathWord PathWord::then(const PathWord& o) const {
  if (o.genus_ != genus_) throw DomainError("path words of different genus");
  std::vector<Letter> out = letters_;
  out.insert(out.end(), o.letters_.begin(), o.letters_.end());
  return PathWord(genus_, std::move(out));
}

std::string PathWord::str() const {
  if (letters_.empty()) return "1";
  std::string s;
  for (std::size_t k = 0; k < letters_.size(); ++k) s += (k ? "·" : "") + letters_[k].str();
  return s;
}

// --- forms -------------------------------------------------------------------

int FormSpec::slot(int genus) const {
  if (index < 1 || index > genus) throw DomainError("form index out of range: " + str());
  return static_cast<int>(kind) * genus + index - 1;
}

std::string FormSpec::str() const {
  switch (kind) {
    case FormKind::holomorphic: return "ω'" + std::to_string(index);
    case FormKind::alpha: return "α" + std::to_string(index);
    case FormKind::beta: return "β" + std::to_string(index);
  }
  return "?";
}

Real beta_function(const Real& u, const Real& v) {
  if (u <= 0 || v <= 0) throw DomainError("beta function needs positive arguments");
  return boost::multiprecision::tgamma(u) * boost::multiprecision::tgamma(v) / boost::multiprecision::tgamma(u + v);
}

// --- Gauss–Legendre ----------------------------------------------------------

namespace {

std::shared_ptr<const GaussLegendreRule> build_rule(int n, unsigned bits) {
  PrecisionScope scope(bits);
  auto rule = std::make_shared<GaussLegendreRule>();
  rule->n = n;
  rule->bits = bits;
  const std::vector<Real> half = boost::math::legendre_p_zeros<Real>(n);
  for (auto it = half.rbegin(); it != half.rend(); ++it)
    if (*it != 0) rule->nodes.push_back(-*it);
  for (const Real& x : half) rule->nodes.push_back(x);
  if (static_cast<int>(rule->nodes.size()) != n) throw std::logic_error("Legendre zero count mismatch");
  for (const Real& x : rule->nodes) {
    const Real d = boost::math::legendre_p_prime(n, x);
    rule->weights.push_back(Real(2) / ((1 - x * x) * d * d));
  }
  // Lagrange basis integrated from −1 to each node, using the rule itself on
  // [−1, x_k]; exact because L_l has degree n − 1.
  const auto lagrange = [&](int l, const Real& t) {
    Real p = 1;
    for (int m = 0; m < n; ++m)
      if (m != l) p *= (t - rule->nodes[m]) / (rule->nodes[l] - rule->nodes[m]);
    return p;
  };
  rule->partial.assign(static_cast<std::size_t>(n) * n, Real(0));
  for (int k = 0; k < n; ++k) {
    const Real half_len = (1 + rule->nodes[k]) / 2;
    for (int q = 0; q < n; ++q) {
      const Real t = -1 + half_len * (1 + rule->nodes[q]);
      const Real wq = half_len * rule->weights[q];
      for (int l = 0; l < n; ++l) rule->partial[k * n + l] += wq * lagrange(l, t);
    }
  }
  return rule;
}

}  // namespace

std::shared_ptr<const GaussLegendreRule> gauss_legendre(int n, unsigned bits) {
  if (n < 2 || n > 128) throw DomainError("Gauss–Legendre order must lie in 2…128");
  static std::mutex mutex;
  static std::map<std::pair<int, unsigned>, std::shared_ptr<const GaussLegendreRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{n, bits}];
  if (!slot) slot = build_rule(n, bits);
  return slot;
}

// --- pieces ------------------------------------------------------------------

namespace {

/// Per-segment constants: ω'_l pulls back to hol[l]·ρ_l(τ)dτ, and α_i, β_i to
/// Σ_l coefficient·ρ_l(τ)dτ with ρ_l = norm[l]·r^{l−1}/√S(r).
struct SegmentCoefficients {
  std::vector<ComplexHP> hol;  // [l]
  std::vector<Real> alpha;     // [i·g + l]
  std::vector<Real> beta;      // [i·g + l]
  std::vector<Real> norm;      // [l]
};

struct FormInverses {
  Matrix<CycloNum> inv_a;
  Matrix<CycloNum> inv_b;
};

FormInverses form_inverses(int g) {
  const CurveParams p(g);
  const int n = p.order;
  auto ia = inverse(period_matrix_a(p), CycloNum::zero(n), CycloNum::one(n));
  auto ib = inverse(period_matrix_b(p), CycloNum::zero(n), CycloNum::one(n));
  if (!ia || !ib) throw std::logic_error("period matrix is singular");
  return {std::move(*ia), std::move(*ib)};
}

SegmentCoefficients segment_coefficients(int g, int j, const FormInverses& inv, unsigned bits) {
  const int n = 2 * g + 2;
  SegmentCoefficients c;
  for (int l = 1; l <= g; ++l) {
    c.hol.push_back(CycloNum::zeta_power(n, static_cast<long long>(j) * l).embed(bits));
    c.norm.push_back(Real(n) / beta_function(Real(l) / n, Real(1) / 2));
  }
  for (int i = 0; i < g; ++i)
    for (int l = 0; l < g; ++l) {
      const CycloNum z = CycloNum::zeta_power(n, static_cast<long long>(j) * (l + 1));
      c.alpha.push_back((inv.inv_b(i, l) * z).real_part().embed(bits).re);
      c.beta.push_back(Real(-(inv.inv_a(i, l) * z).real_part().embed(bits).re));
    }
  return c;
}

/// Values of all 3g forms at τ ∈ [0, 1] on one piece.
void evaluate_forms(int g, bool inward, const SegmentCoefficients& c, const Real& tau, std::vector<ComplexHP>& out,
                    unsigned bits) {
  const int n = 2 * g + 2;
  Real r;
  if (inward) {
    r = 1 - tau * tau;
  } else {
    const Real s = 1 - tau;
    r = 1 - s * s;
  }
  // S = (1 − r^N)/(1 − r), evaluated without the cancellation.
  Real s_sum = 1;
  for (int k = 1; k < n; ++k) s_sum = s_sum * r + 1;
  const Real inv_sqrt = 1 / boost::multiprecision::sqrt(s_sum);
  std::vector<Real> rho(g);
  Real rp = 1;
  for (int l = 0; l < g; ++l) {
    rho[l] = c.norm[l] * rp * inv_sqrt;
    rp *= r;
  }
  for (int l = 0; l < g; ++l) out[l] = ComplexHP(c.hol[l].re * rho[l], c.hol[l].im * rho[l], bits);
  for (int i = 0; i < g; ++i) {
    Real a = 0, b = 0;
    for (int l = 0; l < g; ++l) {
      a += c.alpha[i * g + l] * rho[l];
      b += c.beta[i * g + l] * rho[l];
    }
    out[g + i] = ComplexHP(std::move(a), Real(0), bits);
    out[2 * g + i] = ComplexHP(std::move(b), Real(0), bits);
  }
}

PieceTable integrate_level(int g, bool inward, const SegmentCoefficients& c, const GaussLegendreRule& rule,
                           int panels, unsigned bits) {
  const int forms = 3 * g;
  const int n = rule.n;
  PieceTable t;
  t.panels = panels;
  t.line.assign(forms, ComplexHP(Real(0), Real(0), bits));
  t.iter.assign(static_cast<std::size_t>(forms) * forms, ComplexHP(Real(0), Real(0), bits));
  std::vector<std::vector<ComplexHP>> vals(n, std::vector<ComplexHP>(forms));
  std::vector<std::vector<ComplexHP>> prim(n, std::vector<ComplexHP>(forms));
  const Real h = Real(1) / panels;
  const Real hh = h / 2;
  for (int m = 0; m < panels; ++m) {
    const Real a = h * m;
    for (int k = 0; k < n; ++k) evaluate_forms(g, inward, c, a + hh * (1 + rule.nodes[k]), vals[k], bits);
    for (int k = 0; k < n; ++k)
      for (int f = 0; f < forms; ++f) {
        ComplexHP acc(Real(0), Real(0), bits);
        for (int l = 0; l < n; ++l) acc += vals[l][f] * rule.partial[k * n + l];
        prim[k][f] = t.line[f] + acc * hh;
      }
    for (int k = 0; k < n; ++k) {
      const Real wk = hh * rule.weights[k];
      for (int f = 0; f < forms; ++f) {
        for (int q = 0; q < forms; ++q) t.iter[f * forms + q] += prim[k][f] * vals[k][q] * wk;
      }
    }
    for (int f = 0; f < forms; ++f) {
      ComplexHP acc(Real(0), Real(0), bits);
      for (int k = 0; k < n; ++k) acc += vals[k][f] * rule.weights[k];
      t.line[f] += acc * hh;
    }
  }
  return t;
}

double max_change(const std::vector<ComplexHP>& a, const std::vector<ComplexHP>& b) {
  double m = 0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, distance(a[k], b[k]));
  return m;
}

double max_abs(const std::vector<ComplexHP>& a) {
  double m = 0;
  for (const auto& v : a) m = std::max(m, v.abs().convert_to<double>());
  return m;
}

PieceTable integrate_piece_with(int g, int j, bool inward, const SegmentCoefficients& c, const QuadratureOptions& o) {
  const auto rule = gauss_legendre(o.nodes, o.precision_bits);
  const unsigned bits = o.precision_bits;
  const auto refine = [&](PieceTable coarse, int level) {
    PieceTable fine = integrate_level(g, inward, c, *rule, 1 << level, bits);
    fine.line_error = max_change(fine.line, coarse.line);
    fine.iter_error = max_change(fine.iter, coarse.iter);
    return fine;
  };
  if (o.fixed_level) {
    const int level = std::max(1, *o.fixed_level);
    return refine(integrate_level(g, inward, c, *rule, 1 << (level - 1), bits), level);
  }
  // Each piece gets a hundredth of the budget: loop words have up to 4g pieces.
  const double tol_line = o.tol_line / 100;
  const double tol_iter = o.tol_iterated / 100;
  const auto ratio = [&](const PieceTable& t) { return std::max(t.line_error / tol_line, t.iter_error / tol_iter); };
  PieceTable current = integrate_level(g, inward, c, *rule, 1 << o.min_level, bits);
  double previous_ratio = INFINITY;
  const std::string where = std::string(inward ? "inward" : "outward") + " piece of e" + std::to_string(j);
  for (int level = o.min_level + 1;; ++level) {
    current = refine(std::move(current), level);
    const double q = ratio(current);
    if (q <= 1) return current;
    const bool stalled = level >= o.min_level + 4 && q > 0.5 * previous_ratio;
    if (stalled || level >= o.max_level) {
      const bool line_bad = current.line_error > tol_line;
      throw ConvergenceError("quadrature on the " + where + (stalled ? " stagnated" : " hit the panel limit") +
                                 " (per-piece target is 1/100 of the requested tolerance)",
                             line_bad ? current.line_error : current.iter_error, line_bad ? tol_line : tol_iter);
    }
    previous_ratio = q;
  }
}

void check_options(const QuadratureOptions& o) {
  if (o.precision_bits < 53) throw DomainError("precision must be at least 53 bits");
  if (!(o.tol_line > 0) || !(o.tol_iterated > 0)) throw DomainError("tolerances must be positive");
  if (o.min_level < 0 || o.max_level <= o.min_level || o.max_level > 16) throw DomainError("bad panel level range");
}

}  // namespace

PieceTable integrate_piece(int genus, int j, bool inward, const QuadratureOptions& options) {
  check_genus(genus);
  check_options(options);
  if (j < 0 || j > 2 * genus + 1) throw DomainError("segment index out of range");
  PrecisionScope scope(options.precision_bits);
  const auto c = segment_coefficients(genus, j, form_inverses(genus), options.precision_bits);
  return integrate_piece_with(genus, j, inward, c, options);
}

std::vector<PieceTable> integrate_all_pieces(int genus, const QuadratureOptions& options, Execution exec) {
  check_genus(genus);
  check_options(options);
  PrecisionScope scope(options.precision_bits);
  const int segments = 2 * genus + 2;
  const auto inv = form_inverses(genus);
  std::vector<SegmentCoefficients> coeffs;
  for (int j = 0; j < segments; ++j) coeffs.push_back(segment_coefficients(genus, j, inv, options.precision_bits));
  gauss_legendre(options.nodes, options.precision_bits);
  beta_function(Real(1), Real(1));  // warm MPFR constant caches outside the parallel region

  std::vector<PieceTable> out(2 * segments);
  const int count = 2 * segments;
  if (exec == Execution::serial) {
    for (int p = 0; p < count; ++p) out[p] = integrate_piece_with(genus, p / 2, p % 2 == 1, coeffs[p / 2], options);
    return out;
  }
  ExceptionSlot slot;
#pragma omp parallel for schedule(dynamic, 1)
  for (int p = 0; p < count; ++p)
    slot.run([&] { out[p] = integrate_piece_with(genus, p / 2, p % 2 == 1, coeffs[p / 2], options); });
  slot.rethrow();
  return out;
}

// --- NumericCurve ------------------------------------------------------------

NumericCurve::NumericCurve(int genus, QuadratureOptions options, Execution exec)
    : genus_(genus), options_(options), pieces_(integrate_all_pieces(genus, options, exec)) {
  PrecisionScope scope(options_.precision_bits);
  const int forms = 3 * genus;
  for (int j = 0; j < order(); ++j) {
    const PieceTable& o = outward(j);
    const PieceTable& i = inward(j);
    PieceTable s;
    s.panels = std::max(o.panels, i.panels);
    for (int f = 0; f < forms; ++f) s.line.push_back(o.line[f] + i.line[f]);
    for (int f = 0; f < forms; ++f)
      for (int q = 0; q < forms; ++q)
        s.iter.push_back(o.iter[f * forms + q] + i.iter[f * forms + q] + o.line[f] * i.line[q]);
    s.line_error = o.line_error + i.line_error;
    s.iter_error = o.iter_error + i.iter_error + max_abs(o.line) * i.line_error + o.line_error * max_abs(i.line);
    segments_.push_back(std::move(s));
  }
}

Estimate NumericCurve::segment_line_integral(const Letter& letter, FormSpec f) const {
  PrecisionScope scope(options_.precision_bits);
  const PieceTable& s = segments_.at(letter.j);
  ComplexHP v = s.line[f.slot(genus_)];
  if (letter.iota != letter.inverse) v = -v;
  return {v, s.line_error};
}

Estimate NumericCurve::segment_iterated_integral(const Letter& letter, FormSpec f, FormSpec h) const {
  const PieceTable& s = segments_.at(letter.j);
  const int forms = 3 * genus_;
  int a = f.slot(genus_), b = h.slot(genus_);
  // ι negates both pullbacks; reversal swaps the order of integration.
  if (letter.inverse) std::swap(a, b);
  return {s.iter[a * forms + b], s.iter_error};
}

Estimate NumericCurve::word_line_integral(const PathWord& w, FormSpec f) const {
  PrecisionScope scope(options_.precision_bits);
  Estimate acc{ComplexHP(Real(0), Real(0), options_.precision_bits), 0};
  for (const Letter& l : w.letters()) {
    const Estimate e = segment_line_integral(l, f);
    acc.value += e.value;
    acc.error += e.error;
  }
  return acc;
}

Estimate NumericCurve::word_iterated_integral(const PathWord& w, FormSpec f, FormSpec h) const {
  PrecisionScope scope(options_.precision_bits);
  Estimate acc{ComplexHP(Real(0), Real(0), options_.precision_bits), 0};
  Estimate prefix = acc;  // ∫ f over the letters so far
  for (const Letter& l : w.letters()) {
    const Estimate ii = segment_iterated_integral(l, f, h);
    const Estimate lf = segment_line_integral(l, f);
    const Estimate lh = segment_line_integral(l, h);
    acc.value += ii.value + prefix.value * lh.value;
    acc.error += ii.error + prefix.value.abs().convert_to<double>() * lh.error +
                 prefix.error * lh.value.abs().convert_to<double>();
    prefix.value += lf.value;
    prefix.error += lf.error;
  }
  return acc;
}

Estimate NumericCurve::ell_line_integral(FormSpec f, int nu) const {
  if (nu < 0 || nu >= order()) throw DomainError("base index ν out of range");
  const PieceTable& o = outward(nu);
  return {o.line[f.slot(genus_)], o.line_error};
}

NumericIQ0 NumericCurve::numeric_I_Q0(const HTensor& a) const {
  if (a.genus() != genus_ || a.degree() != 3) throw DomainError("numeric I_Q0 needs a degree-3 tensor of matching genus");
  require_in_KH(a);
  PrecisionScope scope(options_.precision_bits);
  Real sum = 0;
  double error = 0;
  for (const auto& [k, c] : a.terms()) {
    const Estimate e = word_iterated_integral(PathWord::loop_for(k[2], genus_), dual_form(k[0]), dual_form(k[1]));
    sum += Real(c) * e.value.re;
    error += static_cast<double>(c < 0 ? -c : c) * e.error;
  }
  const Real frac = sum - boost::multiprecision::floor(sum);
  const int n = order();
  const Real scaled = frac * n;
  const long long k = boost::multiprecision::lround(scaled);
  NumericIQ0 out;
  out.value = frac.convert_to<double>();
  out.error = error;
  out.distance = boost::multiprecision::abs(scaled - k).convert_to<double>() / n;
  out.nearest = Rational(k % n, n);
  return out;
}

}  // namespace harmvol
