#include "harmvol/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

#include "harmvol/combinat.hpp"
#include "harmvol/error.hpp"

namespace harmvol {
namespace {

std::string basis_label(const ExactCurve& curve, std::size_t element, Gen third) {
  return curve.basis().elements()[element].label() + "⊗" + third.str();
}

std::string nu_label(int nu) { return "ν=" + std::to_string(nu); }

FormSpec form_from_slot(int slot, int genus) {
  return {static_cast<FormKind>(slot / genus), slot % genus + 1};
}

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

template <class F>
SuiteResult timed(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  SuiteResult r = f();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

// --- configuration -----------------------------------------------------------

EngineSet EngineSet::parse(const std::string& text) {
  if (text == "all") return {true, true, true, true};
  if (text == "exact") return {true, true, true, false};
  EngineSet e{false, false, false, false};
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "combinatorial") e.combinatorial = true;
    else if (item == "composed") e.composed = true;
    else if (item == "table") e.table = true;
    else if (item == "numeric") e.numeric = true;
    else throw ParseError("unknown engine \"" + item + "\" (expected combinatorial, composed, table, numeric)");
  }
  if (!e.exact_count() && !e.numeric) throw ParseError("no engine selected");
  return e;
}

std::vector<std::string> EngineSet::names() const {
  std::vector<std::string> out;
  if (combinatorial) out.push_back("combinatorial");
  if (composed) out.push_back("composed");
  if (table) out.push_back("table");
  if (numeric) out.push_back("numeric");
  return out;
}

std::vector<int> VerifyConfig::nus() const {
  if (nu) return {*nu};
  std::vector<int> out(2 * genus + 2);
  std::iota(out.begin(), out.end(), 0);
  return out;
}

// --- exact suites ------------------------------------------------------------

SuiteResult suite_engine_equivalence(const ExactCurve& curve, const VerifyConfig& config,
                                     const std::vector<HTensor>& tensors, const std::vector<TensorRow>& rows) {
  SuiteResult r("engine-equivalence");
  const EngineSet& e = config.engines;
  const auto check = [&](const std::string& input, const QmodZ& composed, const QmodZ& table, HalfInt k) {
    ++r.cases;
    std::vector<std::pair<std::string, QmodZ>> values;
    if (e.composed) values.emplace_back("composed", composed);
    if (e.table) values.emplace_back("table", table);
    if (e.combinatorial) values.emplace_back("combinatorial", k.to_qmodz());
    std::string detail;
    for (const auto& [name, v] : values)
      if (!v.is_half_or_zero()) detail += name + " = " + v.str() + " outside {0, 1/2}; ";
    for (std::size_t i = 1; i < values.size(); ++i)
      if (!(values[i].second == values[0].second))
        detail += values[0].first + " = " + values[0].second.str() + " but " + values[i].first + " = " +
                  values[i].second.str() + "; ";
    if (!detail.empty()) r.fail(input, detail.substr(0, detail.size() - 2));
  };
  for (int nu : config.nus())
    for (const BasisRow& row : basis_sweep(curve, nu, config.exec))
      check(nu_label(nu) + " " + basis_label(curve, row.element, row.third), row.composed, row.table, row.kappa);
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const std::string input = "random[" + std::to_string(t) + "] " + tensors[t].str();
    if (!rows[t].error.empty()) {
      ++r.cases;
      r.fail(input, rows[t].error);
      continue;
    }
    for (int nu : config.nus())
      check(nu_label(nu) + " " + input, rows[t].composed[nu], rows[t].table[nu], rows[t].kappa[nu]);
  }
  return r;
}

SuiteResult suite_kappa_prime(const ExactCurve& curve, const std::vector<HTensor>& tensors,
                              const std::vector<TensorRow>& rows) {
  SuiteResult r("kappa-prime");
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const std::string input = "random[" + std::to_string(t) + "] " + tensors[t].str();
    if (!rows[t].error.empty()) {
      ++r.cases;
      r.fail(input, rows[t].error);
      continue;
    }
    for (int nu = 0; nu < curve.order(); ++nu) {
      ++r.cases;
      if (!(rows[t].kappa[nu] == rows[t].kappa_prime[nu]))
        r.fail(nu_label(nu) + " " + input,
               "κ = " + rows[t].kappa[nu].str() + " but κ' = " + rows[t].kappa_prime[nu].str());
    }
  }
  return r;
}

SuiteResult suite_antisymmetry(const ExactCurve& curve, const std::vector<HTensor>& tensors, Execution exec) {
  SuiteResult r("antisymmetry");
  std::vector<std::string> problems(tensors.size());
  for_each_index(tensors.size(), exec, [&](std::size_t t) {
    const auto v = curve.harmonic_volume_all(tensors[t], Engine::composed);
    const auto w = curve.harmonic_volume_all(tensors[t].swap_first_two(), Engine::composed);
    for (int nu = 0; nu < curve.order(); ++nu)
      if (!(w[nu] == -v[nu])) problems[t] += nu_label(nu) + ": I(A) = " + v[nu].str() + ", I(swap A) = " + w[nu].str() + "; ";
  });
  for (std::size_t t = 0; t < tensors.size(); ++t) {
    r.cases += curve.order();
    if (!problems[t].empty()) r.fail("random[" + std::to_string(t) + "] " + tensors[t].str(), problems[t]);
  }
  return r;
}

SuiteResult suite_psi_relation_kill(int genus) {
  SuiteResult r("psi-relation-kill");
  const int d = 2 * genus + 2;
  r.cases = static_cast<std::size_t>(d) * 3 * (d - 1) * (d - 1);
  for (const auto& v : psi_relation_kill_violations(genus))
    r.fail(nu_label(v.nu) + " slot=" + std::to_string(v.slot + 1) + " j=" + std::to_string(v.j) +
               " k=" + std::to_string(v.k),
           "Σ_p ψ_ν is odd");
  return r;
}

SuiteResult suite_psi_permutation(const KBasis& basis, std::size_t count, std::uint64_t seed) {
  SuiteResult r("psi-permutation");
  const int genus = basis.genus();
  const auto tensors = random_kh_tensors(basis, count, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const int d = 2 * genus + 2;
  std::uniform_int_distribution<int> pick_nu(0, d - 1);
  for (std::size_t n = 0; n < count; ++n) {
    const int nu = pick_nu(rng);
    std::vector<int> others;
    for (int i = 0; i < d; ++i)
      if (i != nu) others.push_back(i);
    std::vector<int> shuffled = others;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::vector<int> perm(d);
    perm[nu] = nu;
    for (std::size_t i = 0; i < others.size(); ++i) perm[others[i]] = shuffled[i];
    const F2Tensor t = to_f_basis(tensors[n], nu);
    ++r.cases;
    const HalfInt before = count_half(t, false);
    const HalfInt after = count_half(relabel(t, perm), false);
    if (!(before == after))
      r.fail("permutation #" + std::to_string(n) + " " + nu_label(nu) + " " + tensors[n].str(),
             "κ = " + before.str() + " becomes " + after.str() + " after relabeling");
  }
  return r;
}

SuiteResult suite_structural(const ExactCurve& curve) {
  SuiteResult r("structural");
  const int g = curve.genus();
  const int n = curve.order();
  const CurveParams& p = curve.params();

  const Matrix<mpz_class> m = curve.basis().integer_matrix();
  Matrix<Rational> q(m.rows(), m.cols(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = Rational(mpq_class(m(i, j)));
  const std::size_t expected = static_cast<std::size_t>(4 * g * g - 1);
  ++r.cases;
  if (rank(q) != expected) r.fail("K basis", "rank " + std::to_string(rank(q)) + " ≠ " + std::to_string(expected));
  ++r.cases;
  const auto invariants = smith_invariants(m);
  const bool unimodular = invariants.size() == expected &&
                          std::all_of(invariants.begin(), invariants.end(), [](const mpz_class& v) { return v == 1; });
  if (!unimodular) r.fail("K basis", "Smith invariants are not all 1: the basis is not a ℤ-basis of K");

  for (int u = -3 * n; u <= 3 * n; ++u) {
    ++r.cases;
    const CycloNum t = t_value(u, p);
    if (!(t == t_power_sum(u, p))) r.fail("t_" + std::to_string(u), "case table " + t.str() + " ≠ power sum");
    if (u % 2 != 0) {
      if (!(t_value(-u, p) == -t)) r.fail("t_" + std::to_string(u), "t_{−u} ≠ −t_u");
      if (!t.real_part().is_zero()) r.fail("t_" + std::to_string(u), "Re t_u ≠ 0 for odd u");
    }
  }
  const CycloNum zero = CycloNum::zero(n);
  const CycloNum one = CycloNum::one(n);
  r.cases += 2;
  if (determinant(period_matrix_a(p), one) == zero) r.fail("Ω_a", "singular");
  if (determinant(period_matrix_b(p), one) == zero) r.fail("Ω_b", "singular");
  return r;
}

// --- numeric suites ----------------------------------------------------------

SuiteResult suite_numeric_periods(const NumericCurve& numeric, const ExactCurve& curve) {
  SuiteResult r("numeric-periods");
  const int g = curve.genus();
  const unsigned bits = numeric.options().precision_bits;
  PrecisionScope scope(bits);
  for (int i = 1; i <= g; ++i)
    for (int j = 1; j <= g; ++j)
      for (Loop loop : {Loop::a, Loop::b}) {
        const bool is_a = loop == Loop::a;
        const PathWord w = is_a ? PathWord::a_loop(j, g) : PathWord::b_loop(j, g);
        const Estimate e = numeric.word_line_integral(w, omega(i));
        const CycloNum exact = is_a ? period_a(i, j, curve.params()) : period_b(i, j, curve.params());
        const double d = distance(e.value, exact.embed(bits));
        ++r.cases;
        r.observe(d);
        if (d > NumericTolerances::period)
          r.fail(std::string("∫_") + (is_a ? "a" : "b") + std::to_string(j) + " ω'" + std::to_string(i),
                 "numeric " + e.value.str(14) + " vs exact " + exact.str() + ", |Δ| = " + sci(d));
      }
  return r;
}

SuiteResult suite_numeric_loop_iterated(const NumericCurve& numeric, const ExactCurve& curve) {
  SuiteResult r("numeric-loop-iterated");
  const int g = curve.genus();
  const unsigned bits = numeric.options().precision_bits;
  PrecisionScope scope(bits);
  for (int i = 1; i <= g; ++i)
    for (int j = 1; j <= g; ++j)
      for (int k = 1; k <= g; ++k)
        for (Loop loop : {Loop::a, Loop::b}) {
          const bool is_a = loop == Loop::a;
          const PathWord w = is_a ? PathWord::a_loop(k, g) : PathWord::b_loop(k, g);
          const Estimate e = numeric.word_iterated_integral(w, alpha(i), beta(j));
          const CycloNum exact = iter_ab_closed(i, j, k, loop, curve.params());
          const double d = distance(e.value, exact.embed(bits));
          ++r.cases;
          r.observe(d);
          if (d > NumericTolerances::loop_iterated)
            r.fail(std::string("∫_") + (is_a ? "a" : "b") + std::to_string(k) + " α" + std::to_string(i) + "β" +
                       std::to_string(j),
                   "numeric " + e.value.str(14) + " vs closed form " + exact.str() + ", |Δ| = " + sci(d));
        }
  return r;
}

SuiteResult suite_numeric_ell(const NumericCurve& numeric, const ExactCurve& curve) {
  SuiteResult r("numeric-ell");
  const unsigned bits = numeric.options().precision_bits;
  PrecisionScope scope(bits);
  for (int nu = 0; nu < curve.order(); ++nu)
    for (const Gen& z : generators(curve.genus())) {
      const Estimate e = numeric.ell_line_integral(dual_form(z), nu);
      const Rational& exact = curve.ell(z, nu);
      const double d = distance(e.value, ComplexHP(to_real(exact), Real(0), bits));
      ++r.cases;
      r.observe(d);
      if (d > NumericTolerances::ell)
        r.fail("∫_ℓ" + std::to_string(nu) + " " + dual_form(z).str(),
               "numeric " + e.value.str(14) + " vs exact " + exact.str() + ", |Δ| = " + sci(d));
    }
  return r;
}

SuiteResult suite_numeric_iq0(const NumericCurve& numeric, const ExactCurve& curve, double tol_modz,
                              TableVariant variant) {
  SuiteResult r(variant == TableVariant::completed ? "numeric-iq0" : "numeric-iq0-uncorrected");
  for (std::size_t el = 0; el < curve.basis().size(); ++el)
    for (const Gen& z : generators(curve.genus())) {
      const NumericIQ0 v = numeric.numeric_I_Q0(curve.basis().element_tensor(el, z));
      const QmodZ table = curve.i_q0_table(el, z, variant);
      double d = std::abs(v.value - table.value().to_double());
      d = std::min(d, 1 - d);
      ++r.cases;
      r.observe(d);
      std::string detail;
      if (d > tol_modz) detail = "numeric " + std::to_string(v.value) + " vs table " + table.str() + ", distance " + sci(d);
      if (v.distance > tol_modz)
        detail += std::string(detail.empty() ? "" : "; ") + "off the μ-lattice by " + sci(v.distance);
      if (!detail.empty()) r.fail(basis_label(curve, el, z), detail);
    }
  return r;
}

SuiteResult suite_chen_algebra(const NumericCurve& numeric, std::size_t random_words, std::uint64_t seed) {
  SuiteResult r("chen-algebra");
  const int g = numeric.genus();
  const int n = numeric.order();
  const int forms = 3 * g;
  PrecisionScope scope(numeric.options().precision_bits);
  const auto mag = [](const ComplexHP& v) { return v.abs().convert_to<double>(); };

  for (int j = 0; j < n; ++j) {
    const Letter e{j, false, false};
    for (int a = 0; a < forms; ++a)
      for (int b = 0; b < forms; ++b) {
        const FormSpec f = form_from_slot(a, g), h = form_from_slot(b, g);
        const ComplexHP lhs = numeric.segment_iterated_integral(e, f, h).value +
                              numeric.segment_iterated_integral(e, h, f).value -
                              numeric.segment_line_integral(e, f).value * numeric.segment_line_integral(e, h).value;
        const double d = mag(lhs);
        ++r.cases;
        r.observe(d);
        if (d > NumericTolerances::shuffle)
          r.fail("shuffle e" + std::to_string(j) + " " + f.str() + "," + h.str(), "residual " + sci(d));
      }
    for (bool iota : {false, true}) {
      const Letter l{j, iota, false};
      const PathWord w(g, {l, l.reversed()});
      for (int a = 0; a < forms; ++a) {
        const double dl = mag(numeric.word_line_integral(w, form_from_slot(a, g)).value);
        ++r.cases;
        r.observe(dl);
        if (dl > NumericTolerances::trivial_line) r.fail("trivial " + w.str() + " line " + form_from_slot(a, g).str(), sci(dl));
        for (int b = 0; b < forms; ++b) {
          const double di = mag(numeric.word_iterated_integral(w, form_from_slot(a, g), form_from_slot(b, g)).value);
          ++r.cases;
          r.observe(di);
          if (di > NumericTolerances::trivial_iterated)
            r.fail("trivial " + w.str() + " " + form_from_slot(a, g).str() + form_from_slot(b, g).str(), sci(di));
        }
      }
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_j(0, n - 1);
  std::uniform_int_distribution<int> pick_len(1, 6);
  std::uniform_int_distribution<int> pick_form(0, forms - 1);
  std::bernoulli_distribution coin;
  for (std::size_t k = 0; k < random_words; ++k) {
    std::vector<Letter> letters;
    Endpoint at = coin(rng) ? Endpoint::Q1 : Endpoint::Q0;
    const int len = pick_len(rng);
    for (int s = 0; s < len; ++s) {
      Letter l{pick_j(rng), false, coin(rng)};
      l.iota = l.inverse != (at == Endpoint::Q1);
      letters.push_back(l);
      at = l.end();
    }
    const PathWord w(g, letters);
    std::vector<Letter> flipped;
    for (Letter l : letters) {
      l.iota = !l.iota;
      flipped.push_back(l);
    }
    const PathWord iw(g, flipped);
    const FormSpec f = form_from_slot(pick_form(rng), g), h = form_from_slot(pick_form(rng), g);

    const double rev = mag(numeric.word_iterated_integral(w.inverse(), f, h).value -
                           numeric.word_iterated_integral(w, h, f).value);
    ++r.cases;
    r.observe(rev);
    if (rev > NumericTolerances::reversal) r.fail("reversal " + w.str() + " " + f.str() + h.str(), sci(rev));

    const double inv_line = mag(numeric.word_line_integral(iw, f).value + numeric.word_line_integral(w, f).value);
    const double inv_iter = mag(numeric.word_iterated_integral(iw, f, h).value -
                                numeric.word_iterated_integral(w, f, h).value);
    r.cases += 2;
    r.observe(std::max(inv_line, inv_iter));
    if (inv_line > NumericTolerances::involution) r.fail("involution " + w.str() + " " + f.str(), sci(inv_line));
    if (inv_iter > NumericTolerances::involution)
      r.fail("involution " + w.str() + " " + f.str() + h.str(), sci(inv_iter));
  }
  return r;
}

// --- orchestration -----------------------------------------------------------

std::vector<SuiteResult> run_verification(const VerifyConfig& config) {
  const ExactCurve curve(config.genus);
  for (int nu : config.nus())
    if (nu < 0 || nu >= curve.order()) throw DomainError("base index ν out of range");
  std::vector<SuiteResult> out;

  out.push_back(timed([&] { return suite_structural(curve); }));
  out.push_back(timed([&] { return suite_psi_relation_kill(config.genus); }));
  out.push_back(timed([&] { return suite_psi_permutation(curve.basis(), config.permutation_count, config.seed); }));

  if (config.engines.exact_count() > 0) {
    const auto start = std::chrono::steady_clock::now();
    const auto tensors = random_kh_tensors(curve.basis(), config.random_count, config.seed);
    const auto rows = tensor_sweep(curve, tensors, config.exec, config.engines.combinatorial);
    const double shared = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    SuiteResult eq = timed([&] { return suite_engine_equivalence(curve, config, tensors, rows); });
    eq.seconds += shared;
    out.push_back(std::move(eq));
    if (config.engines.combinatorial) out.push_back(timed([&] { return suite_kappa_prime(curve, tensors, rows); }));
    if (config.engines.composed)
      out.push_back(timed([&] { return suite_antisymmetry(curve, tensors, config.exec); }));
  }

  if (config.engines.numeric) {
    const auto start = std::chrono::steady_clock::now();
    std::optional<NumericCurve> numeric;
    std::string error;
    double achieved = 0;
    try {
      numeric.emplace(config.genus, config.quadrature, config.exec);
    } catch (const ConvergenceError& e) {
      error = e.what();
      achieved = e.achieved();
    }
    const double build = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const char* names[] = {"numeric-periods", "numeric-loop-iterated", "numeric-ell", "numeric-iq0", "chen-algebra"};
    if (!numeric) {
      for (const char* name : names) {
        SuiteResult r{name};
        r.cases = 1;
        r.max_error = achieved;
        r.fail("quadrature", error);
        out.push_back(std::move(r));
      }
      out[out.size() - 5].seconds = build;
      return out;
    }
    SuiteResult first = timed([&] { return suite_numeric_periods(*numeric, curve); });
    first.seconds += build;
    out.push_back(std::move(first));
    out.push_back(timed([&] { return suite_numeric_loop_iterated(*numeric, curve); }));
    out.push_back(timed([&] { return suite_numeric_ell(*numeric, curve); }));
    out.push_back(timed([&] { return suite_numeric_iq0(*numeric, curve, config.tol_modz); }));
    out.push_back(timed([&] { return suite_chen_algebra(*numeric, config.random_words, config.seed); }));
  }
  return out;
}

// --- reports -----------------------------------------------------------------

ReportFormat parse_report_format(const std::string& text) {
  if (text == "json") return ReportFormat::json;
  if (text == "markdown" || text == "md") return ReportFormat::markdown;
  if (text == "csv") return ReportFormat::csv;
  throw ParseError("unknown format \"" + text + "\" (expected json, markdown, csv)");
}

namespace {

nlohmann::ordered_json config_json(const VerifyConfig& c) {
  nlohmann::ordered_json j;
  j["g"] = c.genus;
  if (c.nu) j["nu"] = *c.nu;
  else j["nu"] = "all";
  j["engines"] = c.engines.names();
  j["seed"] = c.seed;
  j["random_count"] = c.random_count;
  j["precision"] = c.quadrature.precision_bits;
  j["tol_line"] = c.quadrature.tol_line;
  j["tol_iterated"] = c.quadrature.tol_iterated;
  j["tol_modz"] = c.tol_modz;
  return j;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string verification_report(const VerifyConfig& config, const std::vector<SuiteResult>& suites,
                                 ReportFormat format, bool timing) {
  std::ostringstream os;
  switch (format) {
    case ReportFormat::json: {
      nlohmann::ordered_json doc;
      doc["version"] = 1;
      doc["config"] = config_json(config);
      doc["suites"] = nlohmann::ordered_json::array();
      for (const auto& s : suites) {
        nlohmann::ordered_json js;
        js["name"] = s.name;
        js["cases"] = s.cases;
        js["failures"] = nlohmann::ordered_json::array();
        for (const auto& f : s.failures) js["failures"].push_back({{"input", f.input}, {"detail", f.detail}});
        js["max_error"] = s.max_error;
        js["seconds"] = timing ? s.seconds : 0.0;
        doc["suites"].push_back(std::move(js));
      }
      os << doc.dump(2) << "\n";
      break;
    }
    case ReportFormat::markdown: {
      os << "# Verification, g = " << config.genus << "\n\n";
      os << "| suite | cases | failures | max error | seconds |\n|---|---|---|---|---|\n";
      for (const auto& s : suites)
        os << "| " << s.name << " | " << s.cases << " | " << s.failures.size() << " | " << sci(s.max_error) << " | "
           << (timing ? s.seconds : 0.0) << " |\n";
      for (const auto& s : suites) {
        if (s.failures.empty()) continue;
        os << "\n## " << s.name << " failures\n\n";
        for (const auto& f : s.failures) os << "- `" << f.input << "`: " << f.detail << "\n";
      }
      break;
    }
    case ReportFormat::csv: {
      os << "suite,cases,failures,max_error,seconds\n";
      for (const auto& s : suites)
        os << csv_quote(s.name) << "," << s.cases << "," << s.failures.size() << "," << sci(s.max_error) << ","
           << (timing ? s.seconds : 0.0) << "\n";
      break;
    }
  }
  return os.str();
}

}  // namespace harmvol
