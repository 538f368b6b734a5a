// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria, so ctest reports any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "harmvol/analytic.hpp"
#include "harmvol/combinat.hpp"
#include "harmvol/error.hpp"
#include "harmvol/quadrature.hpp"
#include "harmvol/sweep.hpp"
#include "harmvol/verify.hpp"

using namespace harmvol;

namespace {

constexpr std::uint64_t kSeed = 1;
constexpr std::size_t kRandomTensors = 1000;
constexpr std::size_t kPermutations = 200;
constexpr std::size_t kRandomWords = 50;
constexpr double kTolModZ = 1e-5;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  std::string first_failure;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) first_failure = what;
    pass = false;
  }
  void absorb(const SuiteResult& s, const std::string& tag) {
    std::ostringstream os;
    os << tag << " " << s.name << " " << s.cases << " cases";
    if (s.max_error > 0) os << ", max err " << s.max_error;
    notes.push_back(os.str());
    std::string what = tag + " " + s.name;
    if (!s.failures.empty()) what += ": " + s.failures.front().input + ": " + s.failures.front().detail;
    else if (s.cases == 0) what += ": no cases ran";
    require(s.passed(), what);
  }
};

int failed = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.first_failure = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("[%s] criterion %d: %s (%.2f s)", o.pass ? "PASS" : "FAIL", id, title.c_str(), secs);
  if (!o.notes.empty()) {
    std::printf(" |");
    for (const std::string& n : o.notes) std::printf(" %s;", n.c_str());
  }
  if (!o.pass) std::printf(" | first failure: %s", o.first_failure.c_str());
  std::printf("\n");
  std::fflush(stdout);
  if (!o.pass) ++failed;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::size_t find_element(const ExactCurve& c, const std::string& label) {
  const auto& e = c.basis().elements();
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i].label() == label) return i;
  throw DomainError("no basis element " + label);
}

HTensor mono(int g, Gen a, Gen b, Gen c) { return HTensor::monomial(g, {a, b, c}); }

// Criteria 1 and 4 share one sweep per genus.
struct ExactSweep {
  int genus;
  std::size_t basis_cases = 0;
  std::size_t random_cases = 0;
  SuiteResult equivalence;
  std::size_t out_of_range = 0;
  std::size_t range_checked = 0;
  std::string first_out_of_range;
};

std::vector<ExactSweep> run_exact_sweeps(double& seconds) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<ExactSweep> out;
  for (int g : {2, 3, 4}) {
    const ExactCurve curve(g);
    VerifyConfig config;
    config.genus = g;
    config.engines = EngineSet::parse("exact");
    const auto tensors = random_kh_tensors(curve.basis(), kRandomTensors, kSeed);
    const auto rows = tensor_sweep(curve, tensors, Execution::parallel, false);
    ExactSweep s{g, 0, 0, suite_engine_equivalence(curve, config, tensors, rows), 0, 0, {}};
    const auto check_range = [&](const QmodZ& v, const std::string& where) {
      ++s.range_checked;
      if (!v.is_half_or_zero() && s.out_of_range++ == 0) s.first_out_of_range = where + " = " + v.str();
    };
    for (int nu = 0; nu < curve.order(); ++nu)
      for (const BasisRow& r : basis_sweep(curve, nu, Execution::parallel)) {
        ++s.basis_cases;
        const std::string where = "g=" + std::to_string(g) + " nu=" + std::to_string(nu) + " " +
                                  curve.basis().elements()[r.element].label() + "⊗" + r.third.str();
        check_range(r.composed, where + " composed");
        check_range(r.table, where + " table");
        check_range(r.kappa.to_qmodz(), where + " kappa");
      }
    for (std::size_t t = 0; t < rows.size(); ++t) {
      if (!rows[t].error.empty()) continue;
      for (int nu = 0; nu < curve.order(); ++nu) {
        ++s.random_cases;
        const std::string where = "g=" + std::to_string(g) + " nu=" + std::to_string(nu) + " random[" +
                                  std::to_string(t) + "]";
        check_range(rows[t].composed[nu], where + " composed");
        check_range(rows[t].table[nu], where + " table");
        check_range(rows[t].kappa[nu].to_qmodz(), where + " kappa");
      }
    }
    out.push_back(std::move(s));
  }
  seconds = seconds_since(start);
  return out;
}

}  // namespace

int main() {
  double sweep_seconds = 0;
  std::optional<std::vector<ExactSweep>> sweeps;
  std::string sweep_error;
  try {
    sweeps = run_exact_sweeps(sweep_seconds);
  } catch (const std::exception& e) {
    sweep_error = e.what();
  }

  report(1, "exact engines agree on the basis and 1000 random tensors, g = 2, 3, 4, every nu", [&] {
    Outcome o;
    o.require(sweeps.has_value(), "sweep threw: " + sweep_error);
    if (!sweeps) return o;
    const std::size_t expected_basis[] = {60, 210, 504};
    for (std::size_t k = 0; k < sweeps->size(); ++k) {
      const ExactSweep& s = (*sweeps)[k];
      const std::string tag = "g=" + std::to_string(s.genus);
      const std::size_t per_nu = s.basis_cases / static_cast<std::size_t>(2 * s.genus + 2);
      o.require(per_nu == expected_basis[k],
                tag + ": " + std::to_string(per_nu) + " basis cases per nu, expected " +
                    std::to_string(expected_basis[k]));
      o.require(s.random_cases == kRandomTensors * static_cast<std::size_t>(2 * s.genus + 2),
                tag + ": only " + std::to_string(s.random_cases) + " random (tensor, nu) cases evaluated");
      o.absorb(s.equivalence, tag);
    }
    o.notes.push_back("shared sweep " + std::to_string(sweep_seconds) + " s");
    o.require(sweep_seconds < 60, "runtime " + std::to_string(sweep_seconds) + " s exceeds 60 s");
    return o;
  });

  report(2, "kappa = kappa' on 1000 random tensors, g = 2..6", [] {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    for (int g = 2; g <= 6; ++g) {
      const KBasis basis(g);
      const auto tensors = random_kh_tensors(basis, kRandomTensors, kSeed);
      std::vector<std::string> mismatch(tensors.size());
      for_each_index(tensors.size(), Execution::parallel, [&](std::size_t t) {
        for (int nu = 0; nu < 2 * g + 2; ++nu)
          if (!(kappa(tensors[t], nu) == kappa_prime(tensors[t], nu))) {
            mismatch[t] = "g=" + std::to_string(g) + " nu=" + std::to_string(nu) + " " + tensors[t].str();
            return;
          }
      });
      std::size_t bad = 0;
      for (const std::string& m : mismatch)
        if (!m.empty()) {
          ++bad;
          o.require(false, m);
        }
      o.notes.push_back("g=" + std::to_string(g) + " " + std::to_string(tensors.size()) + " tensors, " +
                        std::to_string(bad) + " mismatches");
    }
    const double secs = seconds_since(start);
    o.require(secs < 10, "runtime " + std::to_string(secs) + " s exceeds 10 s");
    return o;
  });

  report(3, "worked examples reproduced exactly", [] {
    Outcome o;
    const ExactCurve c(2);
    const Rational mu(1, 6);
    const auto is = [&](const QmodZ& got, const Rational& want, const std::string& what) {
      o.require(got == QmodZ(want), what + " = " + got.str() + ", expected " + QmodZ(want).str());
    };
    is(kappa(mono(2, x(1), x(2), y(1)), 3).to_qmodz(), Rational(1, 2), "kappa_3(x1⊗x2⊗y1)");
    is(kappa(mono(2, x(2), x(1), y(2)), 5).to_qmodz(), Rational(0), "kappa_5(x2⊗x1⊗y2)");
    is(c.i_q0_table(find_element(c, "x1⊗x2"), y(1)), mu, "I_Q0(x1⊗x2⊗y1)");
    // (g − j + 1)μ with j = 2.
    is(c.i_q0_table(find_element(c, "x1⊗y2"), y(1)), mu * Rational(2 - 2 + 1), "I_Q0(x1⊗y2⊗y1)");
    const std::size_t diag = find_element(c, "(x2⊗y2-x1⊗y1)");
    is(c.value_table(find_element(c, "x1⊗x2"), y(1), 3).to_qmodz(), Rational(1, 2), "table_3(x1⊗x2⊗y1)");
    is(c.value_table(diag, x(2), 4).to_qmodz(), Rational(0), "table_4((x2⊗y2-x1⊗y1)⊗x2)");
    is(c.value_table(find_element(c, "x1⊗y2"), y(1), 0).to_qmodz(), Rational(0), "table_0(x1⊗y2⊗y1)");
    for (Engine e : {Engine::composed, Engine::table}) {
      const std::string name = e == Engine::composed ? "composed" : "table";
      is(c.harmonic_volume(mono(2, x(1), x(2), y(1)), 3, e), Rational(1, 2), name + " I_3(x1⊗x2⊗y1)");
      is(c.harmonic_volume(mono(2, x(1), y(2), y(1)), 0, e), Rational(0), name + " I_0(x1⊗y2⊗y1)");
    }
    // Every table row at ν = 3 and 4 against κ.
    std::size_t rows = 0;
    for (int nu : {3, 4})
      for (const BasisRow& r : basis_sweep(c, nu, Execution::serial)) {
        ++rows;
        o.require(r.table == r.kappa.to_qmodz(),
                  "nu=" + std::to_string(nu) + " " + c.basis().elements()[r.element].label() + "⊗" +
                      r.third.str() + ": table " + r.table.str() + " vs kappa " + r.kappa.str());
      }
    o.notes.push_back(std::to_string(rows) + " table rows at nu = 3, 4");
    return o;
  });

  report(4, "every exact value lies in {0, 1/2}", [&] {
    Outcome o;
    o.require(sweeps.has_value(), "sweep threw: " + sweep_error);
    if (!sweeps) return o;
    for (const ExactSweep& s : *sweeps) {
      o.require(s.range_checked > 0, "g=" + std::to_string(s.genus) + ": nothing checked");
      o.require(s.out_of_range == 0, s.first_out_of_range);
      o.notes.push_back("g=" + std::to_string(s.genus) + " " + std::to_string(s.range_checked) + " values");
    }
    return o;
  });

  report(5, "psi kills the relation (g <= 4) and kappa is permutation invariant", [] {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    for (int g = 2; g <= 4; ++g) {
      const std::string tag = "g=" + std::to_string(g);
      o.absorb(suite_psi_relation_kill(g), tag);
      o.absorb(suite_psi_permutation(KBasis(g), kPermutations, kSeed), tag);
    }
    const double secs = seconds_since(start);
    o.require(secs < 5, "runtime " + std::to_string(secs) + " s exceeds 5 s");
    return o;
  });

  std::vector<std::pair<int, std::optional<NumericCurve>>> numeric;
  std::string numeric_error;
  const auto numeric_start = std::chrono::steady_clock::now();
  for (int g : {2, 3}) {
    try {
      numeric.emplace_back(g, NumericCurve(g));
    } catch (const std::exception& e) {
      numeric.emplace_back(g, std::nullopt);
      numeric_error += "g=" + std::to_string(g) + ": " + e.what() + " ";
    }
  }
  const double quadrature_seconds = seconds_since(numeric_start);

  report(6, "closed forms match the numeric oracle, g = 2, 3", [&] {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    for (const auto& [g, curve] : numeric) {
      const std::string tag = "g=" + std::to_string(g);
      o.require(curve.has_value(), tag + " quadrature: " + numeric_error);
      if (!curve) continue;
      const ExactCurve exact(g);
      o.absorb(suite_numeric_periods(*curve, exact), tag);
      o.absorb(suite_numeric_loop_iterated(*curve, exact), tag);
      o.absorb(suite_numeric_ell(*curve, exact), tag);
      o.absorb(suite_numeric_iq0(*curve, exact, kTolModZ), tag);
      const SuiteResult unc = suite_numeric_iq0(*curve, exact, kTolModZ, TableVariant::uncorrected);
      o.notes.push_back(tag + " table without the (x_i⊗y_i-x1⊗y1)⊗y_k cells: " +
                        std::to_string(unc.failures.size()) + " numeric mismatches");
    }
    const double secs = seconds_since(start) + quadrature_seconds;
    o.notes.push_back("quadrature " + std::to_string(quadrature_seconds) + " s");
    o.require(secs < 600, "runtime " + std::to_string(secs) + " s exceeds 600 s");
    return o;
  });

  report(7, "Chen algebra: shuffle, reversal, trivial words", [&] {
    Outcome o;
    for (const auto& [g, curve] : numeric) {
      const std::string tag = "g=" + std::to_string(g);
      o.require(curve.has_value(), tag + " quadrature: " + numeric_error);
      if (curve) o.absorb(suite_chen_algebra(*curve, kRandomWords, kSeed), tag);
    }
    return o;
  });

  report(8, "K basis rank and t_u identities, g = 2..6", [] {
    Outcome o;
    for (int g = 2; g <= 6; ++g) {
      o.absorb(suite_structural(ExactCurve(g)), "g=" + std::to_string(g));
    }
    return o;
  });

  std::printf("%d of 8 criteria failed\n", failed);
  return failed;
}
