#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "harmvol/analytic.hpp"
#include "harmvol/execution.hpp"
#include "harmvol/quadrature.hpp"
#include "harmvol/sweep.hpp"

namespace harmvol {

/// Engines selectable from the command line.
struct EngineSet {
  bool combinatorial = true;
  bool composed = true;
  bool table = true;
  bool numeric = false;

  /// Comma list of combinatorial, composed, table, numeric; or "exact", "all".
  static EngineSet parse(const std::string& text);
  std::vector<std::string> names() const;
  int exact_count() const { return combinatorial + composed + table; }
};

struct VerifyConfig {
  int genus = 2;
  std::optional<int> nu;  ///< all base points when empty
  EngineSet engines;
  std::uint64_t seed = 1;
  std::size_t random_count = 1000;
  std::size_t permutation_count = 200;
  std::size_t random_words = 50;
  QuadratureOptions quadrature;
  double tol_modz = 1e-5;
  Execution exec = Execution::parallel;

  std::vector<int> nus() const;
};

/// Fixed tolerances of the numeric comparison suites.
struct NumericTolerances {
  static constexpr double period = 1e-8;
  static constexpr double loop_iterated = 1e-6;
  static constexpr double ell = 1e-8;
  static constexpr double shuffle = 1e-9;
  static constexpr double reversal = 1e-8;
  static constexpr double involution = 1e-8;
  static constexpr double trivial_iterated = 1e-10;
  static constexpr double trivial_line = 1e-12;
};

struct Failure {
  std::string input;
  std::string detail;
};

struct SuiteResult {
  SuiteResult() = default;
  explicit SuiteResult(std::string suite_name) : name(std::move(suite_name)) {}

  std::string name;
  std::size_t cases = 0;
  std::vector<Failure> failures;
  double max_error = 0;
  double seconds = 0;

  bool passed() const { return failures.empty() && cases > 0; }
  void fail(std::string input, std::string detail) { failures.push_back({std::move(input), std::move(detail)}); }
  void observe(double error) { max_error = std::max(max_error, error); }
};

// Exact suites.
SuiteResult suite_engine_equivalence(const ExactCurve& curve, const VerifyConfig& config,
                                     const std::vector<HTensor>& tensors, const std::vector<TensorRow>& rows);
SuiteResult suite_kappa_prime(const ExactCurve& curve, const std::vector<HTensor>& tensors,
                              const std::vector<TensorRow>& rows);
SuiteResult suite_antisymmetry(const ExactCurve& curve, const std::vector<HTensor>& tensors, Execution exec);
SuiteResult suite_psi_relation_kill(int genus);
/// κ_ν(A) is unchanged when the f-indices other than ν are permuted.
SuiteResult suite_psi_permutation(const KBasis& basis, std::size_t count, std::uint64_t seed);
SuiteResult suite_structural(const ExactCurve& curve);

// Numeric suites.
SuiteResult suite_numeric_periods(const NumericCurve& numeric, const ExactCurve& curve);
SuiteResult suite_numeric_loop_iterated(const NumericCurve& numeric, const ExactCurve& curve);
SuiteResult suite_numeric_ell(const NumericCurve& numeric, const ExactCurve& curve);
SuiteResult suite_numeric_iq0(const NumericCurve& numeric, const ExactCurve& curve, double tol_modz,
                              TableVariant variant = TableVariant::completed);
SuiteResult suite_chen_algebra(const NumericCurve& numeric, std::size_t random_words, std::uint64_t seed);

/// Runs every suite the configuration selects, in a fixed order.
std::vector<SuiteResult> run_verification(const VerifyConfig& config);

enum class ReportFormat { json, markdown, csv };
ReportFormat parse_report_format(const std::string& text);

/// Report {"version": 1, "config": {...}, "suites": [...]}. With
/// `timing` false every "seconds" field is 0 so reports are reproducible.
std::string verification_report(const VerifyConfig& config, const std::vector<SuiteResult>& suites,
                                 ReportFormat format, bool timing);

}  // namespace harmvol
