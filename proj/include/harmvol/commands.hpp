#pragma once

#include <optional>
#include <string>

#include "harmvol/homology.hpp"
#include "harmvol/verify.hpp"

namespace harmvol {

inline constexpr int kMaxExactGenus = 8;
inline constexpr int kMaxNumericGenus = 3;

/// Options shared by the table, eval and verify commands.
struct RunConfig {
  int genus = 2;
  std::optional<int> nu;  ///< all base points when empty
  EngineSet engines;
  QuadratureOptions quadrature;
  double tol_modz = 1e-5;
  ReportFormat format = ReportFormat::json;
  std::uint64_t seed = 1;
  std::size_t random_count = 1000;
  bool timing = true;
  int max_genus_exact = kMaxExactGenus;
  int max_genus_numeric = kMaxNumericGenus;
  Execution exec = Execution::parallel;

  /// Throws DomainError when g or ν is out of range for the selected engines.
  void validate() const;
  VerifyConfig verify_config() const;
};

struct CommandResult {
  std::string output;
  int exit_code = 0;  ///< 0 success, 1 disagreement or failed check
};

/// I_ν for every canonical basis element of K⊗H, one column per engine.
CommandResult cmd_table(const RunConfig& config);
/// κ_ν, κ'_ν and any other selected engine on one tensor.
CommandResult cmd_eval(const RunConfig& config, const HTensor& tensor);
CommandResult cmd_verify(const RunConfig& config);

}  // namespace harmvol
