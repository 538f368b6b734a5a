#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "harmvol/analytic.hpp"
#include "harmvol/combinat.hpp"
#include "harmvol/execution.hpp"

namespace harmvol {

/// I_ν of one canonical basis element of K⊗H by every exact engine.
struct BasisRow {
  std::size_t element;
  Gen third;
  int nu;
  QmodZ composed;
  QmodZ table;
  HalfInt kappa;

  bool agree() const { return composed == table && table == kappa.to_qmodz(); }
  bool in_range() const { return composed.is_half_or_zero() && table.is_half_or_zero(); }
};

/// Rows for every (element, third factor) in basis order, at one ν.
std::vector<BasisRow> basis_sweep(const ExactCurve& curve, int nu, Execution exec,
                                  TableVariant variant = TableVariant::completed);

/// Random integral elements of K⊗H: each is a sum of 1–6 basis elements
/// with coefficients in −3…3, drawn from mt19937_64(seed).
std::vector<HTensor> random_kh_tensors(const KBasis& basis, std::size_t count, std::uint64_t seed);

/// All engines on one tensor, indexed by ν.
struct TensorRow {
  std::vector<QmodZ> composed;
  std::vector<QmodZ> table;
  std::vector<HalfInt> kappa;
  std::vector<HalfInt> kappa_prime;
  std::string error;  ///< non-empty when an engine threw
};

std::vector<TensorRow> tensor_sweep(const ExactCurve& curve, const std::vector<HTensor>& tensors, Execution exec,
                                    bool with_kappa_prime = true);

}  // namespace harmvol
