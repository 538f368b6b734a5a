#pragma once

#include <string>
#include <vector>

#include "harmvol/homology.hpp"
#include "harmvol/qmodz.hpp"

namespace harmvol {

/// Element of ½ℤ/ℤ = {0, 1/2}.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr explicit HalfInt(bool half) : half_(half) {}
  static constexpr HalfInt from_count(std::size_t n) { return HalfInt(n % 2 == 1); }

  constexpr bool is_half() const noexcept { return half_; }
  QmodZ to_qmodz() const { return half_ ? QmodZ(Rational(1, 2)) : QmodZ(); }
  std::string str() const { return half_ ? "1/2" : "0"; }

  constexpr HalfInt& operator+=(HalfInt o) { half_ = half_ != o.half_; return *this; }
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return a += b; }
  friend constexpr bool operator==(HalfInt, HalfInt) = default;

 private:
  bool half_ = false;
};

/// ψ_ν(f_i⊗f_j⊗f_k): 1 iff exactly two of i, j, k coincide. Indices must avoid ν.
int psi(int i, int j, int k, int nu);

/// ½·#{triples with exactly two distinct indices} mod ℤ. When
/// `exclude_nu` is set, triples touching ν are skipped.
HalfInt count_half(const F2Tensor& t, bool exclude_nu);

/// κ_ν(A): counts in the f-basis expansion of A mod 2.
HalfInt kappa(const HTensor& a, int nu);
/// κ'_ν(A): counts in the branch-basis expansion, ignoring triples with index ν.
HalfInt kappa_prime(const HTensor& a, int nu);

/// Relabels f-indices of an f-basis tensor by a permutation of {0…2g+1}
/// fixing ν.
F2Tensor relabel(const F2Tensor& t, const std::vector<int>& perm);

/// Every violated relation-kill sum Σ_{p≠ν} ψ_ν(p in slot s, others fixed);
/// empty when ψ_ν is well defined on H^{⊗3}.
struct RelationKillViolation {
  int nu;
  int slot;
  int j;
  int k;
};
std::vector<RelationKillViolation> psi_relation_kill_violations(int genus);

}  // namespace harmvol
