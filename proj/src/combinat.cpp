#include "harmvol/combinat.hpp"

#include "harmvol/error.hpp"

namespace harmvol {

int psi(int i, int j, int k, int nu) {
  if (i == nu || j == nu || k == nu) throw DomainError("psi: index equals the base index ν");
  const int equal_pairs = (i == j) + (j == k) + (i == k);
  return equal_pairs == 1 ? 1 : 0;
}

HalfInt count_half(const F2Tensor& t, bool exclude_nu) {
  std::size_t n = 0;
  const int nu = t.nu();
  for (const auto& [p, q, r] : t.terms()) {
    if (exclude_nu && (p == nu || q == nu || r == nu)) continue;
    const int equal_pairs = (p == q) + (q == r) + (p == r);
    if (equal_pairs == 1) ++n;
  }
  return HalfInt::from_count(n);
}

HalfInt kappa(const HTensor& a, int nu) {
  require_in_KH(a);
  return count_half(to_f_basis(a, nu), false);
}

HalfInt kappa_prime(const HTensor& a, int nu) {
  require_in_KH(a);
  return count_half(f_to_branch_basis(to_f_basis(a, nu)), true);
}

F2Tensor relabel(const F2Tensor& t, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != t.dim()) throw DomainError("relabel: permutation size mismatch");
  if (perm[t.nu()] != t.nu()) throw DomainError("relabel: permutation must fix ν");
  F2Tensor out(t.genus(), t.basis(), t.nu());
  for (const auto& [p, q, r] : t.terms()) out.toggle({perm[p], perm[q], perm[r]});
  return out;
}

std::vector<RelationKillViolation> psi_relation_kill_violations(int genus) {
  check_genus(genus);
  std::vector<RelationKillViolation> out;
  const int d = 2 * genus + 2;
  for (int nu = 0; nu < d; ++nu)
    for (int slot = 0; slot < 3; ++slot)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          if (j == nu || k == nu) continue;
          int sum = 0;
          for (int p = 0; p < d; ++p) {
            if (p == nu) continue;
            switch (slot) {
              case 0: sum += psi(p, j, k, nu); break;
              case 1: sum += psi(j, p, k, nu); break;
              default: sum += psi(j, k, p, nu); break;
            }
          }
          if (sum % 2 != 0) out.push_back({nu, slot, j, k});
        }
  return out;
}

}  // namespace harmvol
