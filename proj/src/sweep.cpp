#include "harmvol/sweep.hpp"

#include <random>

namespace harmvol {

std::vector<BasisRow> basis_sweep(const ExactCurve& curve, int nu, Execution exec, TableVariant variant) {
  const auto gens = generators(curve.genus());
  const std::size_t per = gens.size();
  std::vector<BasisRow> rows(curve.basis().size() * per);
  for_each_index(rows.size(), exec, [&](std::size_t r) {
    const std::size_t el = r / per;
    const Gen third = gens[r % per];
    rows[r] = {el,
               third,
               nu,
               curve.value_on_basis(el, third, nu, Engine::composed, variant),
               curve.value_on_basis(el, third, nu, Engine::table, variant),
               kappa(curve.basis().element_tensor(el, third), nu)};
  });
  return rows;
}

std::vector<HTensor> random_kh_tensors(const KBasis& basis, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto gens = generators(basis.genus());
  std::uniform_int_distribution<std::size_t> pick_element(0, basis.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_third(0, gens.size() - 1);
  std::uniform_int_distribution<int> pick_terms(1, 6);
  std::uniform_int_distribution<long long> pick_coeff(-3, 3);
  std::vector<HTensor> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    std::vector<KHCoefficient> coeffs;
    const int terms = pick_terms(rng);
    for (int t = 0; t < terms; ++t) {
      const std::size_t el = pick_element(rng);
      const Gen third = gens[pick_third(rng)];
      coeffs.push_back({el, third, pick_coeff(rng)});
    }
    out.push_back(basis.reconstruct(coeffs));
  }
  return out;
}

std::vector<TensorRow> tensor_sweep(const ExactCurve& curve, const std::vector<HTensor>& tensors, Execution exec,
                                    bool with_kappa_prime) {
  std::vector<TensorRow> rows(tensors.size());
  for_each_index(tensors.size(), exec, [&](std::size_t r) {
    TensorRow& row = rows[r];
    try {
      row.composed = curve.harmonic_volume_all(tensors[r], Engine::composed);
      row.table = curve.harmonic_volume_all(tensors[r], Engine::table);
      for (int nu = 0; nu < curve.order(); ++nu) {
        row.kappa.push_back(kappa(tensors[r], nu));
        if (with_kappa_prime) row.kappa_prime.push_back(kappa_prime(tensors[r], nu));
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });
  return rows;
}

}  // namespace harmvol
