#pragma once

#include <vector>

#include "harmvol/combinat.hpp"
#include "harmvol/cyclotomic.hpp"
#include "harmvol/homology.hpp"
#include "harmvol/linalg.hpp"
#include "harmvol/qmodz.hpp"

namespace harmvol {

/// The curve C₀ : w² = z^{2g+2} − 1 and its cyclotomic constants.
struct CurveParams {
  int genus;
  int order;    ///< N = 2g+2
  Rational mu;  ///< 1/N
  CycloNum zeta;

  explicit CurveParams(int genus);
};

/// t_u by the parity case table: g, −1, or (1+ζ^u)/(1−ζ^u).
CycloNum t_value(long long u, const CurveParams& p);
/// t_u = Σ_{p=1}^{g} ζ^{up}.
CycloNum t_power_sum(long long u, const CurveParams& p);

/// ∫_{a_j} ω'_i = ζ^{i(2j−1)}(1 − ζ^i).
CycloNum period_a(int i, int j, const CurveParams& p);
/// ∫_{b_j} ω'_i = (ζ^{2ij} − 1)/(ζ^i + 1).
CycloNum period_b(int i, int j, const CurveParams& p);
Matrix<CycloNum> period_matrix_a(const CurveParams& p);
Matrix<CycloNum> period_matrix_b(const CurveParams& p);

enum class Loop { a, b };

/// Closed form of ∫_{a_k} α_iβ_j or ∫_{b_k} α_iβ_j. Always real.
CycloNum iter_ab_closed(int i, int j, int k, Loop loop, const CurveParams& p);

enum class HarmonicForm { alpha, beta };

/// ∫_{ℓ_ν} α_i or ∫_{ℓ_ν} β_i, where ℓ_ν runs from Q₀ to P_ν. Always rational.
CycloNum ell_integral(HarmonicForm form, int i, int nu, const CurveParams& p);

/// Which reading of the basis-wise value tables to use. `uncorrected` reads the
/// fourth case-2 row with third factor y_1 only;
/// `completed` additionally carries the cells (x_i⊗y_i − x_1⊗y_1)⊗y_k,
/// 1 < k < i, whose value is 1/2 at every base point.
enum class TableVariant { completed, uncorrected };

enum class Engine { composed, table };

/// Exact engine for one genus: caches t_u, the ℓ_ν integrals and the K basis.
/// Immutable after construction and safe to share between threads.
class ExactCurve {
 public:
  explicit ExactCurve(int genus);

  int genus() const noexcept { return params_.genus; }
  int order() const noexcept { return params_.order; }
  const CurveParams& params() const noexcept { return params_; }
  const KBasis& basis() const noexcept { return basis_; }

  const CycloNum& t(long long u) const;
  /// ∫_{ℓ_ν} of the Poincaré dual of z (x_i ↦ α_i, y_i ↦ β_i).
  const Rational& ell(Gen z, int nu) const;

  /// I_ν − I_{Q₀} from the trilinear difference formula, extended linearly.
  QmodZ lambda_nu(const HTensor& a, int nu) const;
  QmodZ lambda_nu(std::size_t element, Gen third, int nu) const;

  /// I_{Q₀} on a canonical basis element of K⊗H.
  QmodZ i_q0_table(std::size_t element, Gen third, TableVariant variant = TableVariant::completed) const;
  /// I_ν on a canonical basis element from the closed-form case list.
  HalfInt value_table(std::size_t element, Gen third, int nu,
                        TableVariant variant = TableVariant::completed) const;

  QmodZ value_on_basis(std::size_t element, Gen third, int nu, Engine engine,
                       TableVariant variant = TableVariant::completed) const;
  /// I_ν(A) for A ∈ K⊗H by basis expansion. The result is checked to be 0 or 1/2.
  QmodZ harmonic_volume(const HTensor& a, int nu, Engine engine,
                        TableVariant variant = TableVariant::completed) const;
  /// I_ν(A) for ν = 0…2g+1 from a single basis expansion.
  std::vector<QmodZ> harmonic_volume_all(const HTensor& a, Engine engine,
                                         TableVariant variant = TableVariant::completed) const;

 private:
  QmodZ assemble(const std::vector<KHCoefficient>& coeffs, const HTensor& a, int nu, Engine engine,
                 TableVariant variant) const;
  void check_nu(int nu) const;
  CurveParams params_;
  KBasis basis_;
  std::vector<CycloNum> t_cache_;               // indexed by u mod N
  std::vector<std::vector<Rational>> ell_cache_;  // [ν][flat generator]
};

}  // namespace harmvol
