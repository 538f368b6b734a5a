#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "harmvol/linalg.hpp"
#include "harmvol/rational.hpp"

namespace harmvol {

// ---------------------------------------------------------------------------
// Symplectic basis of H = H_1(C; ℤ)
// ---------------------------------------------------------------------------

enum class Sym : std::uint8_t { x, y };

/// One symplectic generator x_i or y_i, i ∈ 1…g.
struct Gen {
  Sym sym = Sym::x;
  int index = 1;

  friend auto operator<=>(const Gen&, const Gen&) = default;
  std::string str() const { return (sym == Sym::x ? "x" : "y") + std::to_string(index); }
};

inline Gen x(int i) { return {Sym::x, i}; }
inline Gen y(int i) { return {Sym::y, i}; }

/// Position in the coordinate order (x_1…x_g, y_1…y_g).
int flat_index(Gen z, int genus);
Gen gen_from_flat(int flat, int genus);
/// x_1…x_g, y_1…y_g.
std::vector<Gen> generators(int genus);
void check_genus(int genus);

class HVector {
 public:
  explicit HVector(int genus);
  HVector(int genus, std::vector<long long> coords);
  static HVector basis(int genus, Gen z);

  int genus() const noexcept { return genus_; }
  const std::vector<long long>& coords() const noexcept { return coords_; }
  long long operator[](Gen z) const { return coords_[flat_index(z, genus_)]; }
  bool is_zero() const;

  HVector& operator+=(const HVector& o);
  friend HVector operator+(HVector a, const HVector& b) { return a += b; }
  friend bool operator==(const HVector&, const HVector&) = default;

 private:
  int genus_;
  std::vector<long long> coords_;
};

/// Σ_i (u_{x_i} v_{y_i} − u_{y_i} v_{x_i}), so (x_i, y_j) = δ_ij.
long long intersection_pairing(const HVector& u, const HVector& v);
/// Pairing of two basis symbols.
int pairing(Gen a, Gen b);

/// Sparse integer tensor of degree 1…3 over the symplectic basis.
class HTensor {
 public:
  using Key = std::vector<Gen>;

  HTensor(int genus, int degree);
  static HTensor monomial(int genus, const Key& factors, long long coeff = 1);

  int genus() const noexcept { return genus_; }
  int degree() const noexcept { return degree_; }
  const std::map<Key, long long>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  long long coeff(const Key& k) const;

  void add(const Key& factors, long long c);

  HTensor& operator+=(const HTensor& o);
  HTensor& operator-=(const HTensor& o);
  HTensor& operator*=(long long s);
  friend HTensor operator+(HTensor a, const HTensor& b) { return a += b; }
  friend HTensor operator-(HTensor a, const HTensor& b) { return a -= b; }
  friend HTensor operator*(long long s, HTensor a) { return a *= s; }
  friend bool operator==(const HTensor&, const HTensor&) = default;

  /// this ⊗ z.
  HTensor tensor(Gen z) const;
  /// Exchanges the first two slots of every term.
  HTensor swap_first_two() const;
  std::string str() const;

 private:
  void check_compatible(const HTensor& o) const;
  int genus_;
  int degree_;
  std::map<Key, long long> terms_;
};

// ---------------------------------------------------------------------------
// K = ker(H⊗H → ℤ) and its canonical basis
// ---------------------------------------------------------------------------

bool is_in_K(const HTensor& t);
/// Contraction of the first two slots against the pairing, as a vector in
/// the third slot. Zero iff the degree-3 tensor lies in K⊗H.
HVector kh_contraction(const HTensor& a);
/// Throws NotInKError naming the first nonzero contraction coefficient.
void require_in_KH(const HTensor& a);

enum class KCase : int {
  mixed = 1,                ///< z_i⊗z'_j, i ≠ j
  diagonal_difference = 2,  ///< x_i⊗y_i − x_1⊗y_1, i ≠ 1
  symmetric = 3,            ///< x_i⊗y_i + y_i⊗x_i
  square = 4,               ///< z_i⊗z_i
};

struct KBasisElement {
  KCase kase;
  Gen first;   ///< z_i (mixed, square) or x_i (cases 2, 3)
  Gen second;  ///< z'_j (mixed, square) or y_i (cases 2, 3)
  HTensor tensor;

  int index() const { return first.index; }
  std::string label() const;
};

/// The 4g²−1 canonical generators of K in a fixed order: case 1 (i, j, then
/// types xx, xy, yx, yy), case 2 (i = 2…g), case 3 (i = 1…g), case 4
/// (x_i⊗x_i, y_i⊗y_i for i = 1…g).
std::vector<KBasisElement> k_basis(int genus);

/// Coefficient of the basis element (elements()[element]) ⊗ third.
struct KHCoefficient {
  std::size_t element;
  Gen third;
  long long coeff;
  friend bool operator==(const KHCoefficient&, const KHCoefficient&) = default;
};

/// K basis together with an exact solver for coordinates in it.
class KBasis {
 public:
  explicit KBasis(int genus);

  int genus() const noexcept { return genus_; }
  const std::vector<KBasisElement>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }

  /// Integer coefficients of A ∈ K⊗H, ordered by (third factor, element).
  /// Throws NotInKError or NonIntegralError.
  std::vector<KHCoefficient> expand(const HTensor& a) const;
  HTensor element_tensor(std::size_t element, Gen third) const;
  HTensor reconstruct(const std::vector<KHCoefficient>& coeffs) const;
  /// Columns are the basis elements in H⊗H coordinates (4g² × (4g²−1)).
  Matrix<mpz_class> integer_matrix() const;

 private:
  int genus_;
  std::vector<KBasisElement> elements_;
  LeftSolver<Rational> solver_;
};

inline std::vector<KHCoefficient> expand_in_k_basis(const KBasis& basis, const HTensor& a) {
  return basis.expand(a);
}

// ---------------------------------------------------------------------------
// ℤ/2 homology: f-basis and branch basis
// ---------------------------------------------------------------------------

enum class F2Basis : std::uint8_t { f_basis, branch };

/// Degree-3 tensor over ℤ/2 indexed by 0…2g+1 in each slot.
class F2Tensor {
 public:
  using Triple = std::array<int, 3>;

  F2Tensor(int genus, F2Basis basis, int nu);

  int genus() const noexcept { return genus_; }
  int nu() const noexcept { return nu_; }
  F2Basis basis() const noexcept { return basis_; }
  int dim() const noexcept { return 2 * genus_ + 2; }

  void toggle(const Triple& t);
  bool contains(const Triple& t) const;
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  /// Terms in lexicographic order.
  std::vector<Triple> terms() const;

  F2Tensor& operator^=(const F2Tensor& o);
  friend bool operator==(const F2Tensor&, const F2Tensor&) = default;

 private:
  std::size_t offset(const Triple& t) const;
  int genus_;
  F2Basis basis_;
  int nu_;
  std::vector<std::uint8_t> bits_;
};

/// f-indices of x_i = f_{2i−1} + f_{2i} and y_i = f_0 + … + f_{2i−1}.
std::vector<int> f_expansion(Gen z);
/// Mod-2 reduction of A in the f-basis with f_ν = 0.
F2Tensor to_f_basis(const HTensor& a, int nu);
/// Substitutes f_i = e'_ν + e'_i slotwise.
F2Tensor f_to_branch_basis(const F2Tensor& t);

/// v(h mod 2) in the basis π(e'_0)…π(e'_{2g}).
std::vector<std::uint8_t> v_map(const HVector& h);
/// Rewrites a vector over the 2g+2 redundant generators using
/// π(e'_{2g+1}) = Σ_{i ≤ 2g} π(e'_i).
std::vector<std::uint8_t> reduce_branch_vector(std::vector<std::uint8_t> redundant);

}  // namespace harmvol
