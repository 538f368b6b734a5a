#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "harmvol/analytic.hpp"
#include "harmvol/execution.hpp"
#include "harmvol/homology.hpp"
#include "harmvol/hp.hpp"

namespace harmvol {

// ---------------------------------------------------------------------------
// Paths on C₀
// ---------------------------------------------------------------------------

/// Q₀ = (0, √−1) and Q₁ = (0, −√−1).
enum class Endpoint { Q0, Q1 };

/// e_j, optionally composed with ι and/or reversed.
struct Letter {
  int j = 0;
  bool iota = false;
  bool inverse = false;

  Endpoint start() const;
  Endpoint end() const;
  Letter reversed() const { return {j, iota, !inverse}; }
  std::string str() const;
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Concatenation of letters with matching endpoints.
class PathWord {
 public:
  PathWord(int genus, std::vector<Letter> letters);

  /// a_k = e_{2k−1}·ι(e_{2k}).
  static PathWord a_loop(int k, int genus);
  /// b_k = e_{2k−1}·ι(e_{2k−2})·⋯·e_1·ι(e_0).
  static PathWord b_loop(int k, int genus);
  /// a_k for x_k, b_k for y_k.
  static PathWord loop_for(Gen z, int genus);

  int genus() const noexcept { return genus_; }
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  bool empty() const noexcept { return letters_.empty(); }
  PathWord inverse() const;
  PathWord then(const PathWord& o) const;
  std::string str() const;

 private:
  int genus_;
  std::vector<Letter> letters_;
};

// ---------------------------------------------------------------------------
// Forms
// ---------------------------------------------------------------------------

enum class FormKind { holomorphic, alpha, beta };

/// ω'_i, α_i or β_i.
struct FormSpec {
  FormKind kind = FormKind::holomorphic;
  int index = 1;

  /// Slot in the per-segment tables: ω'_1…ω'_g, α_1…α_g, β_1…β_g.
  int slot(int genus) const;
  std::string str() const;
  friend bool operator==(const FormSpec&, const FormSpec&) = default;
};

inline FormSpec omega(int i) { return {FormKind::holomorphic, i}; }
inline FormSpec alpha(int i) { return {FormKind::alpha, i}; }
inline FormSpec beta(int i) { return {FormKind::beta, i}; }
/// Poincaré dual: x_i ↦ α_i, y_i ↦ β_i.
inline FormSpec dual_form(Gen z) { return z.sym == Sym::x ? alpha(z.index) : beta(z.index); }

/// B(u, v) = Γ(u)Γ(v)/Γ(u+v) at the current working precision.
Real beta_function(const Real& u, const Real& v);

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

struct QuadratureOptions {
  unsigned precision_bits = kDefaultPrecisionBits;
  double tol_line = 1e-10;
  double tol_iterated = 1e-8;
  int nodes = 16;
  int min_level = 1;  ///< first panel count is 2^min_level
  int max_level = 9;
  /// Skip adaptation and use exactly 2^level panels; the error estimate is
  /// then the change from 2^(level−1) panels.
  std::optional<int> fixed_level;
};

/// Gauss–Legendre nodes and weights on [−1, 1] with the matrix
/// S(k, l) = ∫_{−1}^{x_k} L_l, where L_l is the Lagrange basis on the nodes.
struct GaussLegendreRule {
  int n;
  unsigned bits;
  std::vector<Real> nodes;
  std::vector<Real> weights;
  std::vector<Real> partial;  ///< row-major n×n
};

/// Cached per (n, bits); building it uses the current working precision.
std::shared_ptr<const GaussLegendreRule> gauss_legendre(int n, unsigned bits);

struct Estimate {
  ComplexHP value;
  double error = 0;
};

/// Line and depth-2 iterated integrals of all 3g forms over one path piece.
struct PieceTable {
  std::vector<ComplexHP> line;  ///< [slot]
  std::vector<ComplexHP> iter;  ///< [first slot · 3g + second slot]
  double line_error = 0;
  double iter_error = 0;
  int panels = 0;
};

/// Numeric value of I_{Q₀} from iterated integrals, reduced mod 1.
struct NumericIQ0 {
  double value = 0;      ///< in [0, 1)
  double error = 0;      ///< propagated quadrature estimate
  Rational nearest;      ///< closest k/N in [0, 1)
  double distance = 0;   ///< |value − nearest| on ℝ/ℤ
};

/// Numeric oracle on C₀. The constructor integrates every piece (e_j out to
/// P_j and back, j = 0…2g+1) once; queries assemble the stored tables.
/// Queries may run concurrently; the constructor must not overlap with
/// other code changing the working precision.
class NumericCurve {
 public:
  NumericCurve(int genus, QuadratureOptions options = {}, Execution exec = Execution::parallel);

  int genus() const noexcept { return genus_; }
  int order() const noexcept { return 2 * genus_ + 2; }
  const QuadratureOptions& options() const noexcept { return options_; }

  /// Tables of e_j's outward piece (Q₀ → P_j) and inward piece (P_j → Q₁).
  const PieceTable& outward(int j) const { return pieces_.at(2 * j); }
  const PieceTable& inward(int j) const { return pieces_.at(2 * j + 1); }
  const PieceTable& segment(int j) const { return segments_.at(j); }

  Estimate segment_line_integral(const Letter& letter, FormSpec f) const;
  Estimate segment_iterated_integral(const Letter& letter, FormSpec f, FormSpec h) const;
  Estimate word_line_integral(const PathWord& w, FormSpec f) const;
  Estimate word_iterated_integral(const PathWord& w, FormSpec f, FormSpec h) const;
  /// ∫ over ℓ_ν : t ↦ (tζ^ν, √−1·√(1 − t^{2g+2})), i.e. e_ν's outward piece.
  Estimate ell_line_integral(FormSpec f, int nu) const;

  /// Σ c·Re ∫_{loop(c)} dual(a)·dual(b) over the terms a⊗b⊗c of A.
  NumericIQ0 numeric_I_Q0(const HTensor& a) const;

 private:
  int genus_;
  QuadratureOptions options_;
  std::vector<PieceTable> pieces_;
  std::vector<PieceTable> segments_;
};

/// Integrates one piece: `inward` selects P_j → Q₁. Exposed for benchmarks
/// and the serial/parallel comparison.
PieceTable integrate_piece(int genus, int j, bool inward, const QuadratureOptions& options);
/// All 2(2g+2) pieces in order (outward e_0, inward e_0, outward e_1, …).
std::vector<PieceTable> integrate_all_pieces(int genus, const QuadratureOptions& options, Execution exec);

}  // namespace harmvol
