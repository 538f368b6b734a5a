#include "harmvol/homology.hpp"

#include <sstream>

#include "harmvol/error.hpp"

namespace harmvol {

void check_genus(int genus) {
  if (genus < 2) throw DomainError("genus must be at least 2, got " + std::to_string(genus));
}

int flat_index(Gen z, int genus) {
  if (z.index < 1 || z.index > genus)
    throw DomainError("generator " + z.str() + " out of range for genus " + std::to_string(genus));
  return (z.sym == Sym::x ? 0 : genus) + z.index - 1;
}

Gen gen_from_flat(int flat, int genus) {
  if (flat < 0 || flat >= 2 * genus) throw DomainError("flat generator index out of range");
  return flat < genus ? x(flat + 1) : y(flat - genus + 1);
}

std::vector<Gen> generators(int genus) {
  std::vector<Gen> out;
  for (int i = 1; i <= genus; ++i) out.push_back(x(i));
  for (int i = 1; i <= genus; ++i) out.push_back(y(i));
  return out;
}

HVector::HVector(int genus) : genus_(genus), coords_(2 * genus, 0) { check_genus(genus); }

HVector::HVector(int genus, std::vector<long long> coords) : genus_(genus), coords_(std::move(coords)) {
  check_genus(genus);
  if (coords_.size() != static_cast<std::size_t>(2 * genus)) throw DomainError("HVector: expected 2g coordinates");
}

HVector HVector::basis(int genus, Gen z) {
  HVector v(genus);
  v.coords_[flat_index(z, genus)] = 1;
  return v;
}

bool HVector::is_zero() const {
  for (long long c : coords_)
    if (c != 0) return false;
  return true;
}

HVector& HVector::operator+=(const HVector& o) {
  if (o.genus_ != genus_) throw DomainError("HVector: genus mismatch");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

long long intersection_pairing(const HVector& u, const HVector& v) {
  if (u.genus() != v.genus()) throw DomainError("intersection_pairing: genus mismatch");
  const int g = u.genus();
  long long s = 0;
  for (int i = 0; i < g; ++i) s += u.coords()[i] * v.coords()[g + i] - u.coords()[g + i] * v.coords()[i];
  return s;
}

int pairing(Gen a, Gen b) {
  if (a.index != b.index || a.sym == b.sym) return 0;
  return a.sym == Sym::x ? 1 : -1;
}

// --- HTensor ----------------------------------------------------------------

HTensor::HTensor(int genus, int degree) : genus_(genus), degree_(degree) {
  check_genus(genus);
  if (degree < 1 || degree > 3) throw DomainError("HTensor degree must be 1, 2 or 3");
}

HTensor HTensor::monomial(int genus, const Key& factors, long long coeff) {
  HTensor t(genus, static_cast<int>(factors.size()));
  t.add(factors, coeff);
  return t;
}

long long HTensor::coeff(const Key& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? 0 : it->second;
}

void HTensor::add(const Key& factors, long long c) {
  if (static_cast<int>(factors.size()) != degree_)
    throw DomainError("HTensor: term of degree " + std::to_string(factors.size()) + " added to degree " +
                      std::to_string(degree_) + " tensor");
  for (const Gen& z : factors) flat_index(z, genus_);
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(factors, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void HTensor::check_compatible(const HTensor& o) const {
  if (o.genus_ != genus_ || o.degree_ != degree_) throw DomainError("HTensor: genus or degree mismatch");
}

HTensor& HTensor::operator+=(const HTensor& o) {
  check_compatible(o);
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

HTensor& HTensor::operator-=(const HTensor& o) {
  check_compatible(o);
  for (const auto& [k, c] : o.terms_) add(k, -c);
  return *this;
}

HTensor& HTensor::operator*=(long long s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= s;
  return *this;
}

HTensor HTensor::tensor(Gen z) const {
  if (degree_ == 3) throw DomainError("HTensor: degree would exceed 3");
  HTensor out(genus_, degree_ + 1);
  for (const auto& [k, c] : terms_) {
    Key key = k;
    key.push_back(z);
    out.add(key, c);
  }
  return out;
}

HTensor HTensor::swap_first_two() const {
  if (degree_ < 2) throw DomainError("swap_first_two needs degree ≥ 2");
  HTensor out(genus_, degree_);
  for (const auto& [k, c] : terms_) {
    Key key = k;
    std::swap(key[0], key[1]);
    out.add(key, c);
  }
  return out;
}

std::string HTensor::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    long long mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1) os << mag << " ";
    for (std::size_t i = 0; i < k.size(); ++i) os << (i ? "⊗" : "") << k[i].str();
  }
  return os.str();
}

// --- K ----------------------------------------------------------------------

bool is_in_K(const HTensor& t) {
  if (t.degree() != 2) throw DomainError("is_in_K expects a degree-2 tensor");
  long long s = 0;
  for (const auto& [k, c] : t.terms()) s += c * pairing(k[0], k[1]);
  return s == 0;
}

HVector kh_contraction(const HTensor& a) {
  if (a.degree() != 3) throw DomainError("kh_contraction expects a degree-3 tensor");
  std::vector<long long> coords(2 * a.genus(), 0);
  for (const auto& [k, c] : a.terms()) coords[flat_index(k[2], a.genus())] += c * pairing(k[0], k[1]);
  return {a.genus(), std::move(coords)};
}

void require_in_KH(const HTensor& a) {
  const HVector v = kh_contraction(a);
  for (std::size_t i = 0; i < v.coords().size(); ++i)
    if (v.coords()[i] != 0) throw NotInKError(v.coords()[i], gen_from_flat(static_cast<int>(i), a.genus()).str());
}

std::string KBasisElement::label() const {
  switch (kase) {
    case KCase::mixed:
    case KCase::square:
      return first.str() + "⊗" + second.str();
    case KCase::diagonal_difference:
      return "(" + first.str() + "⊗" + second.str() + "-x1⊗y1)";
    case KCase::symmetric:
      return "(" + first.str() + "⊗" + second.str() + "+" + second.str() + "⊗" + first.str() + ")";
  }
  return {};
}

std::vector<KBasisElement> k_basis(int genus) {
  check_genus(genus);
  std::vector<KBasisElement> out;
  const auto push = [&](KCase kase, Gen a, Gen b, HTensor t) {
    if (!is_in_K(t)) throw std::logic_error("k_basis: generated element outside K");
    out.push_back({kase, a, b, std::move(t)});
  };
  const std::array<std::pair<Sym, Sym>, 4> types{{{Sym::x, Sym::x}, {Sym::x, Sym::y}, {Sym::y, Sym::x}, {Sym::y, Sym::y}}};
  for (int i = 1; i <= genus; ++i)
    for (int j = 1; j <= genus; ++j) {
      if (i == j) continue;
      for (auto [si, sj] : types) {
        const Gen a{si, i}, b{sj, j};
        push(KCase::mixed, a, b, HTensor::monomial(genus, {a, b}));
      }
    }
  for (int i = 2; i <= genus; ++i) {
    HTensor t = HTensor::monomial(genus, {x(i), y(i)}) - HTensor::monomial(genus, {x(1), y(1)});
    push(KCase::diagonal_difference, x(i), y(i), std::move(t));
  }
  for (int i = 1; i <= genus; ++i) {
    HTensor t = HTensor::monomial(genus, {x(i), y(i)}) + HTensor::monomial(genus, {y(i), x(i)});
    push(KCase::symmetric, x(i), y(i), std::move(t));
  }
  for (int i = 1; i <= genus; ++i) {
    push(KCase::square, x(i), x(i), HTensor::monomial(genus, {x(i), x(i)}));
    push(KCase::square, y(i), y(i), HTensor::monomial(genus, {y(i), y(i)}));
  }
  return out;
}

namespace {

Matrix<Rational> rational_basis_matrix(const std::vector<KBasisElement>& elems, int genus) {
  const std::size_t dim = 4 * static_cast<std::size_t>(genus) * genus;
  Matrix<Rational> m(dim, elems.size(), Rational(0));
  for (std::size_t col = 0; col < elems.size(); ++col)
    for (const auto& [k, c] : elems[col].tensor.terms())
      m(flat_index(k[0], genus) * 2 * genus + flat_index(k[1], genus), col) = Rational(c);
  return m;
}

}  // namespace

KBasis::KBasis(int genus)
    : genus_(genus),
      elements_(k_basis(genus)),
      solver_(rational_basis_matrix(elements_, genus), Rational(0), Rational(1)) {}

std::vector<KHCoefficient> KBasis::expand(const HTensor& a) const {
  if (a.genus() != genus_) throw DomainError("expand: genus mismatch");
  require_in_KH(a);
  const int dim2 = 2 * genus_;
  // One degree-2 slice per third factor.
  std::map<Gen, std::vector<Rational>> slices;
  for (const auto& [k, c] : a.terms()) {
    auto& v = slices.try_emplace(k[2], std::vector<Rational>(dim2 * dim2, Rational(0))).first->second;
    v[flat_index(k[0], genus_) * dim2 + flat_index(k[1], genus_)] += Rational(c);
  }
  std::vector<KHCoefficient> out;
  for (const auto& [third, v] : slices) {
    auto sol = solver_.solve(v);
    if (!sol) throw std::logic_error("expand: K-slice outside the span of the K basis");
    for (std::size_t e = 0; e < sol->size(); ++e) {
      const Rational& c = (*sol)[e];
      if (c.is_zero()) continue;
      if (!c.is_integer()) throw NonIntegralError();
      out.push_back({e, third, to_int64(c.num())});
    }
  }
  return out;
}

HTensor KBasis::element_tensor(std::size_t element, Gen third) const {
  return elements_.at(element).tensor.tensor(third);
}

HTensor KBasis::reconstruct(const std::vector<KHCoefficient>& coeffs) const {
  HTensor out(genus_, 3);
  for (const auto& c : coeffs) out += c.coeff * element_tensor(c.element, c.third);
  return out;
}

Matrix<mpz_class> KBasis::integer_matrix() const {
  const auto q = rational_basis_matrix(elements_, genus_);
  Matrix<mpz_class> m(q.rows(), q.cols(), mpz_class(0));
  for (std::size_t r = 0; r < q.rows(); ++r)
    for (std::size_t c = 0; c < q.cols(); ++c) m(r, c) = q(r, c).num();
  return m;
}

// --- ℤ/2 --------------------------------------------------------------------

F2Tensor::F2Tensor(int genus, F2Basis basis, int nu) : genus_(genus), basis_(basis), nu_(nu) {
  check_genus(genus);
  if (nu < 0 || nu > 2 * genus + 1) throw DomainError("base index ν out of range: " + std::to_string(nu));
  const std::size_t d = dim();
  bits_.assign(d * d * d, 0);
}

std::size_t F2Tensor::offset(const Triple& t) const {
  const int d = dim();
  for (int i : t)
    if (i < 0 || i >= d) throw DomainError("F2Tensor index out of range");
  return (static_cast<std::size_t>(t[0]) * d + t[1]) * d + t[2];
}

void F2Tensor::toggle(const Triple& t) {
  if (basis_ == F2Basis::f_basis && (t[0] == nu_ || t[1] == nu_ || t[2] == nu_))
    throw DomainError("f-basis tensor cannot carry index ν (f_ν = 0)");
  bits_[offset(t)] ^= 1u;
}

bool F2Tensor::contains(const Triple& t) const { return bits_[offset(t)] != 0; }

std::size_t F2Tensor::size() const {
  std::size_t n = 0;
  for (auto b : bits_) n += b;
  return n;
}

std::vector<F2Tensor::Triple> F2Tensor::terms() const {
  std::vector<Triple> out;
  const int d = dim();
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q)
      for (int r = 0; r < d; ++r)
        if (bits_[(static_cast<std::size_t>(p) * d + q) * d + r]) out.push_back({p, q, r});
  return out;
}

F2Tensor& F2Tensor::operator^=(const F2Tensor& o) {
  if (o.genus_ != genus_ || o.basis_ != basis_ || o.nu_ != nu_) throw DomainError("F2Tensor: incompatible operands");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] ^= o.bits_[i];
  return *this;
}

std::vector<int> f_expansion(Gen z) {
  std::vector<int> out;
  if (z.sym == Sym::x) {
    out = {2 * z.index - 1, 2 * z.index};
  } else {
    for (int p = 0; p < 2 * z.index; ++p) out.push_back(p);
  }
  return out;
}

F2Tensor to_f_basis(const HTensor& a, int nu) {
  if (a.degree() != 3) throw DomainError("to_f_basis expects a degree-3 tensor");
  F2Tensor out(a.genus(), F2Basis::f_basis, nu);
  for (const auto& [k, c] : a.terms()) {
    if (c % 2 == 0) continue;
    const auto e0 = f_expansion(k[0]);
    const auto e1 = f_expansion(k[1]);
    const auto e2 = f_expansion(k[2]);
    for (int p : e0) {
      if (p == nu) continue;
      for (int q : e1) {
        if (q == nu) continue;
        for (int r : e2)
          if (r != nu) out.toggle({p, q, r});
      }
    }
  }
  return out;
}

F2Tensor f_to_branch_basis(const F2Tensor& t) {
  if (t.basis() != F2Basis::f_basis) throw DomainError("f_to_branch_basis expects an f-basis tensor");
  const int nu = t.nu();
  F2Tensor out(t.genus(), F2Basis::branch, nu);
  for (const auto& [p, q, r] : t.terms())
    for (int a : {p, nu})
      for (int b : {q, nu})
        for (int c : {r, nu}) out.toggle({a, b, c});
  return out;
}

std::vector<std::uint8_t> reduce_branch_vector(std::vector<std::uint8_t> redundant) {
  if (redundant.size() < 2) throw DomainError("reduce_branch_vector: too few generators");
  const std::uint8_t last = redundant.back() & 1u;
  redundant.pop_back();
  for (auto& b : redundant) b = (b ^ last) & 1u;
  return redundant;
}

std::vector<std::uint8_t> v_map(const HVector& h) {
  const int g = h.genus();
  std::vector<std::uint8_t> redundant(2 * g + 2, 0);
  for (int i = 1; i <= g; ++i) {
    if (h[x(i)] & 1) {
      redundant[2 * i - 1] ^= 1u;
      redundant[2 * i] ^= 1u;
    }
    if (h[y(i)] & 1)
      for (int p = 0; p < 2 * i; ++p) redundant[p] ^= 1u;
  }
  return reduce_branch_vector(std::move(redundant));
}

}  // namespace harmvol
