#include <doctest.h>

#include <random>
#include <set>

#include "harmvol/error.hpp"
#include "harmvol/homology.hpp"
#include "harmvol/sweep.hpp"

using namespace harmvol;

namespace {

using Triple = F2Tensor::Triple;

HTensor t3(int g, Gen a, Gen b, Gen c, long long coeff = 1) { return HTensor::monomial(g, {a, b, c}, coeff); }
HTensor t2(int g, Gen a, Gen b, long long coeff = 1) { return HTensor::monomial(g, {a, b}, coeff); }

std::set<Triple> term_set(const F2Tensor& t) {
  const auto v = t.terms();
  return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("intersection pairing") {
  const int g = 3;
  CHECK(intersection_pairing(HVector::basis(g, x(1)), HVector::basis(g, y(1))) == 1);
  CHECK(intersection_pairing(HVector::basis(g, x(1)), HVector::basis(g, x(2))) == 0);
  CHECK(intersection_pairing(HVector::basis(g, y(2)), HVector::basis(g, x(2))) == -1);
  for (Gen a : generators(g))
    for (Gen b : generators(g)) {
      const int expected = a.index != b.index || a.sym == b.sym ? 0 : (a.sym == Sym::x ? 1 : -1);
      CHECK(pairing(a, b) == expected);
    }
  CHECK_THROWS_AS(intersection_pairing(HVector(2), HVector(3)), DomainError);
}

TEST_CASE("K membership") {
  CHECK(is_in_K(t2(2, x(1), y(1)) - t2(2, x(2), y(2))));
  CHECK_FALSE(is_in_K(t2(2, x(1), y(1))));
  CHECK(is_in_K(t2(2, x(1), x(1))));
  CHECK_THROWS_AS(require_in_KH(t3(2, x(1), y(1), x(1))), NotInKError);
  try {
    require_in_KH(t3(2, x(1), y(1), x(1)));
  } catch (const NotInKError& e) {
    CHECK(e.contraction() == 1);
    CHECK(std::string(e.what()).find("pairing contraction = 1 ≠ 0") != std::string::npos);
  }
}

TEST_CASE("K basis enumeration") {
  const auto b2 = k_basis(2);
  CHECK(b2.size() == 15);
  CHECK(k_basis(3).size() == 35);
  for (const auto& e : b2) CHECK(is_in_K(e.tensor));
  CHECK(b2.front().label() == "x1⊗x2");
  CHECK(b2[1].label() == "x1⊗y2");
  // The enumeration rule restricted to indices ≤ 2 reproduces the genus-2 list.
  std::vector<std::string> prefix;
  for (const auto& e : k_basis(3))
    if (e.first.index <= 2 && e.second.index <= 2) prefix.push_back(e.label());
  std::vector<std::string> small;
  for (const auto& e : b2) small.push_back(e.label());
  CHECK(prefix == small);
}

TEST_CASE("K basis is a ℤ-basis") {
  for (int g = 2; g <= 4; ++g) {
    const KBasis basis(g);
    const auto d = smith_invariants(basis.integer_matrix());
    CHECK(d.size() == static_cast<std::size_t>(4 * g * g - 1));
    CHECK(std::all_of(d.begin(), d.end(), [](const mpz_class& v) { return v == 1; }));
  }
}

TEST_CASE("basis expansion") {
  const KBasis basis(2);
  const auto c1 = basis.expand(t3(2, x(1), x(2), y(1)));
  REQUIRE(c1.size() == 1);
  CHECK(basis.elements()[c1[0].element].label() == "x1⊗x2");
  CHECK(c1[0].third == y(1));
  CHECK(c1[0].coeff == 1);
  const auto c3 = basis.expand(t3(2, x(1), y(1), x(1)) + t3(2, y(1), x(1), x(1)));
  REQUIRE(c3.size() == 1);
  CHECK(basis.elements()[c3[0].element].kase == KCase::symmetric);
  CHECK(c3[0].coeff == 1);
  CHECK_THROWS_AS(basis.expand(t3(2, x(1), y(1), x(1))), NotInKError);
}

TEST_CASE("basis expansion round trip") {
  for (int g : {2, 3}) {
    const KBasis basis(g);
    for (const HTensor& a : random_kh_tensors(basis, 250, 11 + g)) CHECK(basis.reconstruct(basis.expand(a)) == a);
  }
}

TEST_CASE("f-basis reduction") {
  CHECK(term_set(to_f_basis(t3(2, x(1), x(2), y(1)), 3)) ==
        std::set<Triple>{{1, 4, 0}, {1, 4, 1}, {2, 4, 0}, {2, 4, 1}});
  CHECK(term_set(to_f_basis(t3(2, x(1), y(2), y(1)), 0)) ==
        std::set<Triple>{{1, 1, 1}, {1, 2, 1}, {1, 3, 1}, {2, 1, 1}, {2, 2, 1}, {2, 3, 1}});
  CHECK(to_f_basis(t3(2, x(1), x(2), y(1), 2), 3).empty());
  const HTensor a = t3(2, x(1), x(2), y(1)), b = t3(2, y(2), x(1), x(2));
  F2Tensor sum = to_f_basis(a, 1);
  sum ^= to_f_basis(b, 1);
  CHECK(to_f_basis(a + b, 1) == sum);
  F2Tensor f(2, F2Basis::f_basis, 3);
  CHECK_THROWS_AS(f.toggle({3, 0, 1}), DomainError);
}

TEST_CASE("branch basis substitution") {
  F2Tensor f(2, F2Basis::f_basis, 0);
  f.toggle({1, 2, 3});
  const F2Tensor e = f_to_branch_basis(f);
  CHECK(term_set(e) == std::set<Triple>{{1, 2, 3}, {1, 2, 0}, {1, 0, 3}, {1, 0, 0},
                                        {0, 2, 3}, {0, 2, 0}, {0, 0, 3}, {0, 0, 0}});
  CHECK(f_to_branch_basis(F2Tensor(2, F2Basis::f_basis, 0)).empty());
  // Substituting e'_i = f_i + e'_ν back (index 0 standing for e'_ν) recovers f.
  F2Tensor back(2, F2Basis::branch, 0);
  for (const auto& t : e.terms()) {
    for (int mask = 0; mask < 8; ++mask) {
      Triple u = t;
      bool valid = true;
      for (int s = 0; s < 3; ++s)
        if (mask >> s & 1) {
          if (u[s] == 0) valid = false;
          u[s] = 0;
        }
      if (valid) back.toggle(u);
    }
  }
  CHECK(term_set(back) == std::set<Triple>{{1, 2, 3}});
}

TEST_CASE("v map") {
  const int g = 2;
  CHECK(v_map(HVector::basis(g, x(1))) == std::vector<std::uint8_t>{0, 1, 1, 0, 0});
  CHECK(v_map(HVector::basis(g, y(1))) == std::vector<std::uint8_t>{1, 1, 0, 0, 0});
  for (int gg = 2; gg <= 6; ++gg) {
    std::vector<std::vector<std::uint8_t>> rows;
    for (Gen z : generators(gg)) {
      const auto v = v_map(HVector::basis(gg, z));
      CHECK(v.size() == static_cast<std::size_t>(2 * gg + 1));
      rows.push_back(v);
    }
    CHECK(rank_mod2(rows) == static_cast<std::size_t>(2 * gg));
  }
}

TEST_CASE("augmentation kills the image of v") {
  for (int g = 2; g <= 4; ++g)
    for (Gen z : generators(g)) {
      const auto f = f_expansion(z);
      CHECK(f.size() % 2 == 0);
    }
}
