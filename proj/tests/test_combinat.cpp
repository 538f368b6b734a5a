#include <doctest.h>

#include <random>

#include "harmvol/combinat.hpp"
#include "harmvol/error.hpp"
#include "harmvol/sweep.hpp"

using namespace harmvol;

namespace {

HTensor t3(int g, Gen a, Gen b, Gen c) { return HTensor::monomial(g, {a, b, c}); }
const HalfInt half(true);
const HalfInt zero(false);

}  // namespace

TEST_CASE("half-integers") {
  CHECK(half + half == zero);
  CHECK(HalfInt::from_count(5) == half);
  CHECK(half.to_qmodz() == QmodZ(Rational(1, 2)));
  CHECK(half.str() == "1/2");
}

TEST_CASE("psi") {
  CHECK(psi(1, 4, 1, 3) == 1);
  CHECK(psi(1, 1, 1, 0) == 0);
  CHECK(psi(1, 2, 3, 0) == 0);
  CHECK_THROWS_AS(psi(0, 1, 1, 0), DomainError);
}

TEST_CASE("kappa on worked examples") {
  CHECK(kappa(t3(2, x(1), x(2), y(1)), 3) == half);
  CHECK(kappa(t3(2, x(2), x(1), y(2)), 5) == zero);
  CHECK(kappa(t3(2, x(1), y(2), y(1)), 0) == zero);
  CHECK_THROWS_AS(kappa(t3(2, x(1), y(1), x(1)), 0), NotInKError);
}

TEST_CASE("kappa prime on worked examples") {
  CHECK(kappa_prime(t3(2, x(1), x(2), y(1)), 3) == half);
  CHECK(kappa_prime(HTensor(2, 3), 0) == zero);
  CHECK(kappa_prime(t3(2, x(1), y(2), y(1)), 0) == zero);
}

TEST_CASE("psi kills the relation") {
  for (int g = 2; g <= 4; ++g) CHECK(psi_relation_kill_violations(g).empty());
}

TEST_CASE("kappa equals kappa prime and is linear") {
  for (int g = 2; g <= 4; ++g) {
    const KBasis basis(g);
    const auto a = random_kh_tensors(basis, 200, 100 + g);
    const auto b = random_kh_tensors(basis, 200, 200 + g);
    for (std::size_t n = 0; n < a.size(); ++n)
      for (int nu = 0; nu < 2 * g + 2; ++nu) {
        CHECK(kappa(a[n], nu) == kappa_prime(a[n], nu));
        CHECK(kappa(a[n] + b[n], nu) == kappa(a[n], nu) + kappa(b[n], nu));
      }
  }
}

TEST_CASE("kappa is invariant under relabeling") {
  std::mt19937_64 rng(3);
  const int g = 3;
  const KBasis basis(g);
  for (const HTensor& a : random_kh_tensors(basis, 100, 5)) {
    const int nu = static_cast<int>(rng() % (2 * g + 2));
    std::vector<int> perm(2 * g + 2);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> rest;
    for (int i = 0; i < 2 * g + 2; ++i)
      if (i != nu) rest.push_back(i);
    std::vector<int> img = rest;
    std::shuffle(img.begin(), img.end(), rng);
    for (std::size_t i = 0; i < rest.size(); ++i) perm[rest[i]] = img[i];
    const F2Tensor t = to_f_basis(a, nu);
    CHECK(count_half(relabel(t, perm), false) == count_half(t, false));
  }
  std::vector<int> moves_nu{1, 0, 2, 3, 4, 5};
  CHECK_THROWS_AS(relabel(F2Tensor(2, F2Basis::f_basis, 0), moves_nu), DomainError);
}
