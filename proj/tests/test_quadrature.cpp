#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "harmvol/error.hpp"
#include "harmvol/quadrature.hpp"

using namespace harmvol;

namespace {

double dist(const ComplexHP& a, const ComplexHP& b) { return distance(a, b); }
ComplexHP cplx(double re, double im = 0) { return {Real(re), Real(im), current_precision_bits()}; }

const NumericCurve& curve2() {
  static const NumericCurve c(2);
  return c;
}

HTensor t3(int g, Gen a, Gen b, Gen c) { return HTensor::monomial(g, {a, b, c}); }

double circle(double a, double b) {
  const double d = std::fmod(std::abs(a - b), 1.0);
  return std::min(d, 1 - d);
}

}  // namespace

TEST_CASE("beta function") {
  PrecisionScope scope(128);
  CHECK(std::abs((beta_function(Real(0.5), Real(0.5)) - pi_hp()).convert_to<double>()) < 1e-30);
  CHECK(beta_function(Real(1), Real(1)) == 1);
  CHECK_THROWS_AS(beta_function(Real(0), Real(1)), DomainError);

  // Direct quadrature of ∫₀¹ x^{-5/6}(1−x)^{-1/2} dx after x = s⁶, which leaves
  // 6/√(1 − s⁶) with a square-root singularity at s = 1 for tanh-sinh.
  boost::math::quadrature::tanh_sinh<double> ts;
  const double direct = ts.integrate(
      [](double s, double sc) {
        const double one_minus = sc > 0 ? sc : 1 - s;
        const double tail = 1 + s + s * s + s * s * s + s * s * s * s + s * s * s * s * s;
        return 6 / std::sqrt(one_minus * tail);
      },
      0.0, 1.0);
  const double via_gamma = beta_function(Real(1) / 6, Real(1) / 2).convert_to<double>();
  CHECK(std::abs(direct - via_gamma) < 1e-12 * via_gamma);
}

TEST_CASE("Gauss-Legendre rule") {
  PrecisionScope scope(128);
  const auto rule = gauss_legendre(8, 128);
  Real sum = 0, moment = 0;
  for (int k = 0; k < 8; ++k) {
    sum += rule->weights[k];
    moment += rule->weights[k] * pow(rule->nodes[k], 14);
  }
  CHECK(std::abs((sum - 2).convert_to<double>()) < 1e-35);
  CHECK(std::abs((moment - Real(2) / 15).convert_to<double>()) < 1e-35);
  for (int k = 0; k < 8; ++k) {
    Real row = 0;
    for (int l = 0; l < 8; ++l) row += rule->partial[k * 8 + l];
    CHECK(std::abs((row - (1 + rule->nodes[k])).convert_to<double>()) < 1e-35);
  }
}

TEST_CASE("path words") {
  const PathWord a1 = PathWord::a_loop(1, 2);
  CHECK(a1.str() == "e1·ι(e2)");
  CHECK(PathWord::b_loop(2, 2).str() == "e3·ι(e2)·e1·ι(e0)");
  CHECK(a1.inverse().str() == "ι(e2)⁻¹·e1⁻¹");
  CHECK_THROWS_AS(PathWord(2, {{1, false, false}, {2, false, false}}), DomainError);
  CHECK_THROWS_AS(PathWord(2, {{6, false, false}}), DomainError);
  CHECK_NOTHROW(PathWord(2, {{1, false, false}, {1, false, true}}));
}

TEST_CASE("segment line integrals") {
  const NumericCurve& c = curve2();
  PrecisionScope scope(128);
  CHECK(dist(c.word_line_integral(PathWord::a_loop(1, 2), omega(1)).value, cplx(1)) < 1e-8);
  for (int j = 0; j < 6; ++j) {
    const Letter e{j, false, false}, ie{j, true, false};
    for (int i = 1; i <= 2; ++i) {
      CHECK(dist(c.segment_line_integral(ie, omega(i)).value, -c.segment_line_integral(e, omega(i)).value) < 1e-10);
      CHECK(std::abs(c.segment_line_integral(e, alpha(i)).value.im.convert_to<double>()) < 1e-10);
    }
  }
}

TEST_CASE("word line integrals") {
  const NumericCurve& c = curve2();
  PrecisionScope scope(128);
  for (int j = 0; j < 6; ++j) {
    const PathWord w(2, {{j, false, false}, {j, false, true}});
    CHECK(c.word_line_integral(w, omega(1)).value.abs() < 1e-12);
  }
  for (int g : {2, 3}) {
    const NumericCurve nc(g);
    for (int i = 1; i <= g; ++i)
      for (int j = 1; j <= g; ++j) {
        const double delta = i == j ? 1 : 0;
        CHECK(dist(nc.word_line_integral(PathWord::b_loop(j, g), alpha(i)).value, cplx(delta)) < 1e-8);
        CHECK(dist(nc.word_line_integral(PathWord::a_loop(j, g), beta(i)).value, cplx(-delta)) < 1e-8);
      }
  }
}

TEST_CASE("word iterated integrals") {
  const NumericCurve& c = curve2();
  PrecisionScope scope(128);
  for (int j = 0; j < 6; ++j) {
    const Letter e{j, false, false};
    const ComplexHP s = c.segment_iterated_integral(e, alpha(1), beta(2)).value +
                        c.segment_iterated_integral(e, beta(2), alpha(1)).value -
                        c.segment_line_integral(e, alpha(1)).value * c.segment_line_integral(e, beta(2)).value;
    CHECK(s.abs() < 1e-9);
    const PathWord trivial(2, {e, e.reversed()});
    CHECK(c.word_iterated_integral(trivial, alpha(1), beta(2)).value.abs() < 1e-10);
  }
  CHECK(dist(c.word_iterated_integral(PathWord::a_loop(1, 2), alpha(1), beta(1)).value, cplx(-1.0 / 3)) < 1e-6);
}

TEST_CASE("numeric value at Q0") {
  const NumericCurve& c = curve2();
  const auto v1 = c.numeric_I_Q0(t3(2, x(1), x(2), y(1)));
  CHECK(circle(v1.value, 1.0 / 6) < 1e-5);
  CHECK(v1.nearest == Rational(1, 6));
  CHECK(v1.distance < 1e-5);
  const HTensor sym = t3(2, x(1), y(1), x(1)) + t3(2, y(1), x(1), x(1));
  CHECK(circle(c.numeric_I_Q0(sym).value, 0) < 1e-5);
  CHECK(circle(c.numeric_I_Q0(t3(2, x(1), x(1), y(1))).value, 0.5) < 1e-5);
}

TEST_CASE("halving the step stays inside the error estimate") {
  QuadratureOptions o;
  o.nodes = 6;
  for (int level = 2; level <= 4; ++level) {
    o.fixed_level = level;
    const PieceTable coarse = integrate_piece(2, 1, false, o);
    o.fixed_level = level + 1;
    const PieceTable fine = integrate_piece(2, 1, false, o);
    PrecisionScope scope(o.precision_bits);
    double line_change = 0, iter_change = 0;
    for (std::size_t k = 0; k < fine.line.size(); ++k) line_change = std::max(line_change, dist(fine.line[k], coarse.line[k]));
    for (std::size_t k = 0; k < fine.iter.size(); ++k) iter_change = std::max(iter_change, dist(fine.iter[k], coarse.iter[k]));
    CHECK(line_change <= coarse.line_error);
    CHECK(iter_change <= coarse.iter_error);
  }
}

TEST_CASE("serial and parallel piece tables coincide") {
  const QuadratureOptions o;
  const auto s = integrate_all_pieces(2, o, Execution::serial);
  const auto p = integrate_all_pieces(2, o, Execution::parallel);
  REQUIRE(s.size() == p.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    CHECK(s[k].panels == p[k].panels);
    for (std::size_t f = 0; f < s[k].iter.size(); ++f) {
      CHECK(s[k].iter[f].re == p[k].iter[f].re);
      CHECK(s[k].iter[f].im == p[k].iter[f].im);
    }
  }
}

TEST_CASE("unreachable tolerance raises a convergence error") {
  QuadratureOptions o;
  o.precision_bits = 53;
  o.tol_iterated = 1e-20;
  CHECK_THROWS_AS(NumericCurve(2, o), ConvergenceError);
  try {
    NumericCurve bad(2, o);
  } catch (const ConvergenceError& e) {
    CHECK(e.achieved() > e.requested());
  }
}
