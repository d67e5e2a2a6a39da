#include <catch_amalgamated.hpp>

#include "lmo/diagrams.hpp"

using namespace lmo;

namespace {

const char* kWheel2 = "v(0,1,2) v(3,4,5) leg(x,6) leg(x,7) e(0,6) e(3,7) e(1,5) e(2,4)";
const char* kH = "v(0,1,2) v(3,4,5) leg(x,6) leg(x,7) leg(x,8) leg(x,9) e(0,3) e(1,6) e(2,7) e(4,8) e(5,9)";
const char* kTripod = "v(0,1,2) leg(x,3) leg(x,4) leg(x,5) e(0,3) e(1,4) e(2,5)";
// theta with one leg on each of two edges
const char* kTheta2 = "v(0,1,2) v(3,5,4) v(6,7,8) v(9,10,11) leg(x,12) leg(x,13) "
                      "e(0,3) e(1,6) e(7,4) e(2,9) e(10,5) e(8,12) e(11,13)";

// Independent value of the theta weight: sum_abc T_abc T^abc with indices
// raised by B^{-1} one tensor at a time.
Rational theta_by_raising(const LieAlgebra& L) {
  const std::size_t n = L.dim();
  const Matrix& g = L.gram_inverse();
  Rational total = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        const Rational& t = L.vertex_tensor(a, b, c);
        if (t == 0) continue;
        Rational raised = 0;
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) raised += g(a, x) * g(b, y) * g(c, z) * L.vertex_tensor(x, z, y);
        total += t * raised;
      }
  return total;
}

}  // namespace

TEST_CASE("diagram text round trip and validation") {
  for (const char* text : {kWheel2, kH, kTripod, kTheta2, "c(-3/2) v(0,1,2) v(3,5,4) e(0,3) e(1,4) e(2,5) loops(2)",
                           "dleg(y,0) dleg(y,1) e(0,1)", ""}) {
    const auto d = JacobiDiagram::parse(text);
    CHECK(d.to_string() == text);
    CHECK(JacobiDiagram::parse(d.to_string()) == d);
  }
  CHECK(JacobiDiagram::theta().to_string() == "v(0,1,2) v(3,5,4) e(0,3) e(1,4) e(2,5)");
  CHECK(JacobiDiagram::strut("x").to_string() == "leg(x,0) leg(x,1) e(0,1)");
  CHECK(JacobiDiagram::theta().degree() == 1);
  CHECK(JacobiDiagram::parse(kH).degree() == 3);
  CHECK_THROWS_AS(JacobiDiagram::parse("v(0,1,2) e(0,1)"), std::invalid_argument);
  CHECK_THROWS_AS(JacobiDiagram::parse("leg(x,0) leg(x,0) e(0,0)"), std::invalid_argument);
  CHECK_THROWS_AS(JacobiDiagram::parse("leg(x,0) leg(x,1) e(0,1) e(1,0)"), std::invalid_argument);
  CHECK_THROWS_AS(JacobiDiagram::parse("leg(,0) leg(x,1) e(0,1)"), std::invalid_argument);
  CHECK_THROWS_AS(JacobiDiagram::parse("w(0,1)"), std::invalid_argument);
  CHECK_THROWS_AS(JacobiDiagram::parse("v(0,1)"), std::invalid_argument);
  CHECK_THROWS_AS(JacobiDiagram::parse("e(a,1)"), std::invalid_argument);
}

TEST_CASE("basic weights") {
  auto sl2 = LieAlgebra::build_sl(2);
  auto sl3 = LieAlgebra::build_sl(3);
  CHECK(weight(JacobiDiagram::strut("x"), sl2) == sl2.casimir());
  CHECK(weight(JacobiDiagram::strut("x"), sl2).to_string() == "1/2*H^2 + 2*E*F");
  CHECK(weight(JacobiDiagram::strut("x"), sl3) == sl3.casimir());
  CHECK(weight(JacobiDiagram::circle(), sl2).constant_term() == 3);
  CHECK(weight(JacobiDiagram::circle(), sl3).constant_term() == 8);
  CHECK(weight(JacobiDiagram(), sl2).constant_term() == 1);
  CHECK(weight(JacobiDiagram::circle().scaled(frac(1, 3)), sl2).constant_term() == 1);
  CHECK_THROWS_AS(weight(JacobiDiagram::strut("x", true), sl2), std::invalid_argument);
  // a two-label strut lives in the tensor square
  const auto mixed = JacobiDiagram::parse("leg(x,0) leg(y,1) e(0,1)");
  const MultiPoly w = weight(mixed, sl2);
  CHECK(w.ring()->size() == 6);
  CHECK(w.to_string() == "1/2*H_x*H_y + E_x*F_y + F_x*E_y");
}

TEST_CASE("theta weight and orientation") {
  for (int n : {2, 3}) {
    auto L = LieAlgebra::build_sl(n);
    const Rational expected = 24 * L.root_system().invariants().rho_norm_sq;
    CHECK(expected == (n == 2 ? 12 : 48));
    const Rational w = weight(JacobiDiagram::theta(), L).constant_term();
    CHECK(w == expected);
    CHECK(w == theta_weight_expected(L));
    CHECK(w == theta_by_raising(L));
    CHECK(weight(JacobiDiagram::theta().flipped(0), L).constant_term() == -expected);
    CHECK(weight(JacobiDiagram::theta().flipped(0).flipped(1), L).constant_term() == expected);
  }
  CHECK(adjoint_casimir(LieAlgebra::build_sl(2)) == 4);
  CHECK(adjoint_casimir(LieAlgebra::build_sl(3)) == 6);
}

TEST_CASE("orientation reversal on diagrams with legs") {
  for (int n : {2, 3}) {
    auto L = LieAlgebra::build_sl(n);
    for (const char* text : {kH, kWheel2, kTripod, kTheta2}) {
      const auto d = JacobiDiagram::parse(text);
      for (std::size_t v = 0; v < d.vertices().size(); ++v) CHECK(weight(d.flipped(v), L) == -weight(d, L));
    }
  }
}

TEST_CASE("weights are invariant and multiplicative") {
  for (int n : {2, 3}) {
    auto L = LieAlgebra::build_sl(n);
    for (const char* text : {kH, kWheel2, kTripod, kTheta2}) {
      const MultiPoly w = weight(JacobiDiagram::parse(text), L);
      CHECK(L.is_invariant(w));
    }
    // wheel with two spokes is C_ad times the strut
    CHECK(weight(JacobiDiagram::parse(kWheel2), L) == adjoint_casimir(L) * L.casimir());
    const auto theta = JacobiDiagram::theta();
    const auto circle = JacobiDiagram::circle();
    const Rational t = weight(theta, L).constant_term();
    CHECK(weight(theta.disjoint_union(theta), L).constant_term() == t * t);
    CHECK(weight(theta.disjoint_union(circle), L).constant_term() == t * static_cast<unsigned long>(L.dim()));
    const auto strut = JacobiDiagram::strut("x");
    CHECK(weight(strut.disjoint_union(strut), L) == L.casimir() * L.casimir());
    CHECK(weight(DiagramSum(theta) * DiagramSum(theta) + frac(1, 2) * DiagramSum(circle), L) ==
          t * t + frac(static_cast<long>(L.dim()), 2));
  }
}

TEST_CASE("gluing bracket") {
  auto sl2 = LieAlgebra::build_sl(2);
  const DiagramSum dx = JacobiDiagram::strut("x", true);
  const DiagramSum x = JacobiDiagram::strut("x");
  const DiagramSum one = bracket(dx, x);
  REQUIRE(one.terms.size() == 2);
  for (const auto& [c, d] : one.terms) {
    CHECK(c == 1);
    CHECK(d == JacobiDiagram::circle());
  }
  CHECK(bracket(dx, DiagramSum(JacobiDiagram::parse(kTripod))).terms.empty());
  CHECK(bracket(DiagramSum(JacobiDiagram::strut("y", true)), x).terms.empty());
  const DiagramSum four = bracket(dx * dx, x * x);
  CHECK(four.terms.size() == 24);
  // 8 bijections give two circles, 16 give one
  int two_loops = 0;
  for (const auto& [c, d] : four.terms) two_loops += d.free_loops() == 2;
  CHECK(two_loops == 8);
  CHECK(weight(four, sl2) == 8 * 9 + 16 * 3);
  // bilinearity
  const DiagramSum h = JacobiDiagram::parse(kH);
  const DiagramSum s2 = x * x;
  const DiagramSum combo = frac(2, 3) * h + Rational(-5) * s2;
  CHECK(weight(bracket(dx * dx, combo), sl2) ==
        frac(2, 3) * weight(bracket(dx * dx, h), sl2) - 5 * weight(bracket(dx * dx, s2), sl2));
  CHECK(weight(bracket(Rational(7) * (dx * dx), h), sl2) == 7 * weight(bracket(dx * dx, h), sl2));
  CHECK_THROWS_AS(bracket(x, x), std::invalid_argument);
  CHECK_THROWS_AS(bracket(dx, dx), std::invalid_argument);
  // a dx-theta with legs glues into a closed diagram with no leftover legs
  for (const auto& [c, d] : bracket(dx, DiagramSum(JacobiDiagram::parse(kWheel2)) ).terms) CHECK(d.is_closed());
}

TEST_CASE("bracket against the Laplacian") {
  auto sl2 = LieAlgebra::build_sl(2);
  auto s = wu_check(sl2, 1, JacobiDiagram::strut("x"));
  CHECK(s.lhs == HbarSeries::constant(Rational(-3), 8));
  CHECK(s.rhs == HbarSeries::constant(Rational(-3), 8));
  auto odd = wu_check(sl2, 1, JacobiDiagram::parse(kTripod));
  CHECK(odd.lhs.is_zero());
  CHECK(odd.rhs.is_zero());
  auto closed = wu_check(sl2, 2, JacobiDiagram::theta());
  CHECK(closed.lhs == HbarSeries::monomial(Rational(12), 1, 8));
  CHECK(closed.equal());

  const std::vector<std::string> tests{"leg(x,0) leg(x,1) e(0,1)",
                                       "leg(x,0) leg(x,1) leg(x,2) leg(x,3) e(0,1) e(2,3)",
                                       "leg(x,0) leg(x,1) leg(x,2) leg(x,3) leg(x,4) leg(x,5) e(0,1) e(2,3) e(4,5)",
                                       kWheel2,
                                       kH,
                                       kTripod,
                                       kTheta2,
                                       "v(0,1,2) v(3,5,4) e(0,3) e(1,4) e(2,5) leg(x,6) leg(x,7) e(6,7)",
                                       std::string(kTripod) + " v(6,7,8) leg(x,9) leg(x,10) leg(x,11) e(6,9) e(7,10) e(8,11)",
                                       std::string(kH) + " leg(x,10) leg(x,11) e(10,11)"};
  for (int n : {2, 3}) {
    auto L = LieAlgebra::build_sl(n);
    for (const auto& text : tests) {
      const auto d = JacobiDiagram::parse(text);
      for (int f : {1, -1, 2}) {
        INFO(L.name() << " f=" << f << " " << text);
        auto r = wu_check(L, f, d);
        CHECK(r.equal());
        CHECK(r.lhs.truncation_order() == 8);
      }
    }
  }
  CHECK_THROWS_AS(wu_check(sl2, 0, JacobiDiagram::strut("x")), std::invalid_argument);
  const auto x = DiagramSum(JacobiDiagram::strut("x"));
  CHECK_THROWS_AS(wu_check(sl2, 1, (x * x * x * x).terms.front().second), std::invalid_argument);
  CHECK_THROWS_AS(wu_check(sl2, 1, JacobiDiagram::parse("leg(x,0) leg(y,1) e(0,1)")), std::invalid_argument);
  CHECK_THROWS_AS(wu_check(sl2, 1, JacobiDiagram::strut("x", true)), std::invalid_argument);
}
