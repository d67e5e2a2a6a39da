#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "lmo/oracle.hpp"

using namespace lmo;

namespace {

McConfig config(std::uint64_t samples, double f_hbar, unsigned threads = 0) {
  McConfig cfg;
  cfg.samples = samples;
  cfg.seed = 42;
  cfg.f_hbar = f_hbar;
  cfg.threads = threads;
  return cfg;
}

}  // namespace

TEST_CASE("Philox known-answer vectors") {
  using B = Philox4x32::Block;
  CHECK(Philox4x32::generate(B{0, 0, 0, 0}, {0, 0}) == B{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(Philox4x32::generate(B{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}) ==
        B{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(Philox4x32::generate(B{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}) ==
        B{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("Philox streams and normals") {
  Philox4x32 a(42, 0), b(42, 0), c(42, 1), d(43, 0);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  CHECK(x != d());
  Philox4x32 rng(7, 3);
  double sum = 0, sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  CHECK(std::abs(sum / n) < 4.0 / std::sqrt(n));
  CHECK(std::abs(sq / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("configuration validation") {
  auto line = QuadraticSpace(Ring::make({"x"}), Matrix::identity(1));
  const auto x = MultiPoly::variable(line.ring(), "x");
  CHECK_THROWS_AS(gauss_mc(line, config(9999, -0.1), x), std::invalid_argument);
  CHECK_THROWS_AS(gauss_mc(line, config(10000, 0.0), x), std::invalid_argument);
  CHECK_THROWS_AS(gauss_mc(line, config(10000, 0.3), x), std::invalid_argument);
  CHECK_THROWS_AS(gauss_mc(line, config(10000, -0.1), x.pow(11)), std::invalid_argument);
  auto sl2 = LieAlgebra::build_sl(2);
  CHECK_THROWS_AS(gauss_mc(QuadraticSpace::coadjoint(sl2), config(10000, -0.5), sl2.casimir()), std::invalid_argument);
  CHECK_THROWS_AS(weyl_ratio(sl2, config(10000, -0.5), sl2.variable(1)), std::invalid_argument);
}

TEST_CASE("one-dimensional moments") {
  auto line = QuadraticSpace(Ring::make({"x"}), Matrix::identity(1));
  const auto x = MultiPoly::variable(line.ring(), "x");
  const auto second = gauss_mc(line, config(200000, -0.1), x * x);
  CHECK(symbolic_expectation(line, x * x, -0.1) == Catch::Approx(10.0));
  CHECK(second.within(10.0));
  CHECK(second.std_error > 0);
  CHECK(gauss_mc(line, config(200000, -0.1), x.pow(3)).within(0.0));
  const MultiPoly quartic = x.pow(4) - 3 * x * x + 2;
  CHECK(gauss_mc(line, config(200000, -0.7), quartic).within(symbolic_expectation(line, quartic, -0.7)));
}

TEST_CASE("Monte Carlo matches the symbolic operator") {
  auto sl2 = LieAlgebra::build_sl(2);
  const auto g2 = QuadraticSpace::coadjoint(sl2);
  CHECK(symbolic_expectation(g2, sl2.casimir(), -0.5) == Catch::Approx(6.0));
  CHECK(gauss_mc(sl2, config(200000, -0.5), sl2.casimir()).within(6.0));
  // non-invariant and odd inputs on g*
  const MultiPoly h = sl2.variable(sl2.index_of("H"));
  const MultiPoly e = sl2.variable(sl2.index_of("E"));
  const MultiPoly f = sl2.variable(sl2.index_of("F"));
  for (const MultiPoly& p : {h * h * e * f, e * e * f * f + h, sl2.casimir().pow(2), h.pow(3) + e * f * h}) {
    const double exact = symbolic_expectation(g2, p, -0.8);
    CHECK(gauss_mc(sl2, config(200000, -0.8), p).within(exact));
  }
  auto sl3 = LieAlgebra::build_sl(3);
  const auto g3 = QuadraticSpace::coadjoint(sl3);
  for (const MultiPoly& p : {sl3.casimir(), sl3.cubic_casimir().pow(2), sl3.casimir() * sl3.cubic_casimir()}) {
    const double exact = symbolic_expectation(g3, p, -1.5);
    CHECK(gauss_mc(sl3, config(200000, -1.5), p).within(exact));
  }
  for (const auto& name : RootSystem::supported()) {
    auto rs = RootSystem::from_name(name);
    const auto space = QuadraticSpace::cartan(rs);
    const MultiPoly d = rs.disc_poly();
    // D^2 exceeds the degree bound for A3 and G2; D itself is skew and odd
    const MultiPoly p = 2 * d.degree() <= kMcMaxDegree ? d * d : d;
    INFO(name);
    CHECK(gauss_mc(space, config(200000, -2.0), p).within(symbolic_expectation(space, p, -2.0)));
  }
}

TEST_CASE("estimates are reproducible and thread independent") {
  auto sl2 = LieAlgebra::build_sl(2);
  const auto one = gauss_mc(sl2, config(100000, -0.5, 1), sl2.casimir());
  const auto many = gauss_mc(sl2, config(100000, -0.5, 4), sl2.casimir());
  CHECK(one.estimate == many.estimate);
  CHECK(one.std_error == many.std_error);
  CHECK(one.samples == 100000);
  CHECK(one.seed == 42);
  auto other = config(100000, -0.5, 1);
  other.seed = 7;
  CHECK(gauss_mc(sl2, other, sl2.casimir()).estimate != one.estimate);
}

TEST_CASE("Weyl reduction ratio") {
  auto sl2 = LieAlgebra::build_sl(2);
  CHECK(expected_weyl_ratio(sl2.root_system()) == Catch::Approx(std::numbers::pi));
  const auto r1 = weyl_ratio(sl2, config(200000, -0.5), MultiPoly(sl2.ring(), 1));
  const auto rc = weyl_ratio(sl2, config(200000, -0.5), sl2.casimir());
  CHECK(std::abs(r1.ratio - std::numbers::pi) <= 4 * r1.std_error);
  CHECK(std::abs(rc.ratio - std::numbers::pi) <= 4 * rc.std_error);
  CHECK(std::abs(r1.ratio - rc.ratio) <= 4 * std::hypot(r1.std_error, rc.std_error));
  auto sl3 = LieAlgebra::build_sl(3);
  const double expected = std::pow(4 * std::numbers::pi, 3) / 24;
  CHECK(expected_weyl_ratio(sl3.root_system()) == Catch::Approx(expected));
  const auto r3 = weyl_ratio(sl3, config(200000, -0.5), MultiPoly(sl3.ring(), 1));
  CHECK(std::abs(r3.ratio - expected) <= 4 * r3.std_error);
}
