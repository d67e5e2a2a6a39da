#include <catch_amalgamated.hpp>

#include "lmo/rootsys.hpp"

using namespace lmo;

namespace {

Rational eval(const MultiPoly& p, std::vector<Rational> pt) { return p.evaluate(pt); }

}  // namespace

TEST_CASE("A1 data") {
  auto rs = RootSystem::build('A', 1);
  REQUIRE(rs.positive_roots().size() == 1);
  CHECK(rs.positive_roots()[0] == Weight{2});
  CHECK(rs.rho() == Weight{1});
  CHECK(rs.invariants().rho_norm_sq == Rational(1, 2));
  CHECK(rs.disc_poly().to_string() == "n");
  CHECK(rs.coroot_gram() == Matrix::from_rows({{2}}));
}

TEST_CASE("A2 positive roots and discriminant") {
  auto rs = RootSystem::build('A', 2);
  std::set<Weight> roots(rs.positive_roots().begin(), rs.positive_roots().end());
  CHECK(roots == std::set<Weight>{{2, -1}, {1, 1}, {-1, 2}});
  auto n = MultiPoly::variable(rs.ring(), "n"), m = MultiPoly::variable(rs.ring(), "m");
  CHECK(rs.disc_poly() == n * m * (n + m) * Rational(1, 2));
  CHECK(rs.coroot_gram() == Matrix::from_rows({{2, -1}, {-1, 2}}));
}

TEST_CASE("invariant table") {
  struct Row {
    const char* name;
    int phi, dim, hv, d;
    Rational rho2;
  };
  const std::vector<Row> table{{"A1", 1, 3, 2, 1, Rational(1, 2)},
                               {"A2", 3, 8, 3, 1, Rational(2)},
                               {"A3", 6, 15, 4, 1, Rational(5)},
                               {"B2", 4, 10, 3, 2, Rational(5)},
                               {"G2", 6, 14, 4, 3, Rational(14)}};
  for (const auto& row : table) {
    INFO(row.name);
    auto inv = RootSystem::from_name(row.name).invariants();
    CHECK(inv.phi_plus == row.phi);
    CHECK(inv.dim_g == row.dim);
    CHECK(inv.dual_coxeter == row.hv);
    CHECK(inv.d_max == row.d);
    CHECK(inv.rho_norm_sq == row.rho2);
    CHECK(inv.dim_g == 2 * inv.phi_plus + inv.rank);
    CHECK(2 * inv.d_max * inv.dual_coxeter * inv.dim_g == 24 * inv.rho_norm_sq);
  }
}

TEST_CASE("structural invariants of every supported system") {
  for (const auto& name : RootSystem::supported()) {
    INFO(name);
    auto rs = RootSystem::from_name(name);
    CHECK(rs.weight_gram().is_positive_definite());
    CHECK(rs.coroot_gram().is_positive_definite());
    Rational shortest = -1;
    for (const auto& a : rs.positive_roots()) {
      const Rational len = rs.inner(a, a);
      if (shortest < 0 || len < shortest) shortest = len;
    }
    CHECK(shortest == 2);
    for (const auto& a : rs.simple_roots()) CHECK(2 * rs.inner(rs.rho(), a) / rs.inner(a, a) == 1);
    // rho is the half-sum of positive roots
    Weight sum(static_cast<std::size_t>(rs.rank()));
    for (const auto& a : rs.positive_roots())
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += a[i];
    for (auto& x : sum) x /= 2;
    CHECK(sum == rs.rho());
    CHECK(eval(rs.disc_poly(), rs.rho()) == 1);
    CHECK(rs.disc_poly().is_homogeneous());
    CHECK(rs.disc_poly().degree() == rs.invariants().phi_plus);
  }
}

TEST_CASE("discriminant reproduces irrep dimensions") {
  // Highest weight lambda - rho; classical dimension tables.
  CHECK(eval(RootSystem::from_name("A2").disc_poly(), {2, 1}) == 3);
  CHECK(eval(RootSystem::from_name("A2").disc_poly(), {2, 2}) == 8);
  CHECK(eval(RootSystem::from_name("A3").disc_poly(), {2, 1, 1}) == 4);
  CHECK(eval(RootSystem::from_name("A3").disc_poly(), {1, 2, 1}) == 6);
  CHECK(eval(RootSystem::from_name("A3").disc_poly(), {2, 1, 2}) == 15);
  // B2 with the first simple root long: Lambda_1 vector (5), Lambda_2 spin (4).
  CHECK(eval(RootSystem::from_name("B2").disc_poly(), {2, 1}) == 5);
  CHECK(eval(RootSystem::from_name("B2").disc_poly(), {1, 2}) == 4);
  // G2 with the first simple root short: 7 and adjoint 14.
  CHECK(eval(RootSystem::from_name("G2").disc_poly(), {2, 1}) == 7);
  CHECK(eval(RootSystem::from_name("G2").disc_poly(), {1, 2}) == 14);
}

TEST_CASE("Weyl group orders and closure") {
  const std::vector<std::pair<std::string, std::size_t>> orders{{"A1", 2}, {"A2", 6}, {"A3", 24}, {"B2", 8}, {"G2", 12}};
  for (const auto& [name, order] : orders) {
    INFO(name);
    auto rs = RootSystem::from_name(name);
    auto w = rs.weyl_group();
    CHECK(w.size() == order);
    CHECK(w.front() == Matrix::identity(static_cast<std::size_t>(rs.rank())));
    std::set<Matrix> elems(w.begin(), w.end());
    for (const auto& s : rs.simple_reflections()) CHECK(s * s == Matrix::identity(static_cast<std::size_t>(rs.rank())));
    for (const auto& a : w)
      for (const auto& b : w) CHECK(elems.count(a * b) == 1);
  }
}

TEST_CASE("discriminant is Weyl skew-invariant") {
  for (const auto& name : RootSystem::supported()) {
    INFO(name);
    auto rs = RootSystem::from_name(name);
    const MultiPoly d = rs.disc_poly();
    for (const auto& w : rs.weyl_group()) CHECK(rs.act(w, d) == w.determinant() * d);
  }
}

TEST_CASE("quantum dimension series") {
  auto a1 = RootSystem::build('A', 1);
  auto q = a1.qdim_series(2);
  CHECK(q.to_string() == "n + (1/24*n^3 - 1/24*n)*h^2");
  CHECK(q.coefficient(1).is_zero());
  // [3] = q + 1 + q^-1 = 1 + 2 cosh(h)
  auto q8 = a1.qdim_series(8);
  HbarSeries three(Ring::scalar(), 8);
  for (int k = 0; k <= 8; ++k) {
    const Rational v = q8.coefficient(k).evaluate(std::vector<Rational>{3});
    three.set_coefficient(k, MultiPoly(Ring::scalar(), v));
  }
  CHECK(three.to_string() == "3 + h^2 + 1/12*h^4 + 1/360*h^6 + 1/20160*h^8");

  for (const auto& name : RootSystem::supported()) {
    INFO(name);
    auto rs = RootSystem::from_name(name);
    auto s = rs.qdim_series(6);
    CHECK(s.truncation_order() == 6);
    CHECK(s.coefficient(0) == rs.disc_poly());
    const auto weyl = rs.weyl_group();
    for (const auto& [k, c] : s.coefficients()) {
      CHECK(k % 2 == 0);
      for (const auto& w : weyl) CHECK(rs.act(w, c) == w.determinant() * c);
    }
  }
}

TEST_CASE("unsupported systems are rejected") {
  CHECK_THROWS_WITH(RootSystem::build('C', 3), Catch::Matchers::ContainsSubstring("A1 A2 A3 B2 G2"));
  CHECK_THROWS_AS(RootSystem::from_name("E8x"), std::invalid_argument);
}
