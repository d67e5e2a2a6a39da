#include <catch_amalgamated.hpp>

#include <random>

#include "lmo/exact.hpp"

using namespace lmo;

namespace {

MultiPoly random_poly(const RingPtr& ring, std::mt19937& rng, int max_degree, int terms) {
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<int> var(0, static_cast<int>(ring->size()) - 1);
  std::uniform_int_distribution<int> deg(0, max_degree);
  MultiPoly p(ring);
  for (int t = 0; t < terms; ++t) {
    Exponent e(ring->size(), 0);
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) ++e[var(rng)];
    p += MultiPoly::monomial(ring, e, Rational(coeff(rng), 1 + (t % 3)));
  }
  return p;
}

}  // namespace

TEST_CASE("rationals are canonical") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(to_string(parse_rational("-10/4")) == "-5/2");
  CHECK(to_string(parse_rational("+7")) == "7");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK(factorial(6) == 720);
  CHECK(binomial(6, 2) == 15);
}

TEST_CASE("diff follows the power rule") {
  auto r = Ring::make({"n"});
  auto n = MultiPoly::variable(r, "n");
  CHECK(diff(n.pow(3), "n") == 3 * n.pow(2));
  CHECK(diff(MultiPoly(r, 7), "n").is_zero());
  CHECK_THROWS_WITH(diff(n, "m"), Catch::Matchers::ContainsSubstring("'m'"));

  auto g = Ring::make({"H", "E", "F"});
  auto H = MultiPoly::variable(g, "H"), E = MultiPoly::variable(g, "E"), F = MultiPoly::variable(g, "F");
  MultiPoly C = Rational(1, 2) * H * H + 2 * E * F;
  CHECK(diff(C, "E") == 2 * F);
}

TEST_CASE("homogeneous_part filters by total degree") {
  auto g = Ring::make({"H", "E", "F"});
  auto H = MultiPoly::variable(g, "H"), E = MultiPoly::variable(g, "E"), F = MultiPoly::variable(g, "F");
  MultiPoly C = Rational(1, 2) * H * H + 2 * E * F;
  CHECK(homogeneous_part(C + H, 2) == C);
  CHECK(homogeneous_part(MultiPoly(g, 1), 0) == MultiPoly(g, 1));
  CHECK(homogeneous_part(H.pow(3), 2).is_zero());
}

TEST_CASE("canonical rendering is graded lexicographic") {
  auto g = Ring::make({"H", "E", "F"});
  auto H = MultiPoly::variable(g, "H"), E = MultiPoly::variable(g, "E"), F = MultiPoly::variable(g, "F");
  CHECK((2 * E * F + Rational(1, 2) * H * H).to_string() == "1/2*H^2 + 2*E*F");
  CHECK((H - 1).to_string() == "H - 1");
  CHECK((-H * E).to_string() == "-H*E");
  CHECK(MultiPoly(g).to_string() == "0");
}

TEST_CASE("rings do not mix") {
  auto a = MultiPoly::variable(Ring::make({"n"}), "n");
  auto b = MultiPoly::variable(Ring::make({"H"}), "H");
  CHECK_THROWS_AS(a + b, RingMismatch);
  CHECK_THROWS_AS(a * b, RingMismatch);
  // rings with equal names are interchangeable; scalars embed anywhere
  auto a2 = MultiPoly::variable(Ring::make({"n"}), "n");
  CHECK((a - a2).is_zero());
  CHECK((a + MultiPoly(Ring::scalar(), 2)).to_string() == "n + 2");
}

TEST_CASE("polynomial ring axioms hold on random triples") {
  auto ring = Ring::make({"x", "y", "z"});
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto p = random_poly(ring, rng, 4, 5), q = random_poly(ring, rng, 4, 5), s = random_poly(ring, rng, 4, 5);
    CHECK((p * q) * s == p * (q * s));
    CHECK(p * (q + s) == p * q + p * s);
    CHECK(p * q == q * p);
    CHECK(p + q == q + p);
    CHECK((p - p).is_zero());
  }
}

TEST_CASE("mixed partials commute and homogeneous parts sum back") {
  auto ring = Ring::make({"x", "y", "z"});
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto p = random_poly(ring, rng, 8, 8);
    for (std::size_t u = 0; u < 3; ++u)
      for (std::size_t v = 0; v < 3; ++v) CHECK(p.diff(u).diff(v) == p.diff(v).diff(u));
    MultiPoly sum(ring);
    for (unsigned d = 0; d <= 8; ++d) sum += homogeneous_part(p, d);
    CHECK(sum == p);
  }
}

TEST_CASE("substitute and evaluate agree") {
  auto ring = Ring::make({"x", "y"});
  auto x = MultiPoly::variable(ring, "x"), y = MultiPoly::variable(ring, "y");
  MultiPoly p = x.pow(2) * y - 3 * y + 1;
  std::vector<MultiPoly> images{y + 1, MultiPoly(ring, 2)};
  MultiPoly s = p.substitute(images);
  CHECK(s == 2 * (y + 1).pow(2) - 5);
  std::vector<Rational> pt{Rational(1, 2), Rational(3)};
  CHECK(p.evaluate(pt) == Rational(3, 4) - 9 + 1);
}

TEST_CASE("exp_hbar examples") {
  CHECK(exp_hbar(0, 5).to_string() == "1");
  CHECK(exp_hbar(Rational(-1, 4), 2).to_string() == "1 - 1/4*h + 1/32*h^2");
  for (const Rational a : {Rational(1, 3), Rational(-7, 2), Rational(5)}) {
    auto prod = exp_hbar(a, 9) * exp_hbar(-a, 9);
    CHECK(prod.truncation_order() == 9);
    CHECK(prod == HbarSeries::constant(Rational(1), 9));
  }
}

TEST_CASE("series product tracks precision") {
  auto ring = Ring::make({"n"});
  auto n = MultiPoly::variable(ring, "n");
  // h-free inputs multiply like polynomials
  auto a = HbarSeries::constant(n + 1, 4), b = HbarSeries::constant(n - 1, 4);
  CHECK((a * b).coefficient(0) == n * n - 1);
  // hbar^-1 * O(hbar^3) is only known through hbar^2
  auto inv = HbarSeries::monomial(Rational(1), -1, 5);
  auto c = exp_hbar(1, 3);
  CHECK((inv * c).truncation_order() == 2);
  CHECK((inv * c).min_order() == -1);
  auto s = a + inv;
  CHECK(s.to_string() == "h^-1 + (n + 1)");
}

TEST_CASE("series division inverts multiplication") {
  auto num = exp_hbar(Rational(2), 6).shifted(-1);
  auto den = exp_hbar(Rational(-1, 3), 6) + HbarSeries::monomial(Rational(5), 2, 6);
  auto q = num.divided_by(den);
  CHECK(q * den == num);
  CHECK_THROWS_AS(num.divided_by(HbarSeries(Ring::scalar(), 3)), std::domain_error);
  auto ring = Ring::make({"n"});
  auto bad = HbarSeries::constant(MultiPoly::variable(ring, "n"), 3);
  CHECK_THROWS_AS(num.divided_by(bad), std::domain_error);
}

TEST_CASE("matrix inverse and determinant") {
  auto m = Matrix::from_rows({{2, -1}, {-1, 2}});
  CHECK(m.determinant() == 3);
  CHECK(m * m.inverse() == Matrix::identity(2));
  CHECK(m.is_positive_definite());
  CHECK_FALSE(Matrix::from_rows({{0, 1}, {1, 0}}).is_positive_definite());
  CHECK_THROWS_AS(Matrix::from_rows({{1, 2}, {2, 4}}).inverse(), std::domain_error);
}
