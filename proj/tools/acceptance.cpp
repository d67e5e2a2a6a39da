// Runs the twelve acceptance criteria and prints one PASS/FAIL line each.
// Exit code 0 iff every criterion passes.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "lmo/diagrams.hpp"
#include "lmo/laplace.hpp"
#include "lmo/oracle.hpp"

using namespace lmo;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

// C^a (sl2, a <= 6) and C^a C3^b (sl3, 2a + 3b <= 8).
std::vector<MultiPoly> invariant_basis(const LieAlgebra& L) {
  std::vector<MultiPoly> out;
  if (L.name() == "sl2") {
    for (unsigned a = 0; a <= 6; ++a) out.push_back(L.casimir().pow(a));
    return out;
  }
  for (unsigned a = 0; 2 * a <= 8; ++a)
    for (unsigned b = 0; 2 * a + 3 * b <= 8; ++b) out.push_back(L.casimir().pow(a) * L.cubic_casimir().pow(b));
  return out;
}

const std::vector<LieAlgebra>& algebras() {
  static const std::vector<LieAlgebra> list{LieAlgebra::build_sl(2), LieAlgebra::build_sl(3)};
  return list;
}

McConfig mc(std::uint64_t samples, double f_hbar) {
  McConfig c;
  c.samples = samples;
  c.seed = 42;
  c.f_hbar = f_hbar;
  c.threads = 0;
  return c;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void hcrf(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  std::size_t n = 0;
  for (const auto& L : algebras())
    for (const auto& p : invariant_basis(L)) {
      o.require(check_hcrf(L, p).equal(), L.name() + " degree " + std::to_string(p.degree()));
      ++n;
    }
  const double t = seconds_since(start);
  o.require(t < 120.0, "runtime");
  o.detail << n << " inputs in " << t << " s";
}

void dhd(Outcome& o) {
  const auto sl2 = algebras()[0];
  const auto sl3 = algebras()[1];
  o.require(c_constant(sl2.root_system()) == 4, "c(sl2) = 4");
  o.require(c_constant(sl3.root_system()) == 24, "c(sl3) = 24");
  const auto d1 = check_dhd(sl2, sl2.casimir());
  o.require(d1.lhs == 24 && d1.rhs == 24, "sl2 d=1 gives 24 = 24");
  std::size_t n = 0;
  for (const auto& L : algebras())
    for (const auto& p : invariant_basis(L)) {
      if (p.degree() % 2 != 0) continue;
      o.require(check_dhd(L, p).equal(), L.name() + " degree " + std::to_string(p.degree()));
      ++n;
    }
  o.detail << n << " inputs; sl2 d=1: " << to_string(d1.lhs) << " = " << to_string(d1.rhs);
}

void disc(Outcome& o) {
  for (const auto& name : RootSystem::supported()) {
    const auto rs = RootSystem::from_name(name);
    o.require(QuadraticSpace::cartan(rs).laplacian(rs.disc_poly()).is_zero(), name);
  }
  o.detail << RootSystem::supported().size() << " root systems";
}

void reduce(Outcome& o) {
  std::size_t n = 0;
  for (const auto& L : algebras()) {
    const auto unit = reduce_identity(L, 1, MultiPoly(L.ring(), 1));
    o.require(unit.lhs == HbarSeries::constant(Rational(1), HbarSeries::kDefaultOrder) && unit.equal(),
              L.name() + " p=1");
    for (const auto& p : invariant_basis(L))
      for (int f : {1, -1, 2, -2, 3}) {
        o.require(reduce_identity(L, f, p).equal(), L.name() + " f=" + std::to_string(f));
        ++n;
      }
  }
  o.detail << n << " (p, f) pairs; p=1 gives 1 = 1";
}

void theta(Outcome& o) {
  for (const auto& L : algebras()) {
    const Rational w = weight(JacobiDiagram::theta(), L).constant_term();
    const Rational expected = 24 * L.root_system().invariants().rho_norm_sq;
    o.require(w == expected, L.name() + " theta");
    o.require(weight(JacobiDiagram::theta().flipped(0), L).constant_term() == -w, L.name() + " flipped");
    o.detail << L.name() << ": " << to_string(w) << " = " << to_string(expected) << "; ";
  }
}

void wu(Outcome& o) {
  const std::vector<std::string> diagrams{
      "leg(x,0) leg(x,1) e(0,1)",
      "leg(x,0) leg(x,1) leg(x,2) leg(x,3) e(0,1) e(2,3)",
      "leg(x,0) leg(x,1) leg(x,2) leg(x,3) leg(x,4) leg(x,5) e(0,1) e(2,3) e(4,5)",
      "v(0,1,2) leg(x,3) leg(x,4) leg(x,5) e(0,3) e(1,4) e(2,5)",
      "v(0,1,2) v(3,4,5) leg(x,6) leg(x,7) e(0,6) e(3,7) e(1,5) e(2,4)",
      "v(0,1,2) v(3,4,5) leg(x,6) leg(x,7) leg(x,8) leg(x,9) e(0,3) e(1,6) e(2,7) e(4,8) e(5,9)",
      "v(0,1,2) v(3,5,4) e(0,3) e(1,4) e(2,5)",
      "v(0,1,2) v(3,5,4) e(0,3) e(1,4) e(2,5) leg(x,6) leg(x,7) e(6,7)",
      "v(0,1,2) v(3,5,4) v(6,7,8) v(9,10,11) leg(x,12) leg(x,13) e(0,3) e(1,6) e(7,4) e(2,9) e(10,5) e(8,12) "
      "e(11,13)",
      "v(0,1,2) v(3,4,5) leg(x,6) leg(x,7) leg(x,8) leg(x,9) e(0,3) e(1,6) e(2,7) e(4,8) e(5,9) leg(x,10) leg(x,11) "
      "e(10,11)",
      "v(0,1,2) leg(x,3) leg(x,4) leg(x,5) e(0,3) e(1,4) e(2,5) v(6,7,8) leg(x,9) leg(x,10) leg(x,11) e(6,9) e(7,10) "
      "e(8,11)"};
  std::size_t n = 0;
  for (const auto& L : algebras())
    for (const auto& text : diagrams)
      for (int f : {1, -1, 2}) {
        o.require(wu_check(L, f, JacobiDiagram::parse(text), 8).equal(), L.name() + " " + text);
        ++n;
      }
  o.detail << n << " (algebra, diagram, f) cases";
}

void oe(Outcome& o) {
  std::size_t n = 0;
  for (const auto& name : RootSystem::supported()) {
    const auto rs = RootSystem::from_name(name);
    for (const auto& p : weyl_invariant_basis(rs, 6))
      for (int f : {1, -1, 2, -2, 3}) {
        o.require(o_eq_e_check(rs, f, p, 8).equal(), name + " " + p.to_string());
        ++n;
      }
  }
  o.detail << n << " (system, invariant, f) cases to order 8";
}

void intertwiner(Outcome& o) {
  std::size_t n = 0;
  for (const auto& L : algebras()) {
    const auto space = QuadraticSpace::coadjoint(L);
    std::vector<MultiPoly> inputs;
    for (std::size_t i = 0; i < L.dim(); ++i)
      for (std::size_t j = i; j < L.dim(); ++j) inputs.push_back(L.variable(i) * L.variable(j));
    inputs.push_back(L.casimir() * L.variable(0) * L.variable(1));
    inputs.push_back(L.variable(0).pow(2) * L.variable(L.dim() - 1).pow(2));
    for (const auto& g : inputs)
      for (std::size_t x = 0; x < L.dim(); ++x) {
        const MultiPoly ad = L.ad_apply(x, g);
        for (int f : {1, -1, 2}) o.require(e_op(space, f, ad).is_zero(), L.name() + " e_op");
        if (L.name() == "sl2")
          for (int k = 1; k <= 6; ++k) o.require(sym_char(L, k, ad) == 0, "sym_char");
        ++n;
      }
  }
  o.detail << n << " (g, X) pairs";
}

void i2_leading(Outcome& o) {
  for (const auto& name : RootSystem::supported()) {
    const auto rs = RootSystem::from_name(name);
    const int phi = rs.invariants().phi_plus;
    for (int f : {1, -1}) {
      Rational expected = c_constant(rs);
      for (int k = 0; k < phi; ++k) expected /= -2 * f;
      const Rational lead = i2_trivial(rs, f, 0).shifted(phi).coefficient(0).constant_term();
      o.require(lead == expected, name + " leading term");
      const HbarSeries tau = lens_tau(rs, f, 10);
      o.require(tau == HbarSeries::constant(Rational(1), 10) && tau.truncation_order() == 10,
                name + " lens_tau(" + std::to_string(f) + ")");
    }
  }
  const auto a1 = RootSystem::from_name("A1");
  o.detail << "A1: " << to_string(i2_trivial(a1, 1, 0).shifted(1).coefficient(0).constant_term()) << ", "
           << to_string(i2_trivial(a1, -1, 0).shifted(1).coefficient(0).constant_term()) << "; lens_tau = 1 to order 10";
}

void duflo(Outcome& o) {
  const auto& sl2 = algebras()[0];
  for (int n = 1; n <= 10; ++n)
    o.require(sym_char(sl2, n, sl2.casimir()) + frac(n, 2) == frac(static_cast<long>(n) * n * n, 2),
              "n=" + std::to_string(n));
  o.detail << "n = 1..10";
}

void gauss(Outcome& o) {
  struct Case {
    std::string name;
    std::function<McEstimate(const McConfig&)> run;
    std::function<double(double)> exact;
    double f_hbar;
  };
  const QuadraticSpace line(Ring::make({"x"}), Matrix::identity(1));
  const MultiPoly x = MultiPoly::variable(line.ring(), "x");
  const auto& sl2 = algebras()[0];
  const auto& sl3 = algebras()[1];
  const auto a2 = RootSystem::from_name("A2");
  const auto h2 = QuadraticSpace::cartan(a2);
  const MultiPoly d2 = a2.disc_poly() * a2.disc_poly();
  const std::vector<Case> cases{
      {"x^2", [&](const McConfig& c) { return gauss_mc(line, c, x * x); },
       [&](double fh) { return symbolic_expectation(line, x * x, fh); }, -0.1},
      {"x^3", [&](const McConfig& c) { return gauss_mc(line, c, x.pow(3)); },
       [&](double fh) { return symbolic_expectation(line, x.pow(3), fh); }, -0.1},
      {"sl2 C", [&](const McConfig& c) { return gauss_mc(sl2, c, sl2.casimir()); },
       [&](double fh) { return symbolic_expectation(QuadraticSpace::coadjoint(sl2), sl2.casimir(), fh); }, -0.5},
      {"sl3 C", [&](const McConfig& c) { return gauss_mc(sl3, c, sl3.casimir()); },
       [&](double fh) { return symbolic_expectation(QuadraticSpace::coadjoint(sl3), sl3.casimir(), fh); }, -0.5},
      {"A2 D^2", [&](const McConfig& c) { return gauss_mc(h2, c, d2); },
       [&](double fh) { return symbolic_expectation(h2, d2, fh); }, -2.0},
  };
  for (const auto& c : cases) {
    const auto start = std::chrono::steady_clock::now();
    const McEstimate est = c.run(mc(1000000, c.f_hbar));
    const double t = seconds_since(start);
    const double exact = c.exact(c.f_hbar);
    o.require(est.within(exact, 4.0), c.name + " within 4 stderr");
    o.require(t < 30.0, c.name + " runtime");
    o.detail << c.name << ": " << est.estimate << " +- " << est.std_error << " vs " << exact << "; ";
  }
}

void ratio(Outcome& o) {
  const auto& sl2 = algebras()[0];
  const auto& sl3 = algebras()[1];
  const double pi = std::numbers::pi;
  const auto r1 = weyl_ratio(sl2, mc(1000000, -0.5), MultiPoly(sl2.ring(), 1));
  const auto rc = weyl_ratio(sl2, mc(1000000, -0.5), sl2.casimir());
  o.require(std::abs(r1.ratio - pi) <= 0.02 * pi, "sl2 p=1 within 2%");
  o.require(std::abs(rc.ratio - pi) <= 0.02 * pi, "sl2 p=C within 2%");
  o.require(std::abs(r1.ratio - rc.ratio) <= 4 * std::hypot(r1.std_error, rc.std_error), "sl2 p-independence");
  const double expected3 = std::pow(4 * pi, 3) / 24;
  const auto s1 = weyl_ratio(sl3, mc(4000000, -0.5), MultiPoly(sl3.ring(), 1));
  const auto sc = weyl_ratio(sl3, mc(4000000, -0.5), sl3.casimir());
  o.require(std::abs(s1.ratio - expected3) <= 0.05 * expected3, "sl3 p=1 within 5%");
  o.require(std::abs(s1.ratio - sc.ratio) <= 4 * std::hypot(s1.std_error, sc.std_error), "sl3 p-independence");
  o.require(std::abs(expected_weyl_ratio(sl2.root_system()) - pi) < 1e-12, "sl2 expected value");
  o.detail << "sl2: " << r1.ratio << ", " << rc.ratio << " vs " << pi << "; sl3: " << s1.ratio << ", " << sc.ratio
           << " vs " << expected3;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"Harish-Chandra restriction", hcrf},
      {"Laplacian powers with c = Delta^phi(D^2)/phi!", dhd},
      {"Delta_h(D) = 0", disc},
      {"Weyl reduction identity", reduce},
      {"theta weight", theta},
      {"bracket equals e_op of the weight", wu},
      {"O = q^{-f|rho|^2/2} E on Weyl invariants", oe},
      {"intertwiners", intertwiner},
      {"I2 leading term and unit lens spaces", i2_leading},
      {"shifted symmetrized character", duflo},
      {"Monte Carlo Gaussian oracle", gauss},
      {"Weyl reduction ratio", ratio},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double t = seconds_since(start);
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << ". " << criteria[i].first << " [" << o.detail.str()
              << "] (" << t << " s)" << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
