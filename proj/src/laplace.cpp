#include "lmo/laplace.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace lmo {

QuadraticSpace::QuadraticSpace(RingPtr ring, Matrix gram) : ring_(std::move(ring)), gram_(std::move(gram)) {
  if (gram_.rows() != ring_->size() || gram_.cols() != ring_->size())
    throw std::invalid_argument("Gram matrix size does not match the number of variables");
  if (!gram_.is_symmetric()) throw std::invalid_argument("Gram matrix must be symmetric");
}

QuadraticSpace QuadraticSpace::coadjoint(const LieAlgebra& L) { return QuadraticSpace(L.ring(), L.gram()); }

QuadraticSpace QuadraticSpace::cartan(const RootSystem& rs) { return QuadraticSpace(rs.ring(), rs.coroot_gram()); }

MultiPoly QuadraticSpace::laplacian(const MultiPoly& p) const {
  Ring::unify(ring_, p.ring());
  const MultiPoly q = p.embed(ring_);
  const std::size_t n = ring_->size();
  MultiPoly out(ring_);
  for (const auto& [e, c] : q.terms()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] == 0) continue;
      if (e[i] >= 2 && gram_(i, i) != 0) {
        Exponent d = e;
        d[i] = static_cast<std::uint16_t>(d[i] - 2);
        out.add_term(d, gram_(i, i) * c * e[i] * (e[i] - 1));
      }
      for (std::size_t j = i + 1; j < n; ++j) {
        if (e[j] == 0 || gram_(i, j) == 0) continue;
        Exponent d = e;
        --d[i];
        --d[j];
        out.add_term(d, 2 * gram_(i, j) * c * e[i] * e[j]);
      }
    }
  }
  return out;
}

MultiPoly QuadraticSpace::laplacian_power(const MultiPoly& p, unsigned d) const {
  MultiPoly q = p;
  for (unsigned k = 0; k < d && !q.is_zero(); ++k) q = laplacian(q);
  return q;
}

void require_framing(int f) {
  if (f == 0) throw std::invalid_argument("framing must be a nonzero integer");
}

namespace {

Rational pow_rational(const Rational& base, unsigned k) {
  Rational r = 1;
  for (unsigned i = 0; i < k; ++i) r *= base;
  return r;
}

void accumulate(HbarSeries& s, int k, const Rational& v) {
  if (v == 0 || k > s.truncation_order()) return;
  s.set_coefficient(k, s.coefficient(k) + MultiPoly(Ring::scalar(), v));
}

unsigned half_degree(const MultiPoly& p) { return p.is_zero() ? 0u : static_cast<unsigned>(p.degree()) / 2; }

}  // namespace

HbarSeries e_op(const QuadraticSpace& space, int f, const MultiPoly& p, int order) {
  require_framing(f);
  Ring::unify(space.ring(), p.ring());
  HbarSeries out(Ring::scalar(), order);
  const Rational step = Rational(-1) / (2 * f);
  for (unsigned d = 0; d <= half_degree(p); ++d) {
    const MultiPoly part = p.homogeneous_part(2 * d);
    if (part.is_zero()) continue;
    const Rational value = space.laplacian_power(part, d).constant_term();
    accumulate(out, -static_cast<int>(d), value * pow_rational(step, d) / factorial(d));
  }
  return out;
}

HbarSeries e_op(const QuadraticSpace& space, int f, const HbarSeries& s, int order) {
  HbarSeries out(Ring::scalar(), order);
  for (const auto& [k, c] : s.coefficients()) {
    const HbarSeries part = e_op(space, f, c, order - k + static_cast<int>(half_degree(c)));
    for (const auto& [j, v] : part.coefficients()) accumulate(out, k + j, v.constant_term());
  }
  return out;
}

HbarSeries e_op_multi(const QuadraticSpace& space, std::span<const int> framings, std::span<const MultiPoly> factors,
                      int order) {
  if (framings.size() != factors.size()) throw std::invalid_argument("one framing per tensor factor is required");
  // Each factor is an exact Laurent polynomial; widen so the product keeps `order`.
  int slack = 0;
  for (const auto& p : factors) slack += static_cast<int>(half_degree(p));
  HbarSeries out = HbarSeries::constant(Rational(1), order + slack);
  for (std::size_t j = 0; j < factors.size(); ++j) out = out * e_op(space, framings[j], factors[j], order + slack);
  return out.truncated(order);
}

HbarSeries o_op(const RootSystem& rs, int f, const MultiPoly& p, int order) {
  require_framing(f);
  Ring::unify(rs.ring(), p.ring());
  const MultiPoly q = p.embed(rs.ring());
  const Matrix& g = rs.coroot_gram();
  std::map<Exponent, Rational> memo;
  // Sum over perfect pairings of the linear factors of x^e.
  std::function<Rational(const Exponent&)> wick = [&](const Exponent& e) -> Rational {
    auto first = std::find_if(e.begin(), e.end(), [](std::uint16_t x) { return x > 0; });
    if (first == e.end()) return 1;
    if (auto it = memo.find(e); it != memo.end()) return it->second;
    const auto i = static_cast<std::size_t>(first - e.begin());
    Exponent rest = e;
    --rest[i];
    Rational sum = 0;
    for (std::size_t j = 0; j < rest.size(); ++j) {
      if (rest[j] == 0 || g(i, j) == 0) continue;
      Exponent sub = rest;
      --sub[j];
      sum += g(i, j) * rest[j] * wick(sub);
    }
    memo.emplace(e, sum);
    return sum;
  };
  const int slack = static_cast<int>(half_degree(q));
  HbarSeries moments(Ring::scalar(), order + slack);
  const Rational step = Rational(-1) / f;
  for (const auto& [e, c] : q.terms()) {
    const unsigned deg = total_degree(e);
    if (deg % 2 != 0) continue;
    accumulate(moments, -static_cast<int>(deg / 2), c * pow_rational(step, deg / 2) * wick(e));
  }
  const Rational shift = -f * rs.invariants().rho_norm_sq / 2;
  return (exp_hbar(shift, order + slack) * moments).truncated(order);
}

Rational c_constant(const RootSystem& rs) {
  const int phi = rs.invariants().phi_plus;
  const MultiPoly d = rs.disc_poly();
  return QuadraticSpace::cartan(rs).laplacian_power(d * d, static_cast<unsigned>(phi)).constant_term() /
         factorial(static_cast<unsigned>(phi));
}

namespace {

void require_invariant(const LieAlgebra& L, const MultiPoly& p, const char* what) {
  if (!L.is_invariant(p)) throw std::invalid_argument(std::string(what) + ": input is not ad-invariant");
}

}  // namespace

Sides<MultiPoly> check_hcrf(const LieAlgebra& L, const MultiPoly& p) {
  require_invariant(L, p, "check_hcrf");
  const RootSystem& rs = L.root_system();
  const MultiPoly d = rs.disc_poly();
  const auto g = QuadraticSpace::coadjoint(L);
  const auto h = QuadraticSpace::cartan(rs);
  return {d * L.restrict(g.laplacian(p)), h.laplacian(d * L.restrict(p))};
}

Sides<Rational> check_dhd(const LieAlgebra& L, const MultiPoly& p) {
  require_invariant(L, p, "check_dhd");
  if (!p.is_homogeneous() || p.degree() < 0 || p.degree() % 2 != 0)
    throw std::invalid_argument("check_dhd: input must be homogeneous of even degree");
  const unsigned d = static_cast<unsigned>(p.degree()) / 2;
  const RootSystem& rs = L.root_system();
  const unsigned phi = static_cast<unsigned>(rs.invariants().phi_plus);
  const MultiPoly disc = rs.disc_poly();
  const Rational lhs =
      c_constant(rs) / factorial(d) * QuadraticSpace::coadjoint(L).laplacian_power(p, d).constant_term();
  const Rational rhs = QuadraticSpace::cartan(rs).laplacian_power(disc * disc * L.restrict(p), d + phi).constant_term() /
                       factorial(d + phi);
  return {lhs, rhs};
}

Sides<HbarSeries> reduce_identity(const LieAlgebra& L, int f, const MultiPoly& p, int order,
                                  std::optional<Rational> constant) {
  require_framing(f);
  require_invariant(L, p, "reduce_identity");
  const RootSystem& rs = L.root_system();
  const int phi = rs.invariants().phi_plus;
  const Rational c = constant.value_or(c_constant(rs));
  if (c == 0) throw std::invalid_argument("reduce_identity: constant must be nonzero");
  const MultiPoly disc = rs.disc_poly();
  HbarSeries lhs = e_op(QuadraticSpace::coadjoint(L), f, p, order);
  HbarSeries h = e_op(QuadraticSpace::cartan(rs), f, disc * disc * L.restrict(p), order + phi);
  const Rational factor = pow_rational(Rational(-2 * f), static_cast<unsigned>(phi)) / c;
  return {std::move(lhs), (h * factor).shifted(phi).truncated(order)};
}

Sides<HbarSeries> reduce_identity_multi(const LieAlgebra& L, std::span<const int> framings,
                                        std::span<const MultiPoly> factors, int order) {
  if (framings.size() != factors.size()) throw std::invalid_argument("one framing per tensor factor is required");
  int slack = 0;
  for (const auto& p : factors) slack += static_cast<int>(half_degree(p));
  const int wide = order + slack;
  Sides<HbarSeries> out{HbarSeries::constant(Rational(1), wide), HbarSeries::constant(Rational(1), wide)};
  for (std::size_t j = 0; j < factors.size(); ++j) {
    auto s = reduce_identity(L, framings[j], factors[j], wide);
    out.lhs = out.lhs * s.lhs;
    out.rhs = out.rhs * s.rhs;
  }
  return {out.lhs.truncated(order), out.rhs.truncated(order)};
}

Sides<HbarSeries> o_eq_e_check(const RootSystem& rs, int f, const MultiPoly& p, int order) {
  require_framing(f);
  const int slack = static_cast<int>(half_degree(p));
  const Rational shift = -f * rs.invariants().rho_norm_sq / 2;
  HbarSeries rhs = exp_hbar(shift, order + slack) * e_op(QuadraticSpace::cartan(rs), f, p, order + slack);
  return {o_op(rs, f, p, order), rhs.truncated(order)};
}

HbarSeries i2_trivial(const RootSystem& rs, int f, int order) {
  require_framing(f);
  if (order < 0) throw std::invalid_argument("i2_trivial: order must be non-negative");
  const int phi = rs.invariants().phi_plus;
  // The hbar^k coefficient of qdim^2 has degree 2 phi + k and lands at
  // hbar^{k/2 - phi}, so 2(order + phi) orders of qdim suffice.
  const HbarSeries q = rs.qdim_series(2 * (order + phi));
  const HbarSeries moments = e_op(QuadraticSpace::cartan(rs), f, q * q, order);
  const Rational shift = -f * rs.invariants().rho_norm_sq / 2;
  return exp_hbar(shift, order + phi) * moments;
}

HbarSeries lens_tau(const RootSystem& rs, int p, int order) {
  if (p == 0) throw std::invalid_argument("lens_tau: p must be nonzero");
  const int phi = rs.invariants().phi_plus;
  const HbarSeries num = i2_trivial(rs, p, order).shifted(phi);
  const HbarSeries den = std::abs(p) == 1 ? num : i2_trivial(rs, p > 0 ? 1 : -1, order).shifted(phi);
  return num.divided_by(den).truncated(order);
}

HbarSeries lens_tau_normalized(const RootSystem& rs, int p, int order) {
  const int phi = rs.invariants().phi_plus;
  return lens_tau(rs, p, order) * pow_rational(Rational(std::abs(p)), static_cast<unsigned>(phi));
}

std::vector<MultiPoly> weyl_invariant_basis(const RootSystem& rs, unsigned max_degree) {
  const auto weyl = rs.weyl_group();
  const std::size_t r = static_cast<std::size_t>(rs.rank());
  std::vector<MultiPoly> out;
  Exponent e(r, 0);
  std::function<void(std::size_t, unsigned)> visit = [&](std::size_t i, unsigned left) {
    if (i + 1 == r) {
      e[i] = static_cast<std::uint16_t>(left);
      MultiPoly sum(rs.ring());
      const MultiPoly m = MultiPoly::monomial(rs.ring(), e, 1);
      for (const auto& w : weyl) sum += rs.act(w, m);
      if (!sum.is_zero() && std::none_of(out.begin(), out.end(), [&](const MultiPoly& x) { return x == sum; }))
        out.push_back(std::move(sum));
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[i] = static_cast<std::uint16_t>(k);
      visit(i + 1, left - k);
    }
  };
  for (unsigned d = 0; d <= max_degree; ++d) visit(0, d);
  return out;
}

}  // namespace lmo
