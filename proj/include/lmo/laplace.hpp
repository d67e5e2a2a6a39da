#pragma once

// Laplacians on quadratic spaces and the Gaussian evaluation operators built
// from them, together with the identities relating g* to h*.

#include <optional>
#include <span>
#include <vector>

#include "lmo/exact.hpp"
#include "lmo/liealg.hpp"
#include "lmo/rootsys.hpp"

namespace lmo {

/// Coordinate functions y_i with Gram matrix G_ij = (b_i, b_j); the
/// Laplacian is sum_ij G_ij d_i d_j, so that Delta(y_i y_j) / 2 = G_ij.
class QuadraticSpace {
 public:
  QuadraticSpace(RingPtr ring, Matrix gram);
  /// g* with basis coordinates and the trace form.
  static QuadraticSpace coadjoint(const LieAlgebra& L);
  /// h* with weight coordinates n_i and the coroot Gram.
  static QuadraticSpace cartan(const RootSystem& rs);

  const RingPtr& ring() const noexcept { return ring_; }
  const Matrix& gram() const noexcept { return gram_; }

  MultiPoly laplacian(const MultiPoly& p) const;
  MultiPoly laplacian_power(const MultiPoly& p, unsigned d) const;

 private:
  RingPtr ring_;
  Matrix gram_;
};

/// Throws std::invalid_argument for f = 0.
void require_framing(int f);

/// exp(-Delta / (2 f hbar)) p evaluated at 0. The result is a Laurent
/// polynomial in hbar^-1 labelled with truncation order `order`.
HbarSeries e_op(const QuadraticSpace& space, int f, const MultiPoly& p, int order = HbarSeries::kDefaultOrder);
/// Coefficientwise extension. The caller guarantees that the input is known
/// to enough orders for the result to be exact through hbar^order.
HbarSeries e_op(const QuadraticSpace& space, int f, const HbarSeries& s, int order);
/// Product of e_op over tensor factors.
HbarSeries e_op_multi(const QuadraticSpace& space, std::span<const int> framings, std::span<const MultiPoly> factors,
                      int order = HbarSeries::kDefaultOrder);

/// q^{-f|rho|^2/2} times the Gaussian moment of p on h*, computed by
/// summing Wick pairings of the coordinate functions.
HbarSeries o_op(const RootSystem& rs, int f, const MultiPoly& p, int order = HbarSeries::kDefaultOrder);

/// Delta^{phi+}(D^2) / phi+!.
Rational c_constant(const RootSystem& rs);

template <typename T>
struct Sides {
  T lhs;
  T rhs;
  bool equal() const { return lhs == rhs; }
};

/// D * P(Delta_g p) and Delta_h(D * P(p)); p must be invariant.
Sides<MultiPoly> check_hcrf(const LieAlgebra& L, const MultiPoly& p);
/// (c/d!) Delta_g^d(p) and Delta_h^{d+phi+}(D^2 P(p)) / (d+phi+)! for p
/// invariant and homogeneous of degree 2d.
Sides<Rational> check_dhd(const LieAlgebra& L, const MultiPoly& p);
/// e_op over g* against (-2 f hbar)^{phi+} c^{-1} e_op over h* of D^2 P(p).
/// `constant` replaces c when set (used for negative controls).
Sides<HbarSeries> reduce_identity(const LieAlgebra& L, int f, const MultiPoly& p,
                                  int order = HbarSeries::kDefaultOrder,
                                  std::optional<Rational> constant = std::nullopt);
/// Factorwise product of reduce_identity over a pure tensor of invariants.
Sides<HbarSeries> reduce_identity_multi(const LieAlgebra& L, std::span<const int> framings,
                                        std::span<const MultiPoly> factors, int order = HbarSeries::kDefaultOrder);
/// o_op against exp(-f|rho|^2 hbar/2) e_op over h*.
Sides<HbarSeries> o_eq_e_check(const RootSystem& rs, int f, const MultiPoly& p, int order = HbarSeries::kDefaultOrder);

/// exp(-f|rho|^2 hbar/2) e_op_h(f, qdim^2), exact through hbar^order.
HbarSeries i2_trivial(const RootSystem& rs, int f, int order = HbarSeries::kDefaultOrder);
/// i2_trivial(p) / i2_trivial(sign p): the perturbative invariant of L(p,1).
/// Its constant term is 1/|p|^{phi+}.
HbarSeries lens_tau(const RootSystem& rs, int p, int order = HbarSeries::kDefaultOrder);
/// |p|^{phi+} lens_tau, the normalization whose constant term is 1.
HbarSeries lens_tau_normalized(const RootSystem& rs, int p, int order = HbarSeries::kDefaultOrder);

/// Weyl orbit sums of all monomials of degree <= max_degree (nonzero, distinct).
std::vector<MultiPoly> weyl_invariant_basis(const RootSystem& rs, unsigned max_degree);

}  // namespace lmo
