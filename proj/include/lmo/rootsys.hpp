#pragma once

// Root systems A1, A2, A3, B2, G2 in fundamental-weight coordinates.
// Short roots have squared length 2.

#include <string>
#include <string_view>
#include <vector>

#include "lmo/exact.hpp"

namespace lmo {

using Weight = std::vector<Rational>;

struct RootInvariants {
  int phi_plus = 0;
  int dim_g = 0;
  int rank = 0;
  int dual_coxeter = 0;
  /// Largest off-diagonal |Cartan entry|; 1 for rank one.
  int d_max = 0;
  Rational rho_norm_sq;
};

class RootSystem {
 public:
  /// Throws std::invalid_argument for anything outside {A1, A2, A3, B2, G2}.
  static RootSystem build(char family, int rank);
  /// Accepts "A1", "B2", ...
  static RootSystem from_name(std::string_view name);
  static const std::vector<std::string>& supported();

  const std::string& name() const noexcept { return name_; }
  int rank() const noexcept { return static_cast<int>(cartan_.rows()); }

  /// Ring of weight coordinates n_i (lambda = sum n_i Lambda_i).
  const RingPtr& ring() const noexcept { return ring_; }

  /// (alpha_i, alpha_j).
  const Matrix& root_gram() const noexcept { return root_gram_; }
  /// A_ij = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j).
  const Matrix& cartan() const noexcept { return cartan_; }
  /// (Lambda_i, Lambda_j).
  const Matrix& weight_gram() const noexcept { return weight_gram_; }
  /// (alpha_i^vee, alpha_j^vee); Gram of the coordinate functions n_i.
  const Matrix& coroot_gram() const noexcept { return coroot_gram_; }

  /// Roots in weight coordinates.
  const std::vector<Weight>& simple_roots() const noexcept { return simple_; }
  const std::vector<Weight>& positive_roots() const noexcept { return positive_; }
  Weight rho() const;
  /// Positive root of maximal height.
  const Weight& highest_root() const noexcept { return highest_; }
  /// Coefficients of a weight in the simple-root basis.
  Weight simple_coordinates(const Weight& w) const;

  Rational inner(const Weight& a, const Weight& b) const;
  /// (lambda, beta) as a linear polynomial in the coordinates n_i.
  MultiPoly pairing(const Weight& beta) const;

  RootInvariants invariants() const;

  /// Weyl group as matrices acting on coordinate columns; identity first,
  /// then breadth-first order over simple reflections.
  std::vector<Matrix> weyl_group() const;
  const std::vector<Matrix>& simple_reflections() const noexcept { return reflections_; }
  /// p(w lambda).
  MultiPoly act(const Matrix& w, const MultiPoly& p) const;

  /// D(lambda) = prod_{alpha > 0} (lambda, alpha) / (rho, alpha).
  MultiPoly disc_poly() const;
  /// prod_{alpha > 0} [(lambda, alpha)] / [(rho, alpha)] with
  /// [x] = sinh(x h/2) / sinh(h/2), through hbar^order.
  HbarSeries qdim_series(int order) const;

 private:
  RootSystem(std::string name, Matrix root_gram, std::vector<std::string> vars);

  std::string name_;
  RingPtr ring_;
  Matrix root_gram_, cartan_, cartan_inv_, weight_gram_, coroot_gram_;
  std::vector<Weight> simple_, positive_;
  Weight highest_;
  std::vector<Matrix> reflections_;
};

/// [x] = sinh(x h/2) / sinh(h/2) for a polynomial x, through hbar^order.
HbarSeries quantum_integer(const MultiPoly& x, int order);

}  // namespace lmo
