#pragma once

// sl2 and sl3 in the split basis with the trace form, their Casimirs, the
// adjoint action on S(g), restriction to h*, and sl2 irreps.

#include <string>
#include <vector>

#include "lmo/exact.hpp"
#include "lmo/rootsys.hpp"

namespace lmo {

class LieAlgebra {
 public:
  /// n = 2 or 3.
  static LieAlgebra build_sl(int n);
  /// "sl2" or "sl3".
  static LieAlgebra from_name(std::string_view name);

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<std::string>& basis() const noexcept { return basis_; }
  /// Ring whose variables are the basis elements (coordinates on g*).
  const RingPtr& ring() const noexcept { return ring_; }
  MultiPoly variable(std::size_t i) const { return MultiPoly::variable(ring_, i); }
  std::size_t index_of(std::string_view name) const { return ring_->require_index(name); }

  /// Defining-representation matrices.
  const std::vector<Matrix>& matrices() const noexcept { return matrices_; }
  /// Tr(X_i X_j).
  const Matrix& gram() const noexcept { return gram_; }
  const Matrix& gram_inverse() const noexcept { return gram_inv_; }
  /// c_ij^k with [X_i, X_j] = sum_k c_ij^k X_k.
  const Rational& structure(std::size_t i, std::size_t j, std::size_t k) const {
    return structure_[(i * dim() + j) * dim() + k];
  }
  /// ([X_a, X_b], X_c).
  const Rational& vertex_tensor(std::size_t a, std::size_t b, std::size_t c) const {
    return vertex_[(a * dim() + b) * dim() + c];
  }
  /// [X_i, X_j] as a linear polynomial.
  MultiPoly bracket(std::size_t i, std::size_t j) const;

  const std::vector<std::size_t>& cartan_indices() const noexcept { return cartan_; }
  const RootSystem& root_system() const noexcept { return roots_; }

  /// sum_ij (B^{-1})_ij X_i X_j.
  MultiPoly casimir() const;
  /// Cubic invariant of sl3; throws for other algebras.
  MultiPoly cubic_casimir() const;

  /// Derivation of S(g) extending [X_index, .].
  MultiPoly ad_apply(std::size_t index, const MultiPoly& p) const;
  bool is_invariant(const MultiPoly& p) const;
  /// Restriction to h* in weight coordinates; non-Cartan variables go to 0.
  MultiPoly restrict(const MultiPoly& p) const;

 private:
  LieAlgebra(std::string name, std::vector<std::string> basis, std::vector<Matrix> matrices,
             std::vector<std::size_t> cartan, RootSystem roots);

  std::string name_;
  std::vector<std::string> basis_;
  RingPtr ring_;
  std::vector<Matrix> matrices_;
  Matrix gram_, gram_inv_;
  std::vector<Rational> structure_, vertex_;
  std::vector<std::size_t> cartan_;
  RootSystem roots_;
};

/// sl2 acting on the k-dimensional irrep in the weight basis v_0..v_{k-1}:
/// H v_j = (k-1-2j) v_j, F v_j = v_{j+1}, E v_j = j(k-j) v_{j-1}.
struct IrrepMatrices {
  int k = 0;
  Matrix H, E, F;
};

IrrepMatrices sl2_irrep(int k);

/// Trace over V_k of the symmetrization of p (every ordering of each
/// monomial averaged). p must live in the sl2 ring.
Rational sym_char(const LieAlgebra& sl2, int k, const MultiPoly& p);

}  // namespace lmo
