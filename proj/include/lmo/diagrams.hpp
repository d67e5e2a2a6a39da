#pragma once

// Jacobi diagrams as half-edge graphs, their Lie algebra weights, and the
// gluing bracket.

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lmo/exact.hpp"
#include "lmo/laplace.hpp"
#include "lmo/liealg.hpp"

namespace lmo {

/// Univalent vertex. `derivative` marks a dx-leg.
struct Leg {
  std::string label;
  bool derivative = false;
  friend bool operator==(const Leg&, const Leg&) = default;
};

/// Uni-trivalent graph on integer half-edges. Every half-edge belongs to
/// exactly one trivalent vertex or leg and to exactly one edge.
///
/// Text form, whitespace separated:
///   c(3/2) v(0,1,2) v(3,5,4) leg(x,6) dleg(x,7) e(0,3) e(6,7) loops(1)
/// where v lists half-edges in counterclockwise order.
class JacobiDiagram {
 public:
  using Vertex = std::array<int, 3>;

  JacobiDiagram() = default;
  JacobiDiagram(std::vector<Vertex> vertices, std::vector<std::pair<int, Leg>> legs,
                std::vector<std::pair<int, int>> edges, int free_loops = 0, Rational coefficient = 1);

  static JacobiDiagram parse(std::string_view text);
  std::string to_string() const;

  static JacobiDiagram strut(const std::string& label, bool derivative = false);
  static JacobiDiagram circle();
  static JacobiDiagram theta();

  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<std::pair<int, Leg>>& legs() const noexcept { return legs_; }
  const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }
  int free_loops() const noexcept { return free_loops_; }
  const Rational& coefficient() const noexcept { return coefficient_; }

  /// Half the number of uni- and trivalent vertices.
  int degree() const noexcept { return static_cast<int>(vertices_.size() + legs_.size()) / 2; }
  bool is_closed() const noexcept { return legs_.empty(); }
  std::size_t leg_count(const std::string& label, bool derivative) const;

  /// Reverses the cyclic order at vertex i.
  JacobiDiagram flipped(std::size_t i) const;
  JacobiDiagram scaled(const Rational& c) const;
  /// Disjoint union; half-edges of `other` are renumbered.
  JacobiDiagram disjoint_union(const JacobiDiagram& other) const;
  int half_edge_bound() const noexcept;

  friend bool operator==(const JacobiDiagram&, const JacobiDiagram&) = default;

 private:
  void validate() const;

  std::vector<Vertex> vertices_;
  std::vector<std::pair<int, Leg>> legs_;
  std::vector<std::pair<int, int>> edges_;
  int free_loops_ = 0;
  Rational coefficient_ = 1;
};

struct DiagramSum {
  std::vector<std::pair<Rational, JacobiDiagram>> terms;

  DiagramSum() = default;
  DiagramSum(const JacobiDiagram& d) : terms{{Rational(1), d}} {}
  DiagramSum& operator+=(const DiagramSum& rhs);
  friend DiagramSum operator+(DiagramSum a, const DiagramSum& b) { return a += b; }
  friend DiagramSum operator*(const Rational& c, DiagramSum a);
  /// Product is disjoint union.
  friend DiagramSum operator*(const DiagramSum& a, const DiagramSum& b);
};

/// Variables of the weight ring. A single leg label uses L.ring() directly;
/// several labels get variables `<basis>_<label>` in sorted label order.
RingPtr weight_ring(const LieAlgebra& L, const JacobiDiagram& d);

/// Tensor contraction: edges carry B^{-1}, vertices ([X_a,X_b],X_c), legs the
/// basis variable. Throws on dx-legs.
MultiPoly weight(const JacobiDiagram& d, const LieAlgebra& L);
/// Weight of a closed sum.
Rational weight(const DiagramSum& s, const LieAlgebra& L);
/// Weight times hbar^degree, summed; every term must be closed.
HbarSeries graded_weight(const DiagramSum& s, const LieAlgebra& L, int order);

/// Sum over bijections between dx-legs of d1 and x-legs of d2 for every
/// label; mismatched counts give 0.
DiagramSum bracket(const DiagramSum& d1, const DiagramSum& d2);

/// Casimir eigenvalue on the adjoint representation.
Rational adjoint_casimir(const LieAlgebra& L);
/// C_ad * dim g.
Rational theta_weight_expected(const LieAlgebra& L);

inline constexpr std::size_t kWuMaxLegs = 6;

/// Weight of <exp(-dx-strut / (2f)), d> against e_op of the graded weight
/// of d. All legs of d must be x-legs with one label.
Sides<HbarSeries> wu_check(const LieAlgebra& L, int f, const JacobiDiagram& d,
                           int order = HbarSeries::kDefaultOrder);

}  // namespace lmo
