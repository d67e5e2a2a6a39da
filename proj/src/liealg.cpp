#include "lmo/liealg.hpp"

#include <algorithm>

namespace lmo {

namespace {

Matrix unit(std::size_t n, std::size_t i, std::size_t j) {
  Matrix m(n, n);
  m(i, j) = 1;
  return m;
}

Matrix diag(std::vector<Rational> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

}  // namespace

LieAlgebra LieAlgebra::build_sl(int n) {
  if (n == 2) {
    return LieAlgebra("sl2", {"H", "E", "F"}, {diag({1, -1}), unit(2, 0, 1), unit(2, 1, 0)}, {0},
                      RootSystem::build('A', 1));
  }
  if (n == 3) {
    return LieAlgebra("sl3", {"H1", "H2", "E1", "E2", "E3", "F1", "F2", "F3"},
                      {diag({1, -1, 0}), diag({0, 1, -1}), unit(3, 0, 1), unit(3, 1, 2), unit(3, 2, 0), unit(3, 1, 0),
                       unit(3, 2, 1), unit(3, 0, 2)},
                      {0, 1}, RootSystem::build('A', 2));
  }
  throw std::invalid_argument("unsupported Lie algebra sl" + std::to_string(n) + " (supported: sl2 sl3)");
}

LieAlgebra LieAlgebra::from_name(std::string_view name) {
  if (name == "sl2") return build_sl(2);
  if (name == "sl3") return build_sl(3);
  throw std::invalid_argument("unsupported Lie algebra '" + std::string(name) + "' (supported: sl2 sl3)");
}

LieAlgebra::LieAlgebra(std::string name, std::vector<std::string> basis, std::vector<Matrix> matrices,
                       std::vector<std::size_t> cartan, RootSystem roots)
    : name_(std::move(name)),
      basis_(basis),
      ring_(Ring::make(std::move(basis))),
      matrices_(std::move(matrices)),
      cartan_(std::move(cartan)),
      roots_(std::move(roots)) {
  const std::size_t d = basis_.size();
  gram_ = Matrix(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) gram_(i, j) = (matrices_[i] * matrices_[j]).trace();
  gram_inv_ = gram_.inverse();
  vertex_.assign(d * d * d, 0);
  structure_.assign(d * d * d, 0);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const Matrix comm = matrices_[a] * matrices_[b] - matrices_[b] * matrices_[a];
      for (std::size_t c = 0; c < d; ++c) vertex_[(a * d + b) * d + c] = (comm * matrices_[c]).trace();
      for (std::size_t k = 0; k < d; ++k) {
        Rational s = 0;
        for (std::size_t l = 0; l < d; ++l) s += gram_inv_(k, l) * vertex_[(a * d + b) * d + l];
        structure_[(a * d + b) * d + k] = s;
      }
    }
}

MultiPoly LieAlgebra::bracket(std::size_t i, std::size_t j) const {
  MultiPoly p(ring_);
  for (std::size_t k = 0; k < dim(); ++k) p += structure(i, j, k) * variable(k);
  return p;
}

MultiPoly LieAlgebra::casimir() const {
  MultiPoly c(ring_);
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j)
      if (gram_inv_(i, j) != 0) c += gram_inv_(i, j) * variable(i) * variable(j);
  return c;
}

MultiPoly LieAlgebra::cubic_casimir() const {
  if (name_ != "sl3") throw std::invalid_argument("cubic Casimir is only defined here for sl3, not " + name_);
  auto v = [this](const char* s) { return MultiPoly::variable(ring_, s); };
  const MultiPoly H1 = v("H1"), H2 = v("H2"), H3 = -H1 - H2;
  const MultiPoly E1 = v("E1"), E2 = v("E2"), E3 = v("E3");
  const MultiPoly F1 = v("F1"), F2 = v("F2"), F3 = v("F3");
  return Rational(-1, 9) * (H1 - H2) * (H2 - H3) * (H3 - H1) + 3 * E1 * E2 * E3 + 3 * F1 * F2 * F3 +
         E1 * F1 * (H2 - H3) + E2 * F2 * (H3 - H1) + E3 * F3 * (H1 - H2);
}

MultiPoly LieAlgebra::ad_apply(std::size_t index, const MultiPoly& p) const {
  if (index >= dim()) throw std::out_of_range("basis index out of range");
  Ring::unify(ring_, p.ring());
  const MultiPoly q = p.embed(ring_);
  MultiPoly r(ring_);
  for (std::size_t j = 0; j < dim(); ++j) {
    MultiPoly dq = q.diff(j);
    if (dq.is_zero()) continue;
    r += bracket(index, j) * dq;
  }
  return r;
}

bool LieAlgebra::is_invariant(const MultiPoly& p) const {
  for (std::size_t i = 0; i < dim(); ++i)
    if (!ad_apply(i, p).is_zero()) return false;
  return true;
}

MultiPoly LieAlgebra::restrict(const MultiPoly& p) const {
  Ring::unify(ring_, p.ring());
  std::vector<MultiPoly> images(dim(), MultiPoly(roots_.ring()));
  for (std::size_t c = 0; c < cartan_.size(); ++c) images[cartan_[c]] = MultiPoly::variable(roots_.ring(), c);
  return p.embed(ring_).substitute(images).embed(roots_.ring());
}

IrrepMatrices sl2_irrep(int k) {
  if (k <= 0) throw std::invalid_argument("irrep dimension must be positive");
  const auto n = static_cast<std::size_t>(k);
  IrrepMatrices rep{k, Matrix(n, n), Matrix(n, n), Matrix(n, n)};
  for (int j = 0; j < k; ++j) {
    const auto u = static_cast<std::size_t>(j);
    rep.H(u, u) = k - 1 - 2 * j;
    if (j + 1 < k) rep.F(u + 1, u) = 1;
    if (j > 0) rep.E(u - 1, u) = j * (k - j);
  }
  return rep;
}

Rational sym_char(const LieAlgebra& sl2, int k, const MultiPoly& p) {
  if (sl2.name() != "sl2") throw std::invalid_argument("sym_char needs sl2, got " + sl2.name());
  Ring::unify(sl2.ring(), p.ring());
  const IrrepMatrices rep = sl2_irrep(k);
  const Matrix* mats[3] = {&rep.H, &rep.E, &rep.F};
  const MultiPoly q = p.embed(sl2.ring());
  Rational total = 0;
  for (const auto& [e, c] : q.terms()) {
    std::vector<int> letters;
    for (int v = 0; v < 3; ++v) letters.insert(letters.end(), e[static_cast<std::size_t>(v)], v);
    Rational sum = 0;
    long count = 0;
    do {
      Matrix m = Matrix::identity(static_cast<std::size_t>(k));
      for (int l : letters) m = m * *mats[l];
      sum += m.trace();
      ++count;
    } while (std::next_permutation(letters.begin(), letters.end()));
    total += c * sum / count;
  }
  return total;
}

}  // namespace lmo
