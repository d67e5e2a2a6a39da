#include "lmo/rootsys.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace lmo {

namespace {

constexpr std::size_t kWeylSafetyBound = 1'000'000;

Matrix chain_gram(std::size_t rank) {
  Matrix b(rank, rank);
  for (std::size_t i = 0; i < rank; ++i) {
    b(i, i) = 2;
    if (i + 1 < rank) b(i, i + 1) = b(i + 1, i) = -1;
  }
  return b;
}

Weight row(const Matrix& m, std::size_t i) {
  Weight w(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) w[j] = m(i, j);
  return w;
}

Rational height(const Weight& simple_coords) {
  Rational h = 0;
  for (const auto& c : simple_coords) h += c;
  return h;
}

}  // namespace

const std::vector<std::string>& RootSystem::supported() {
  static const std::vector<std::string> names{"A1", "A2", "A3", "B2", "G2"};
  return names;
}

RootSystem RootSystem::build(char family, int rank) {
  const std::string name = std::string(1, family) + std::to_string(rank);
  if (family == 'A' && rank == 1) return RootSystem(name, chain_gram(1), {"n"});
  if (family == 'A' && rank == 2) return RootSystem(name, chain_gram(2), {"n", "m"});
  if (family == 'A' && rank == 3) return RootSystem(name, chain_gram(3), {"n1", "n2", "n3"});
  if (family == 'B' && rank == 2) return RootSystem(name, Matrix::from_rows({{4, -2}, {-2, 2}}), {"n", "m"});
  if (family == 'G' && rank == 2) return RootSystem(name, Matrix::from_rows({{2, -3}, {-3, 6}}), {"n", "m"});
  std::string msg = "unsupported root system " + name + " (supported:";
  for (const auto& s : supported()) msg += " " + s;
  throw std::invalid_argument(msg + ")");
}

RootSystem RootSystem::from_name(std::string_view name) {
  if (name.size() != 2 || name[1] < '0' || name[1] > '9') {
    std::string msg = "unsupported root system '" + std::string(name) + "' (supported:";
    for (const auto& s : supported()) msg += " " + s;
    throw std::invalid_argument(msg + ")");
  }
  return build(name[0], name[1] - '0');
}

RootSystem::RootSystem(std::string name, Matrix root_gram, std::vector<std::string> vars)
    : name_(std::move(name)), ring_(Ring::make(std::move(vars))), root_gram_(std::move(root_gram)) {
  const std::size_t r = root_gram_.rows();
  cartan_ = Matrix(r, r);
  coroot_gram_ = Matrix(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      cartan_(i, j) = 2 * root_gram_(i, j) / root_gram_(j, j);
      coroot_gram_(i, j) = 4 * root_gram_(i, j) / (root_gram_(i, i) * root_gram_(j, j));
    }
  cartan_inv_ = cartan_.inverse();
  weight_gram_ = cartan_inv_ * root_gram_ * cartan_inv_.transpose();

  for (std::size_t i = 0; i < r; ++i) simple_.push_back(row(cartan_, i));

  // Close the simple roots under simple reflections.
  std::set<Weight> seen(simple_.begin(), simple_.end());
  std::deque<Weight> queue(simple_.begin(), simple_.end());
  std::vector<Weight> all = simple_;
  while (!queue.empty()) {
    Weight beta = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < r; ++i) {
      Weight image = beta;
      for (std::size_t j = 0; j < r; ++j) image[j] -= beta[i] * simple_[i][j];
      if (seen.insert(image).second) {
        queue.push_back(image);
        all.push_back(image);
      }
    }
  }
  for (const auto& beta : all) {
    const Weight c = simple_coordinates(beta);
    if (std::all_of(c.begin(), c.end(), [](const Rational& x) { return x >= 0; })) positive_.push_back(beta);
  }
  std::stable_sort(positive_.begin(), positive_.end(), [this](const Weight& a, const Weight& b) {
    return height(simple_coordinates(a)) < height(simple_coordinates(b));
  });
  highest_ = positive_.back();

  for (std::size_t i = 0; i < r; ++i) {
    Matrix m = Matrix::identity(r);
    for (std::size_t j = 0; j < r; ++j) m(j, i) -= cartan_(i, j);
    reflections_.push_back(std::move(m));
  }
}

Weight RootSystem::rho() const { return Weight(static_cast<std::size_t>(rank()), Rational(1)); }

Weight RootSystem::simple_coordinates(const Weight& w) const {
  const std::size_t r = static_cast<std::size_t>(rank());
  Weight c(r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < r; ++i) c[j] += w[i] * cartan_inv_(i, j);
  return c;
}

Rational RootSystem::inner(const Weight& a, const Weight& b) const {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * weight_gram_(i, j) * b[j];
  return s;
}

MultiPoly RootSystem::pairing(const Weight& beta) const {
  MultiPoly p(ring_);
  for (std::size_t i = 0; i < beta.size(); ++i) {
    Rational c = 0;
    for (std::size_t j = 0; j < beta.size(); ++j) c += weight_gram_(i, j) * beta[j];
    p += c * MultiPoly::variable(ring_, i);
  }
  return p;
}

RootInvariants RootSystem::invariants() const {
  RootInvariants inv;
  inv.rank = rank();
  inv.phi_plus = static_cast<int>(positive_.size());
  inv.dim_g = 2 * inv.phi_plus + inv.rank;
  const Weight rh = rho();
  inv.rho_norm_sq = inner(rh, rh);
  const Rational hv = 1 + 2 * inner(rh, highest_) / inner(highest_, highest_);
  if (hv.get_den() != 1) throw std::logic_error("non-integral dual Coxeter number");
  inv.dual_coxeter = static_cast<int>(hv.get_num().get_si());
  inv.d_max = 1;
  for (std::size_t i = 0; i < cartan_.rows(); ++i)
    for (std::size_t j = 0; j < cartan_.cols(); ++j)
      if (i != j) inv.d_max = std::max(inv.d_max, static_cast<int>(Rational(abs(cartan_(i, j))).get_num().get_si()));
  return inv;
}

std::vector<Matrix> RootSystem::weyl_group() const {
  const std::size_t r = static_cast<std::size_t>(rank());
  std::vector<Matrix> elements{Matrix::identity(r)};
  std::set<Matrix> seen{elements.front()};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& s : reflections_) {
      Matrix w = s * elements[head];
      if (seen.insert(w).second) {
        if (elements.size() >= kWeylSafetyBound) throw std::runtime_error("Weyl group closure exceeded safety bound");
        elements.push_back(std::move(w));
      }
    }
  }
  return elements;
}

MultiPoly RootSystem::act(const Matrix& w, const MultiPoly& p) const {
  const std::size_t r = static_cast<std::size_t>(rank());
  std::vector<MultiPoly> images;
  images.reserve(r);
  for (std::size_t j = 0; j < r; ++j) {
    MultiPoly img(ring_);
    for (std::size_t k = 0; k < r; ++k) img += w(j, k) * MultiPoly::variable(ring_, k);
    images.push_back(std::move(img));
  }
  return p.embed(ring_).substitute(images);
}

MultiPoly RootSystem::disc_poly() const {
  MultiPoly d(ring_, 1);
  const Weight rh = rho();
  for (const auto& alpha : positive_) d *= pairing(alpha) * (1 / inner(rh, alpha));
  return d;
}

HbarSeries quantum_integer(const MultiPoly& x, int order) {
  // sinh(y h/2) = sum_k (y/2)^{2k+1} h^{2k+1} / (2k+1)!
  auto sinh_half = [order](const MultiPoly& y) {
    HbarSeries s(y.ring(), order + 1);
    const MultiPoly half = y * Rational(1, 2);
    MultiPoly power = half;
    for (int k = 1; k <= order + 1; k += 2) {
      s.set_coefficient(k, power * (1 / factorial(static_cast<unsigned>(k))));
      power *= half * half;
    }
    return s;
  };
  return sinh_half(x).divided_by(sinh_half(MultiPoly(Ring::scalar(), 1)));
}

HbarSeries RootSystem::qdim_series(int order) const {
  if (order < 0) throw std::invalid_argument("qdim_series: order must be non-negative");
  HbarSeries num = HbarSeries::constant(MultiPoly(ring_, 1), order);
  HbarSeries den = HbarSeries::constant(Rational(1), order);
  const Weight rh = rho();
  for (const auto& alpha : positive_) {
    num = num * quantum_integer(pairing(alpha), order);
    den = den * quantum_integer(MultiPoly(Ring::scalar(), inner(rh, alpha)), order);
  }
  return num.divided_by(den);
}

}  // namespace lmo
