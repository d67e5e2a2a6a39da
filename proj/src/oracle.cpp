#include "lmo/oracle.hpp"

#include <atomic>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace lmo {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox4x32::Philox4x32(std::uint64_t seed, std::uint64_t stream)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {
  counter_[2] = static_cast<std::uint32_t>(stream);
  counter_[3] = static_cast<std::uint32_t>(stream >> 32);
}

Philox4x32::Block Philox4x32::generate(Block ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kW0;
      key[1] += kW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, ctr[0], hi0, lo0);
    mulhilo(kM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

Philox4x32::result_type Philox4x32::operator()() {
  if (used_ == 4) {
    buffer_ = generate(counter_, key_);
    if (++counter_[0] == 0) ++counter_[1];
    used_ = 0;
  }
  return buffer_[static_cast<std::size_t>(used_++)];
}

std::uint64_t Philox4x32::next_u64() {
  const std::uint64_t hi = (*this)();
  return (hi << 32) | (*this)();
}

double Philox4x32::uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

double Philox4x32::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double t = 2.0 * std::numbers::pi * uniform();
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

void McConfig::validate() const {
  if (samples < kMinSamples) throw std::invalid_argument("mc: at least 10000 samples are required");
  if (!(f_hbar < 0)) throw std::invalid_argument("mc: f*hbar must be negative for convergence");
}

bool McEstimate::within(double exact, double k) const { return std::abs(estimate - exact) <= k * std_error; }

namespace {

// Polynomial with double coefficients evaluated from per-variable powers.
class CompiledPoly {
 public:
  explicit CompiledPoly(const MultiPoly& p) : nvars_(p.ring()->size()), degree_(std::max(p.degree(), 0)) {
    for (const auto& [e, c] : p.terms()) terms_.emplace_back(c.get_d(), e);
  }

  template <typename T>
  T operator()(const T* point, std::vector<T>& powers) const {
    const std::size_t stride = static_cast<std::size_t>(degree_) + 1;
    powers.resize(nvars_ * stride);
    for (std::size_t i = 0; i < nvars_; ++i) {
      powers[i * stride] = T(1);
      for (std::size_t k = 1; k < stride; ++k) powers[i * stride + k] = powers[i * stride + k - 1] * point[i];
    }
    T sum(0);
    for (const auto& [c, e] : terms_) {
      T term(c);
      for (std::size_t i = 0; i < nvars_; ++i)
        if (e[i] != 0) term *= powers[i * stride + e[i]];
      sum += term;
    }
    return sum;
  }

 private:
  std::size_t nvars_;
  int degree_;
  std::vector<std::pair<double, Exponent>> terms_;
};

struct BlockStats {
  std::uint64_t n = 0;
  double mean = 0;
  double m2 = 0;
};

// Chan et al. pairwise update.
void merge(BlockStats& a, const BlockStats& b) {
  if (b.n == 0) return;
  const double n = static_cast<double>(a.n + b.n);
  const double delta = b.mean - a.mean;
  a.mean += delta * static_cast<double>(b.n) / n;
  a.m2 += b.m2 + delta * delta * static_cast<double>(a.n) * static_cast<double>(b.n) / n;
  a.n += b.n;
}

// Runs `sample(rng)` cfg.samples times in fixed-size blocks. Block b draws
// from stream (stream << 32 | b), so the result is independent of threads.
template <typename Sampler>
McEstimate run_blocks(const McConfig& cfg, std::uint32_t stream, const Sampler& sample) {
  const std::uint64_t blocks = (cfg.samples + McConfig::kBlockSize - 1) / McConfig::kBlockSize;
  std::vector<BlockStats> stats(blocks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t b = next++; b < blocks; b = next++) {
      Philox4x32 rng(cfg.seed, (static_cast<std::uint64_t>(stream) << 32) | b);
      const std::uint64_t count = std::min(McConfig::kBlockSize, cfg.samples - b * McConfig::kBlockSize);
      BlockStats s;
      for (std::uint64_t i = 0; i < count; ++i) {
        const double x = sample(rng);
        ++s.n;
        const double delta = x - s.mean;
        s.mean += delta / static_cast<double>(s.n);
        s.m2 += delta * (x - s.mean);
      }
      stats[b] = s;
    }
  };
  unsigned threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, blocks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  BlockStats total;
  for (const auto& s : stats) merge(total, s);
  McEstimate out;
  out.estimate = total.mean;
  const double n = static_cast<double>(total.n);
  out.std_error = total.n > 1 ? std::sqrt(total.m2 / (n - 1) / n) : 0.0;
  out.samples = cfg.samples;
  out.seed = cfg.seed;
  return out;
}

// Lower-triangular L with G = L L^T.
std::vector<double> cholesky(const Matrix& g) {
  const std::size_t n = g.rows();
  std::vector<double> l(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double d = g(j, j).get_d();
    for (std::size_t k = 0; k < j; ++k) d -= l[j * n + k] * l[j * n + k];
    l[j * n + j] = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = g(i, j).get_d();
      for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
      l[i * n + j] = s / l[j * n + j];
    }
  }
  return l;
}

void require_degree(const MultiPoly& p) {
  if (p.degree() > kMcMaxDegree) throw std::invalid_argument("mc: polynomial degree above 10");
}

McEstimate real_mc(const QuadraticSpace& space, const McConfig& cfg, const MultiPoly& p, std::uint32_t stream) {
  cfg.validate();
  Ring::unify(space.ring(), p.ring());
  if (!space.gram().is_positive_definite()) throw std::invalid_argument("mc: Gram matrix is not positive definite");
  const std::size_t n = space.ring()->size();
  const std::vector<double> l = cholesky(space.gram());
  const double scale = std::sqrt(-1.0 / cfg.f_hbar);
  const CompiledPoly poly(p.embed(space.ring()));
  return run_blocks(cfg, stream, [&](Philox4x32& rng) {
    thread_local std::vector<double> z, y, powers;
    z.resize(n);
    y.assign(n, 0.0);
    for (auto& v : z) v = rng.normal() * scale;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k <= i; ++k) y[i] += l[i * n + k] * z[k];
    return poly(y.data(), powers);
  });
}

McEstimate coadjoint_mc(const LieAlgebra& L, const McConfig& cfg, const MultiPoly& p, std::uint32_t stream) {
  cfg.validate();
  Ring::unify(L.ring(), p.ring());
  const std::size_t n = L.dim();
  const Matrix& g = L.gram();
  const auto& cartan = L.cartan_indices();
  std::vector<bool> is_cartan(n, false);
  for (auto i : cartan) is_cartan[i] = true;

  // Cartan block: real coordinates with the restricted form.
  Matrix gh(cartan.size(), cartan.size());
  for (std::size_t a = 0; a < cartan.size(); ++a)
    for (std::size_t b = 0; b < cartan.size(); ++b) gh(a, b) = g(cartan[a], cartan[b]);
  const std::vector<double> lh = cholesky(gh);
  // Root pairs (X, Y) with (X, Y) = c > 0 and every other pairing zero:
  // X = (a - i b)/2, Y = (a + i b)/2 with a, b of variance 2c.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<double> pair_sd;
  for (std::size_t i = 0; i < n; ++i) {
    if (is_cartan[i]) continue;
    std::size_t partner = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (g(i, j) == 0) continue;
      if (is_cartan[j] || partner != n || j == i) throw std::logic_error("mc: unexpected trace form layout");
      partner = j;
    }
    if (partner == n || g(i, partner) <= 0) throw std::logic_error("mc: unexpected trace form layout");
    if (i < partner) {
      pairs.emplace_back(i, partner);
      pair_sd.push_back(std::sqrt(2.0 * g(i, partner).get_d()));
    }
  }
  const double scale = std::sqrt(-1.0 / cfg.f_hbar);
  const CompiledPoly poly(p.embed(L.ring()));
  const std::size_t r = cartan.size();
  return run_blocks(cfg, stream, [&](Philox4x32& rng) {
    using C = std::complex<double>;
    thread_local std::vector<double> z;
    thread_local std::vector<C> y, powers;
    z.resize(r);
    y.assign(n, C(0));
    for (auto& v : z) v = rng.normal() * scale;
    for (std::size_t a = 0; a < r; ++a) {
      double s = 0;
      for (std::size_t k = 0; k <= a; ++k) s += lh[a * r + k] * z[k];
      y[cartan[a]] = s;
    }
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const double a = rng.normal() * scale * pair_sd[k];
      const double b = rng.normal() * scale * pair_sd[k];
      y[pairs[k].first] = C(a, -b) / 2.0;
      y[pairs[k].second] = C(a, b) / 2.0;
    }
    return poly(y.data(), powers).real();
  });
}

}  // namespace

McEstimate gauss_mc(const QuadraticSpace& space, const McConfig& cfg, const MultiPoly& p) {
  require_degree(p);
  return real_mc(space, cfg, p, 0);
}

McEstimate gauss_mc(const LieAlgebra& L, const McConfig& cfg, const MultiPoly& p) {
  require_degree(p);
  return coadjoint_mc(L, cfg, p, 0);
}

double symbolic_expectation(const QuadraticSpace& space, const MultiPoly& p, double f_hbar) {
  // e_op depends on f and hbar only through f*hbar.
  return e_op(space, 1, p).evaluate(f_hbar);
}

RatioEstimate weyl_ratio(const LieAlgebra& L, const McConfig& cfg, const MultiPoly& p) {
  if (!L.is_invariant(p)) throw std::invalid_argument("weyl_ratio: input is not ad-invariant");
  require_degree(p);
  McConfig unit = cfg;
  unit.f_hbar = -0.5;
  const RootSystem& rs = L.root_system();
  const MultiPoly disc = rs.disc_poly();
  RatioEstimate out;
  out.numerator = coadjoint_mc(L, unit, p, 0);
  out.denominator = real_mc(QuadraticSpace::cartan(rs), unit, disc * disc * L.restrict(p), 1);
  const double volume = std::pow(4.0 * std::numbers::pi, rs.invariants().phi_plus);
  out.ratio = volume * out.numerator.estimate / out.denominator.estimate;
  const double rn = out.numerator.std_error / out.numerator.estimate;
  const double rd = out.denominator.std_error / out.denominator.estimate;
  out.std_error = std::abs(out.ratio) * std::sqrt(rn * rn + rd * rd);
  return out;
}

double expected_weyl_ratio(const RootSystem& rs) {
  return std::pow(4.0 * std::numbers::pi, rs.invariants().phi_plus) / c_constant(rs).get_d();
}

}  // namespace lmo
