#pragma once

// Monte Carlo Gaussian integration used to cross-check the symbolic
// evaluation operators and the reduction from g* to h*.

#include <array>
#include <cstdint>

#include "lmo/exact.hpp"
#include "lmo/laplace.hpp"
#include "lmo/liealg.hpp"

namespace lmo {

/// Philox4x32-10 counter-based generator. A (seed, stream) pair fixes the
/// key; the 128-bit counter walks through the stream.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  Philox4x32(std::uint64_t seed, std::uint64_t stream);

  static Block generate(Block counter, Key key);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return 0xffffffffu; }
  result_type operator()();

  std::uint64_t next_u64();
  /// Uniform in (0, 1), never 0.
  double uniform();
  /// Standard normal via Box-Muller.
  double normal();

 private:
  Key key_;
  Block counter_{};
  Block buffer_{};
  int used_ = 4;
  bool has_spare_ = false;
  double spare_ = 0;
};

struct McConfig {
  static constexpr std::uint64_t kMinSamples = 10000;
  static constexpr std::uint64_t kBlockSize = 1u << 14;

  std::uint64_t samples = 1000000;
  std::uint64_t seed = 42;
  /// The real value of f*hbar; must be negative.
  double f_hbar = -0.5;
  /// Worker threads; 0 means hardware concurrency. Results do not depend on it.
  unsigned threads = 1;

  /// Throws std::invalid_argument.
  void validate() const;
};

struct McEstimate {
  double estimate = 0;
  double std_error = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  /// |estimate - exact| <= k * std_error.
  bool within(double exact, double k = 4.0) const;
};

inline constexpr int kMcMaxDegree = 10;

/// (4 pi)^{-n/2} int exp(-|x|^2/4) p(x / sqrt(-2 f hbar)) dx over a space
/// with positive-definite Gram, sampled in orthonormal coordinates.
McEstimate gauss_mc(const QuadraticSpace& space, const McConfig& cfg, const MultiPoly& p);
/// Same integral over g* with the trace form, sampled on a real form where
/// the form is positive definite. p is evaluated through the complex change
/// of coordinates and the real part is returned.
McEstimate gauss_mc(const LieAlgebra& L, const McConfig& cfg, const MultiPoly& p);

/// e_op at the real value f*hbar.
double symbolic_expectation(const QuadraticSpace& space, const MultiPoly& p, double f_hbar);

struct RatioEstimate {
  double ratio = 0;
  double std_error = 0;
  McEstimate numerator, denominator;
};

/// int_{g*} e^{-|x|^2/4} p / int_{h*} D^2 e^{-|x|^2/4} P(p). p must be
/// invariant. cfg.f_hbar is not used.
RatioEstimate weyl_ratio(const LieAlgebra& L, const McConfig& cfg, const MultiPoly& p);

/// (4 pi)^{phi+} / c_constant.
double expected_weyl_ratio(const RootSystem& rs);

}  // namespace lmo
