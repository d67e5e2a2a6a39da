#pragma once

// Exact arithmetic kernel: rationals, sparse multivariate polynomials over a
// fixed variable ring, truncated Laurent series in hbar, and small dense
// rational matrices.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lmo {

using Rational = mpq_class;

/// num/den in lowest terms; mpq_class(num, den) alone does not reduce.
Rational frac(long num, long den);
std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);
Rational factorial(unsigned n);
Rational binomial(unsigned n, unsigned k);

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Ordered list of variable names. Polynomials only combine within one ring;
/// the zero-variable scalar ring embeds into every ring.
class Ring {
 public:
  static RingPtr make(std::vector<std::string> names);
  static const RingPtr& scalar();

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t require_index(std::string_view name) const;

  bool same_as(const Ring& other) const noexcept;

  /// Common ring of two operands, or throws if they cannot be mixed.
  static const RingPtr& unify(const RingPtr& a, const RingPtr& b);

 private:
  explicit Ring(std::vector<std::string> names) : names_(std::move(names)) {}
  std::vector<std::string> names_;
};

class RingMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Exponent = std::vector<std::uint16_t>;

unsigned total_degree(const Exponent& e) noexcept;

/// Graded-lexicographic order, larger monomials first.
struct GrlexDescending {
  bool operator()(const Exponent& a, const Exponent& b) const noexcept;
};

class MultiPoly {
 public:
  using TermMap = std::map<Exponent, Rational, GrlexDescending>;

  explicit MultiPoly(RingPtr ring);
  MultiPoly(RingPtr ring, const Rational& c);

  static MultiPoly variable(RingPtr ring, std::string_view name);
  static MultiPoly variable(RingPtr ring, std::size_t index);
  static MultiPoly monomial(RingPtr ring, Exponent e, const Rational& c);

  const RingPtr& ring() const noexcept { return ring_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  Rational constant_term() const;
  Rational coefficient(const Exponent& e) const;
  /// Total degree; -1 for the zero polynomial.
  int degree() const noexcept;
  bool is_homogeneous() const noexcept;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& rhs);
  MultiPoly& operator-=(const MultiPoly& rhs);
  MultiPoly& operator*=(const MultiPoly& rhs);
  MultiPoly& operator*=(const Rational& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  friend MultiPoly operator+(MultiPoly a, const Rational& c) { return a += MultiPoly(a.ring_, c); }
  friend MultiPoly operator-(MultiPoly a, const Rational& c) { return a -= MultiPoly(a.ring_, c); }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  MultiPoly pow(unsigned k) const;

  /// Adds c * x^e in place.
  void add_term(const Exponent& e, const Rational& c);

  /// Formal partial derivative.
  MultiPoly diff(std::string_view var) const;
  MultiPoly diff(std::size_t var) const;
  MultiPoly homogeneous_part(unsigned d) const;

  /// Substitutes images[i] for variable i; the result lives in the images' ring.
  MultiPoly substitute(std::span<const MultiPoly> images) const;
  /// Re-expresses the polynomial in a ring that contains all of its variables.
  MultiPoly embed(RingPtr target) const;

  Rational evaluate(std::span<const Rational> point) const;

  std::string to_string() const;

 private:
  RingPtr ring_;
  TermMap terms_;
};

MultiPoly diff(const MultiPoly& p, std::string_view var);
MultiPoly homogeneous_part(const MultiPoly& p, unsigned d);

/// Truncated Laurent series sum_k c_k hbar^k with MultiPoly coefficients.
/// Coefficients with exponent above truncation_order() are unknown (big-O
/// semantics) and never stored.
class HbarSeries {
 public:
  static constexpr int kDefaultOrder = 8;

  HbarSeries(RingPtr ring, int truncation_order);
  static HbarSeries constant(const MultiPoly& c, int truncation_order);
  static HbarSeries constant(const Rational& c, int truncation_order);
  static HbarSeries monomial(const MultiPoly& c, int exponent, int truncation_order);
  static HbarSeries monomial(const Rational& c, int exponent, int truncation_order);

  const RingPtr& ring() const noexcept { return ring_; }
  int truncation_order() const noexcept { return truncation_; }
  const std::map<int, MultiPoly>& coefficients() const noexcept { return coeffs_; }
  MultiPoly coefficient(int k) const;
  /// Lowest exponent with a nonzero coefficient; nullopt for the zero series.
  std::optional<int> min_order() const;
  bool is_zero() const noexcept { return coeffs_.empty(); }

  void set_coefficient(int k, MultiPoly c);

  HbarSeries operator-() const;
  HbarSeries& operator+=(const HbarSeries& rhs);
  HbarSeries& operator-=(const HbarSeries& rhs);
  HbarSeries& operator*=(const Rational& c);
  friend HbarSeries operator+(HbarSeries a, const HbarSeries& b) { return a += b; }
  friend HbarSeries operator-(HbarSeries a, const HbarSeries& b) { return a -= b; }
  friend HbarSeries operator*(const HbarSeries& a, const HbarSeries& b);
  friend HbarSeries operator*(HbarSeries a, const Rational& c) { return a *= c; }
  friend HbarSeries operator*(const Rational& c, HbarSeries a) { return a *= c; }
  friend bool operator==(const HbarSeries& a, const HbarSeries& b);

  HbarSeries mul(const MultiPoly& c) const;
  /// Multiplies by hbar^k.
  HbarSeries shifted(int k) const;
  HbarSeries truncated(int order) const;
  HbarSeries pow(unsigned k) const;
  /// Series quotient; the divisor's lowest coefficient must be a nonzero constant.
  HbarSeries divided_by(const HbarSeries& divisor) const;
  /// Applies a polynomial map to every coefficient.
  template <typename F>
  HbarSeries map_coefficients(RingPtr target, F&& f) const {
    HbarSeries out(std::move(target), truncation_);
    for (const auto& [k, c] : coeffs_) out.set_coefficient(k, f(c));
    return out;
  }

  /// Numeric value of a scalar series at a real hbar.
  double evaluate(double hbar) const;

  /// Canonical rendering in increasing hbar order, e.g. `1 - 1/4*h + 1/32*h^2`.
  std::string to_string() const;

 private:
  RingPtr ring_;
  int truncation_;
  std::map<int, MultiPoly> coeffs_;
};

/// exp(a*hbar) through hbar^order.
HbarSeries exp_hbar(const Rational& a, int order);

/// Dense exact matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::vector<std::vector<Rational>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const;
  Matrix inverse() const;
  Rational determinant() const;
  Rational trace() const;
  bool is_symmetric() const;
  bool is_positive_definite() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Rational& c, const Matrix& a);
  friend bool operator==(const Matrix& a, const Matrix& b);

  std::vector<Rational> apply(std::span<const Rational> v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

bool operator<(const Matrix& a, const Matrix& b);

}  // namespace lmo
