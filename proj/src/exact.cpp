#include "lmo/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace lmo {

Rational frac(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (s.front() == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

Rational binomial(unsigned n, unsigned k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

// ---------------------------------------------------------------- Ring

RingPtr Ring::make(std::vector<std::string> names) {
  std::vector<std::string> sorted = names;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("duplicate variable name in ring");
  return RingPtr(new Ring(std::move(names)));
}

const RingPtr& Ring::scalar() {
  static const RingPtr ring(new Ring({}));
  return ring;
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::size_t Ring::require_index(std::string_view name) const {
  if (auto i = index_of(name)) return *i;
  std::string msg = "unknown variable '" + std::string(name) + "' (ring has:";
  for (const auto& n : names_) msg += " " + n;
  throw std::invalid_argument(msg + ")");
}

bool Ring::same_as(const Ring& other) const noexcept { return this == &other || names_ == other.names_; }

const RingPtr& Ring::unify(const RingPtr& a, const RingPtr& b) {
  if (a == b || b->size() == 0) return a;
  if (a->size() == 0) return b;
  if (a->same_as(*b)) return a;
  auto list = [](const Ring& r) {
    std::string s;
    for (const auto& n : r.names()) s += (s.empty() ? "" : ",") + n;
    return s;
  };
  throw RingMismatch("cannot mix polynomials over rings [" + list(*a) + "] and [" + list(*b) + "]");
}

// ---------------------------------------------------------------- MultiPoly

unsigned total_degree(const Exponent& e) noexcept {
  return std::accumulate(e.begin(), e.end(), 0u);
}

bool GrlexDescending::operator()(const Exponent& a, const Exponent& b) const noexcept {
  const unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

namespace {

const MultiPoly& aligned(const MultiPoly& p, const RingPtr& target, std::optional<MultiPoly>& storage) {
  if (p.ring()->size() == target->size()) return p;
  // only the scalar ring needs re-expression
  storage.emplace(target);
  if (!p.is_zero()) *storage += MultiPoly(target, p.constant_term());
  return *storage;
}

}  // namespace

MultiPoly::MultiPoly(RingPtr ring) : ring_(std::move(ring)) {}

MultiPoly::MultiPoly(RingPtr ring, const Rational& c) : ring_(std::move(ring)) {
  add_term(Exponent(ring_->size(), 0), c);
}

MultiPoly MultiPoly::variable(RingPtr ring, std::string_view name) {
  const std::size_t i = ring->require_index(name);
  return variable(std::move(ring), i);
}

MultiPoly MultiPoly::variable(RingPtr ring, std::size_t index) {
  if (index >= ring->size()) throw std::out_of_range("variable index out of range");
  Exponent e(ring->size(), 0);
  e[index] = 1;
  return monomial(std::move(ring), std::move(e), 1);
}

MultiPoly MultiPoly::monomial(RingPtr ring, Exponent e, const Rational& c) {
  if (e.size() != ring->size()) throw std::invalid_argument("exponent length does not match ring");
  MultiPoly p(std::move(ring));
  p.add_term(e, c);
  return p;
}

void MultiPoly::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != ring_->size()) throw std::invalid_argument("exponent length does not match ring");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (inserted) {
    // callers may hand over non-canonical values such as Rational(2, 4)
    it->second.canonicalize();
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

bool MultiPoly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

Rational MultiPoly::constant_term() const { return coefficient(Exponent(ring_->size(), 0)); }

Rational MultiPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int MultiPoly::degree() const noexcept {
  return terms_.empty() ? -1 : static_cast<int>(total_degree(terms_.begin()->first));
}

bool MultiPoly::is_homogeneous() const noexcept {
  if (terms_.empty()) return true;
  const unsigned d = total_degree(terms_.begin()->first);
  return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return total_degree(t.first) == d; });
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
  const RingPtr ring = Ring::unify(ring_, rhs.ring_);
  std::optional<MultiPoly> s1, s2;
  if (ring != ring_) *this = aligned(*this, ring, s1);
  const MultiPoly& r = aligned(rhs, ring, s2);
  for (const auto& [e, c] : r.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) { return *this += -rhs; }

namespace {

// Products are accumulated over the integers after clearing denominators;
// this avoids a gcd per coefficient operation.
using IntegerTerms = std::vector<std::pair<Exponent, mpz_class>>;
using IntegerAccumulator = std::map<Exponent, mpz_class, GrlexDescending>;

void lcm_denominators(const MultiPoly& p, mpz_class& d) {
  for (const auto& [e, c] : p.terms()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
}

IntegerTerms integer_terms(const MultiPoly& p, std::size_t nvars, const mpz_class& d) {
  IntegerTerms out;
  out.reserve(p.term_count());
  for (const auto& [e, c] : p.terms())
    out.emplace_back(e.size() == nvars ? e : Exponent(nvars, 0), c.get_num() * (d / c.get_den()));
  return out;
}

void accumulate_product(IntegerAccumulator& acc, const IntegerTerms& x, const IntegerTerms& y, std::size_t nvars) {
  Exponent e(nvars);
  for (const auto& [ea, ca] : x) {
    for (const auto& [eb, cb] : y) {
      for (std::size_t i = 0; i < nvars; ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
      auto it = acc.try_emplace(e).first;
      mpz_addmul(it->second.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    }
  }
}

MultiPoly from_accumulator(const RingPtr& ring, IntegerAccumulator& acc, const mpz_class& denom) {
  MultiPoly r(ring);
  for (auto& [e, num] : acc) {
    if (num == 0) continue;
    Rational c(num, denom);
    c.canonicalize();
    r.add_term(e, c);
  }
  return r;
}

}  // namespace

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  const RingPtr& ring = Ring::unify(a.ring_, b.ring_);
  if (a.is_zero() || b.is_zero()) return MultiPoly(ring);
  mpz_class da = 1, db = 1;
  lcm_denominators(a, da);
  lcm_denominators(b, db);
  const std::size_t n = ring->size();
  IntegerAccumulator acc;
  accumulate_product(acc, integer_terms(a, n, da), integer_terms(b, n, db), n);
  return from_accumulator(ring, acc, da * db);
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& rhs) { return *this = *this * rhs; }

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    Rational k = c;
    k.canonicalize();
    for (auto& [e, v] : terms_) v *= k;
  }
  return *this;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  Ring::unify(a.ring_, b.ring_);
  if (a.ring_->size() != b.ring_->size()) return a.is_constant() && b.is_constant() && a.constant_term() == b.constant_term();
  return a.terms_ == b.terms_;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly result(ring_, 1);
  MultiPoly base = *this;
  while (k > 0) {
    if (k & 1u) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

MultiPoly MultiPoly::diff(std::string_view var) const { return diff(ring_->require_index(var)); }

MultiPoly MultiPoly::diff(std::size_t var) const {
  if (var >= ring_->size()) throw std::out_of_range("variable index out of range");
  MultiPoly r(ring_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent d = e;
    --d[var];
    r.terms_.emplace(std::move(d), c * e[var]);
  }
  return r;
}

MultiPoly MultiPoly::homogeneous_part(unsigned d) const {
  MultiPoly r(ring_);
  for (const auto& [e, c] : terms_)
    if (total_degree(e) == d) r.terms_.emplace(e, c);
  return r;
}

MultiPoly MultiPoly::substitute(std::span<const MultiPoly> images) const {
  if (images.size() != ring_->size()) throw std::invalid_argument("substitute: need one image per variable");
  RingPtr target = Ring::scalar();
  for (const auto& img : images) target = Ring::unify(target, img.ring());
  // cache powers per variable
  std::vector<std::vector<MultiPoly>> powers(images.size());
  auto power = [&](std::size_t i, unsigned k) -> const MultiPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.emplace_back(target, 1);
    while (cache.size() <= k) cache.push_back(cache.back() * images[i]);
    return cache[k];
  };
  MultiPoly r(target);
  for (const auto& [e, c] : terms_) {
    MultiPoly term(target, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) term *= power(i, e[i]);
    r += term;
  }
  return r;
}

MultiPoly MultiPoly::embed(RingPtr target) const {
  std::vector<MultiPoly> images;
  images.reserve(ring_->size());
  for (const auto& name : ring_->names()) images.push_back(variable(target, name));
  if (images.empty()) return MultiPoly(target, constant_term());
  return substitute(images);
}

Rational MultiPoly::evaluate(std::span<const Rational> point) const {
  if (point.size() != ring_->size()) throw std::invalid_argument("evaluate: point dimension mismatch");
  Rational total = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
    }
    total += t;
  }
  return total;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool negative = c < 0;
    Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->name(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      os << mag.get_str();
    } else if (mag == 1) {
      os << mono;
    } else {
      os << mag.get_str() << "*" << mono;
    }
  }
  return os.str();
}

MultiPoly diff(const MultiPoly& p, std::string_view var) { return p.diff(var); }
MultiPoly homogeneous_part(const MultiPoly& p, unsigned d) { return p.homogeneous_part(d); }

// ---------------------------------------------------------------- HbarSeries

HbarSeries::HbarSeries(RingPtr ring, int truncation_order) : ring_(std::move(ring)), truncation_(truncation_order) {}

HbarSeries HbarSeries::constant(const MultiPoly& c, int truncation_order) { return monomial(c, 0, truncation_order); }

HbarSeries HbarSeries::constant(const Rational& c, int truncation_order) {
  return monomial(MultiPoly(Ring::scalar(), c), 0, truncation_order);
}

HbarSeries HbarSeries::monomial(const MultiPoly& c, int exponent, int truncation_order) {
  HbarSeries s(c.ring(), truncation_order);
  s.set_coefficient(exponent, c);
  return s;
}

HbarSeries HbarSeries::monomial(const Rational& c, int exponent, int truncation_order) {
  return monomial(MultiPoly(Ring::scalar(), c), exponent, truncation_order);
}

MultiPoly HbarSeries::coefficient(int k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? MultiPoly(ring_) : it->second;
}

std::optional<int> HbarSeries::min_order() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.begin()->first;
}

void HbarSeries::set_coefficient(int k, MultiPoly c) {
  ring_ = Ring::unify(ring_, c.ring());
  if (k > truncation_ || c.is_zero()) {
    coeffs_.erase(k);
    return;
  }
  coeffs_.insert_or_assign(k, std::move(c));
}

HbarSeries HbarSeries::operator-() const {
  HbarSeries r = *this;
  for (auto& [k, c] : r.coeffs_) c = -c;
  return r;
}

HbarSeries& HbarSeries::operator+=(const HbarSeries& rhs) {
  ring_ = Ring::unify(ring_, rhs.ring_);
  truncation_ = std::min(truncation_, rhs.truncation_);
  while (!coeffs_.empty() && coeffs_.rbegin()->first > truncation_) coeffs_.erase(std::prev(coeffs_.end()));
  for (const auto& [k, c] : rhs.coeffs_) {
    if (k > truncation_) break;
    auto it = coeffs_.find(k);
    if (it == coeffs_.end()) {
      coeffs_.emplace(k, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }
  return *this;
}

HbarSeries& HbarSeries::operator-=(const HbarSeries& rhs) { return *this += -rhs; }

HbarSeries& HbarSeries::operator*=(const Rational& c) {
  if (c == 0) coeffs_.clear();
  for (auto& [k, v] : coeffs_) v *= c;  // MultiPoly scaling canonicalizes c
  return *this;
}

namespace {
// Valuation used for precision tracking; a zero series is O(hbar^{N+1}).
int valuation(const HbarSeries& s) { return s.min_order().value_or(s.truncation_order() + 1); }
}  // namespace

HbarSeries operator*(const HbarSeries& a, const HbarSeries& b) {
  const int order = std::min(a.truncation_ + valuation(b), b.truncation_ + valuation(a));
  const RingPtr ring = Ring::unify(a.ring_, b.ring_);
  HbarSeries r(ring, order);
  const std::size_t n = ring->size();
  mpz_class da = 1, db = 1;
  for (const auto& [k, c] : a.coeffs_) lcm_denominators(c, da);
  for (const auto& [k, c] : b.coeffs_) lcm_denominators(c, db);
  std::map<int, IntegerTerms> ia, ib;
  for (const auto& [k, c] : a.coeffs_) ia.emplace(k, integer_terms(c, n, da));
  for (const auto& [k, c] : b.coeffs_) ib.emplace(k, integer_terms(c, n, db));
  std::map<int, IntegerAccumulator> acc;
  for (const auto& [ka, ca] : ia) {
    for (const auto& [kb, cb] : ib) {
      if (ka + kb > order) break;
      accumulate_product(acc[ka + kb], ca, cb, n);
    }
  }
  const mpz_class denom = da * db;
  for (auto& [k, terms] : acc) r.set_coefficient(k, from_accumulator(ring, terms, denom));
  return r;
}

bool operator==(const HbarSeries& a, const HbarSeries& b) {
  const int order = std::min(a.truncation_, b.truncation_);
  auto known = [order](const HbarSeries& s) {
    std::map<int, const MultiPoly*> m;
    for (const auto& [k, c] : s.coeffs_)
      if (k <= order) m.emplace(k, &c);
    return m;
  };
  const auto ma = known(a), mb = known(b);
  if (ma.size() != mb.size()) return false;
  for (auto ia = ma.begin(), ib = mb.begin(); ia != ma.end(); ++ia, ++ib) {
    if (ia->first != ib->first || !(*ia->second == *ib->second)) return false;
  }
  return true;
}

HbarSeries HbarSeries::mul(const MultiPoly& c) const {
  HbarSeries r(Ring::unify(ring_, c.ring()), truncation_);
  for (const auto& [k, v] : coeffs_) r.set_coefficient(k, v * c);
  return r;
}

HbarSeries HbarSeries::shifted(int k) const {
  HbarSeries r(ring_, truncation_ + k);
  for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e + k, c);
  return r;
}

HbarSeries HbarSeries::truncated(int order) const {
  HbarSeries r(ring_, std::min(order, truncation_));
  for (const auto& [k, c] : coeffs_)
    if (k <= r.truncation_) r.coeffs_.emplace(k, c);
  return r;
}

HbarSeries HbarSeries::pow(unsigned k) const {
  HbarSeries result = HbarSeries::constant(MultiPoly(ring_, 1), truncation_);
  for (unsigned i = 0; i < k; ++i) result = result * *this;
  return result;
}

HbarSeries HbarSeries::divided_by(const HbarSeries& divisor) const {
  const auto vb = divisor.min_order();
  if (!vb) throw std::domain_error("division by the zero series");
  const MultiPoly& lead = divisor.coeffs_.begin()->second;
  if (!lead.is_constant()) throw std::domain_error("series division needs a constant leading coefficient");
  const Rational lead_inv = 1 / lead.constant_term();
  const int va = valuation(*this);
  const int vq = va - *vb;
  const int order = std::min(truncation_ - *vb, divisor.truncation_ + vq - *vb);
  HbarSeries q(Ring::unify(ring_, divisor.ring_), order);
  for (int k = vq; k <= order; ++k) {
    MultiPoly acc = coefficient(k + *vb);
    for (const auto& [j, qj] : q.coeffs_) {
      const int idx = k - j + *vb;
      if (idx <= *vb) continue;
      acc -= qj * divisor.coefficient(idx);
    }
    q.set_coefficient(k, acc * lead_inv);
  }
  return q;
}

double HbarSeries::evaluate(double hbar) const {
  double total = 0.0;
  for (const auto& [k, c] : coeffs_) {
    if (!c.is_constant()) throw std::domain_error("numeric evaluation needs scalar coefficients");
    total += c.constant_term().get_d() * std::pow(hbar, k);
  }
  return total;
}

std::string HbarSeries::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : coeffs_) {
    std::string body;
    bool negative = false;
    if (c.term_count() == 1) {
      std::string s = c.to_string();
      negative = s.front() == '-';
      body = negative ? s.substr(1) : s;
    } else {
      body = "(" + c.to_string() + ")";
    }
    std::string power = k == 0 ? "" : (k == 1 ? "h" : "h^" + std::to_string(k));
    if (!power.empty()) {
      if (body == "1") {
        body = power;
      } else {
        body += "*" + power;
      }
    }
    if (out.empty()) {
      out = (negative ? "-" : "") + body;
    } else {
      out += (negative ? " - " : " + ") + body;
    }
  }
  return out;
}

HbarSeries exp_hbar(const Rational& a, int order) {
  if (order < 0) throw std::invalid_argument("exp_hbar: order must be non-negative");
  HbarSeries s(Ring::scalar(), order);
  Rational term = 1;
  for (int k = 0; k <= order; ++k) {
    s.set_coefficient(k, MultiPoly(Ring::scalar(), term));
    term *= a;
    term /= k + 1;
  }
  return s;
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(std::vector<std::vector<Rational>> rows) {
  const std::size_t r = rows.size(), c = r == 0 ? 0 : rows.front().size();
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) {
      m(i, j) = rows[i][j];
      m(i, j).canonicalize();
    }
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = rows_;
  Matrix a = *this, inv = identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) throw std::domain_error("singular matrix");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const Rational p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      const Rational f = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

Rational Matrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = rows_;
  Matrix a = *this;
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a(i, col) == 0) continue;
      const Rational f = a(i, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
    }
  }
  return det;
}

Rational Matrix::trace() const {
  Rational t = 0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

bool Matrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool Matrix::is_positive_definite() const {
  if (!is_symmetric()) return false;
  // Sylvester's criterion on leading principal minors.
  for (std::size_t k = 1; k <= rows_; ++k) {
    Matrix minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = (*this)(i, j);
    if (minor.determinant() <= 0) return false;
  }
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix dimension mismatch");
  Matrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
    }
  return r;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix dimension mismatch");
  Matrix r = a;
  for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
  return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + Rational(-1) * b; }

Matrix operator*(const Rational& c, const Matrix& a) {
  Matrix r = a;
  Rational k = c;
  k.canonicalize();
  for (auto& v : r.data_) v *= k;
  return r;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

bool operator<(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    return std::pair(a.rows(), a.cols()) < std::pair(b.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) < b(i, j)) return true;
      if (b(i, j) < a(i, j)) return false;
    }
  return false;
}

std::vector<Rational> Matrix::apply(std::span<const Rational> v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
  std::vector<Rational> r(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
  return r;
}

}  // namespace lmo
