#include "lmo/diagrams.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lmo {

JacobiDiagram::JacobiDiagram(std::vector<Vertex> vertices, std::vector<std::pair<int, Leg>> legs,
                             std::vector<std::pair<int, int>> edges, int free_loops, Rational coefficient)
    : vertices_(std::move(vertices)),
      legs_(std::move(legs)),
      edges_(std::move(edges)),
      free_loops_(free_loops),
      coefficient_(std::move(coefficient)) {
  coefficient_.canonicalize();
  validate();
}

void JacobiDiagram::validate() const {
  if (free_loops_ < 0) throw std::invalid_argument("diagram: negative loop count");
  std::set<int> owned;
  auto own = [&](int h) {
    if (h < 0) throw std::invalid_argument("diagram: negative half-edge id");
    if (!owned.insert(h).second) throw std::invalid_argument("diagram: half-edge " + std::to_string(h) + " used twice");
  };
  for (const auto& v : vertices_)
    for (int h : v) own(h);
  for (const auto& [h, leg] : legs_) {
    if (leg.label.empty()) throw std::invalid_argument("diagram: unlabeled leg");
    own(h);
  }
  std::set<int> paired;
  for (const auto& [a, b] : edges_) {
    for (int h : {a, b}) {
      if (!owned.contains(h)) throw std::invalid_argument("diagram: edge uses unknown half-edge " + std::to_string(h));
      if (!paired.insert(h).second)
        throw std::invalid_argument("diagram: half-edge " + std::to_string(h) + " on two edges");
    }
  }
  if (paired.size() != owned.size()) throw std::invalid_argument("diagram: unpaired half-edge");
}

namespace {

bool is_label(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

int parse_int(std::string_view s) {
  std::size_t used = 0;
  const std::string text(s);
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw std::invalid_argument("diagram: bad integer '" + text + "'");
  return v;
}

std::vector<std::string_view> split_args(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',') {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

JacobiDiagram JacobiDiagram::parse(std::string_view text) {
  std::vector<Vertex> vertices;
  std::vector<std::pair<int, Leg>> legs;
  std::vector<std::pair<int, int>> edges;
  int loops = 0;
  Rational coefficient = 1;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    const auto open = token.find('(');
    if (open == std::string::npos || token.back() != ')')
      throw std::invalid_argument("diagram: malformed token '" + token + "'");
    const std::string_view name = std::string_view(token).substr(0, open);
    const auto args = split_args(std::string_view(token).substr(open + 1, token.size() - open - 2));
    auto arity = [&](std::size_t n) {
      if (args.size() != n) throw std::invalid_argument("diagram: wrong arity in '" + token + "'");
    };
    if (name == "v") {
      arity(3);
      vertices.push_back({parse_int(args[0]), parse_int(args[1]), parse_int(args[2])});
    } else if (name == "leg" || name == "dleg") {
      arity(2);
      if (!is_label(args[0])) throw std::invalid_argument("diagram: bad leg label in '" + token + "'");
      legs.push_back({parse_int(args[1]), Leg{std::string(args[0]), name == "dleg"}});
    } else if (name == "e") {
      arity(2);
      edges.emplace_back(parse_int(args[0]), parse_int(args[1]));
    } else if (name == "loops") {
      arity(1);
      loops += parse_int(args[0]);
    } else if (name == "c") {
      arity(1);
      coefficient *= parse_rational(args[0]);
    } else {
      throw std::invalid_argument("diagram: unknown token '" + token + "'");
    }
  }
  return JacobiDiagram(std::move(vertices), std::move(legs), std::move(edges), loops, coefficient);
}

std::string JacobiDiagram::to_string() const {
  std::vector<std::string> parts;
  if (coefficient_ != 1) parts.push_back("c(" + lmo::to_string(coefficient_) + ")");
  for (const auto& v : vertices_)
    parts.push_back("v(" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," + std::to_string(v[2]) + ")");
  for (const auto& [h, leg] : legs_)
    parts.push_back(std::string(leg.derivative ? "dleg(" : "leg(") + leg.label + "," + std::to_string(h) + ")");
  for (const auto& [a, b] : edges_) parts.push_back("e(" + std::to_string(a) + "," + std::to_string(b) + ")");
  if (free_loops_ > 0) parts.push_back("loops(" + std::to_string(free_loops_) + ")");
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : " ") + p;
  return out;
}

JacobiDiagram JacobiDiagram::strut(const std::string& label, bool derivative) {
  return JacobiDiagram({}, {{0, Leg{label, derivative}}, {1, Leg{label, derivative}}}, {{0, 1}});
}

JacobiDiagram JacobiDiagram::circle() { return JacobiDiagram({}, {}, {}, 1); }

JacobiDiagram JacobiDiagram::theta() { return JacobiDiagram({{0, 1, 2}, {3, 5, 4}}, {}, {{0, 3}, {1, 4}, {2, 5}}); }

std::size_t JacobiDiagram::leg_count(const std::string& label, bool derivative) const {
  return static_cast<std::size_t>(std::count_if(legs_.begin(), legs_.end(), [&](const auto& l) {
    return l.second.label == label && l.second.derivative == derivative;
  }));
}

JacobiDiagram JacobiDiagram::flipped(std::size_t i) const {
  JacobiDiagram out = *this;
  std::swap(out.vertices_.at(i)[1], out.vertices_.at(i)[2]);
  return out;
}

JacobiDiagram JacobiDiagram::scaled(const Rational& c) const {
  JacobiDiagram out = *this;
  out.coefficient_ *= c;
  return out;
}

int JacobiDiagram::half_edge_bound() const noexcept {
  int m = -1;
  for (const auto& [a, b] : edges_) m = std::max({m, a, b});
  return m + 1;
}

JacobiDiagram JacobiDiagram::disjoint_union(const JacobiDiagram& other) const {
  const int shift = half_edge_bound();
  JacobiDiagram out = *this;
  for (auto v : other.vertices_) {
    for (int& h : v) h += shift;
    out.vertices_.push_back(v);
  }
  for (const auto& [h, leg] : other.legs_) out.legs_.emplace_back(h + shift, leg);
  for (const auto& [a, b] : other.edges_) out.edges_.emplace_back(a + shift, b + shift);
  out.free_loops_ += other.free_loops_;
  out.coefficient_ *= other.coefficient_;
  return out;
}

DiagramSum& DiagramSum::operator+=(const DiagramSum& rhs) {
  terms.insert(terms.end(), rhs.terms.begin(), rhs.terms.end());
  return *this;
}

DiagramSum operator*(const Rational& c, DiagramSum a) {
  for (auto& [k, d] : a.terms) k *= c;
  return a;
}

DiagramSum operator*(const DiagramSum& a, const DiagramSum& b) {
  DiagramSum out;
  for (const auto& [ca, da] : a.terms)
    for (const auto& [cb, db] : b.terms) out.terms.emplace_back(ca * cb, da.disjoint_union(db));
  return out;
}

namespace {

std::vector<std::string> leg_labels(const JacobiDiagram& d) {
  std::set<std::string> labels;
  for (const auto& [h, leg] : d.legs()) labels.insert(leg.label);
  return {labels.begin(), labels.end()};
}

}  // namespace

RingPtr weight_ring(const LieAlgebra& L, const JacobiDiagram& d) {
  const auto labels = leg_labels(d);
  if (labels.empty()) return Ring::scalar();
  if (labels.size() == 1) return L.ring();
  std::vector<std::string> names;
  for (const auto& label : labels)
    for (const auto& b : L.basis()) names.push_back(b + "_" + label);
  return Ring::make(std::move(names));
}

namespace {

// Sparse views of the contraction data.
struct ContractionTables {
  std::size_t dim = 0;
  std::vector<std::vector<std::size_t>> inverse_row;  // nonzero columns of B^{-1}
  // slot_candidates[s][x * dim + y]: indices at slot s with a nonzero vertex
  // tensor, given x at slot s+1 and y at slot s+2 (mod 3).
  std::array<std::vector<std::vector<std::size_t>>, 3> slot_candidates;

  explicit ContractionTables(const LieAlgebra& L) : dim(L.dim()), inverse_row(dim) {
    const Matrix& binv = L.gram_inverse();
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < dim; ++b)
        if (binv(a, b) != 0) inverse_row[a].push_back(b);
    for (auto& t : slot_candidates) t.assign(dim * dim, {});
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < dim; ++b)
        for (std::size_t c = 0; c < dim; ++c) {
          if (L.vertex_tensor(a, b, c) == 0) continue;
          slot_candidates[0][b * dim + c].push_back(a);
          slot_candidates[1][c * dim + a].push_back(b);
          slot_candidates[2][a * dim + b].push_back(c);
        }
  }
};

}  // namespace

MultiPoly weight(const JacobiDiagram& d, const LieAlgebra& L) {
  for (const auto& [h, leg] : d.legs())
    if (leg.derivative) throw std::invalid_argument("weight: dx-legs are only legal inside a bracket");
  const RingPtr ring = weight_ring(L, d);
  const auto labels = leg_labels(d);
  const std::size_t dim = L.dim();
  const ContractionTables tables(L);
  const Matrix& binv = L.gram_inverse();

  const int bound = d.half_edge_bound();
  std::vector<int> partner(static_cast<std::size_t>(bound), -1);
  for (const auto& [a, b] : d.edges()) {
    partner[static_cast<std::size_t>(a)] = b;
    partner[static_cast<std::size_t>(b)] = a;
  }
  // owner >= 0: vertex index; owner < 0: leg -(owner + 1).
  std::vector<int> owner(static_cast<std::size_t>(bound), 0), slot(static_cast<std::size_t>(bound), 0);
  for (std::size_t v = 0; v < d.vertices().size(); ++v)
    for (int s = 0; s < 3; ++s) {
      const auto h = static_cast<std::size_t>(d.vertices()[v][static_cast<std::size_t>(s)]);
      owner[h] = static_cast<int>(v);
      slot[h] = s;
    }
  std::vector<std::size_t> leg_offset;
  for (std::size_t j = 0; j < d.legs().size(); ++j) {
    const auto& [h, leg] = d.legs()[j];
    owner[static_cast<std::size_t>(h)] = -static_cast<int>(j) - 1;
    const auto pos = static_cast<std::size_t>(std::find(labels.begin(), labels.end(), leg.label) - labels.begin());
    leg_offset.push_back(labels.size() == 1 ? 0 : pos * dim);
  }

  // Assignment order: walk along edges so partners and vertex-mates follow
  // closely and constraints prune early.
  std::vector<int> order;
  std::vector<bool> queued(static_cast<std::size_t>(bound), false);
  std::function<void(int)> enqueue = [&](int h) {
    if (queued[static_cast<std::size_t>(h)]) return;
    queued[static_cast<std::size_t>(h)] = true;
    order.push_back(h);
    const int p = partner[static_cast<std::size_t>(h)];
    if (!queued[static_cast<std::size_t>(p)]) {
      queued[static_cast<std::size_t>(p)] = true;
      order.push_back(p);
      const int o = owner[static_cast<std::size_t>(p)];
      if (o >= 0)
        for (int mate : d.vertices()[static_cast<std::size_t>(o)]) enqueue(mate);
    }
  };
  for (const auto& v : d.vertices())
    for (int h : v) enqueue(h);
  for (const auto& [h, leg] : d.legs()) enqueue(h);

  std::vector<std::size_t> index(static_cast<std::size_t>(bound), 0);
  std::vector<bool> assigned(static_cast<std::size_t>(bound), false);
  std::vector<int> vertex_filled(d.vertices().size(), 0);
  std::map<Exponent, Rational, GrlexDescending> acc;
  std::vector<std::size_t> all(dim);
  std::iota(all.begin(), all.end(), 0);

  std::function<void(std::size_t, const Rational&)> visit = [&](std::size_t pos, const Rational& value) {
    if (pos == order.size()) {
      Exponent e(ring->size(), 0);
      for (std::size_t j = 0; j < d.legs().size(); ++j)
        ++e[leg_offset[j] + index[static_cast<std::size_t>(d.legs()[j].first)]];
      acc[e] += value;
      return;
    }
    const auto h = static_cast<std::size_t>(order[pos]);
    const int p = partner[h];
    const bool partner_set = assigned[static_cast<std::size_t>(p)];
    const int o = owner[h];
    const bool completes = o >= 0 && vertex_filled[static_cast<std::size_t>(o)] == 2;
    const std::vector<std::size_t>* candidates = &all;
    if (completes) {
      const auto& v = d.vertices()[static_cast<std::size_t>(o)];
      // slot 0 is keyed by (b,c), slot 1 by (c,a), slot 2 by (a,b)
      const auto s = static_cast<std::size_t>(slot[h]);
      const std::size_t x = index[static_cast<std::size_t>(v[(s + 1) % 3])];
      const std::size_t y = index[static_cast<std::size_t>(v[(s + 2) % 3])];
      candidates = &tables.slot_candidates[s][x * dim + y];
    } else if (partner_set) {
      candidates = &tables.inverse_row[index[static_cast<std::size_t>(p)]];
    }
    for (std::size_t a : *candidates) {
      Rational next = value;
      if (partner_set) {
        const Rational& g = binv(a, index[static_cast<std::size_t>(p)]);
        if (g == 0) continue;
        next *= g;
      }
      index[h] = a;
      assigned[h] = true;
      if (o >= 0) ++vertex_filled[static_cast<std::size_t>(o)];
      if (completes) {
        const auto& v = d.vertices()[static_cast<std::size_t>(o)];
        next *= L.vertex_tensor(index[static_cast<std::size_t>(v[0])], index[static_cast<std::size_t>(v[1])],
                                index[static_cast<std::size_t>(v[2])]);
      }
      visit(pos + 1, next);
      if (o >= 0) --vertex_filled[static_cast<std::size_t>(o)];
      assigned[h] = false;
    }
  };

  Rational scale = d.coefficient();
  for (int k = 0; k < d.free_loops(); ++k) scale *= static_cast<unsigned long>(dim);
  visit(0, scale);
  MultiPoly out(ring);
  for (const auto& [e, c] : acc)
    if (c != 0) out.add_term(e, c);
  return out;
}

Rational weight(const DiagramSum& s, const LieAlgebra& L) {
  Rational total = 0;
  for (const auto& [c, d] : s.terms) {
    if (!d.is_closed()) throw std::invalid_argument("weight: sum contains a diagram with legs");
    total += c * weight(d, L).constant_term();
  }
  return total;
}

HbarSeries graded_weight(const DiagramSum& s, const LieAlgebra& L, int order) {
  HbarSeries out(Ring::scalar(), order);
  std::map<int, Rational> by_degree;
  for (const auto& [c, d] : s.terms) {
    if (!d.is_closed()) throw std::invalid_argument("graded_weight: sum contains a diagram with legs");
    if (d.degree() > order) continue;
    by_degree[d.degree()] += c * weight(d, L).constant_term();
  }
  for (const auto& [k, v] : by_degree)
    if (v != 0) out.set_coefficient(k, MultiPoly(Ring::scalar(), v));
  return out;
}

namespace {

// Joins matched leg pairs of `u` into edges and renumbers half-edges densely.
JacobiDiagram glue(const JacobiDiagram& u, const std::map<int, int>& matched) {
  const int bound = u.half_edge_bound();
  std::vector<int> partner(static_cast<std::size_t>(bound), -1);
  for (const auto& [a, b] : u.edges()) {
    partner[static_cast<std::size_t>(a)] = b;
    partner[static_cast<std::size_t>(b)] = a;
  }
  std::vector<bool> done(static_cast<std::size_t>(bound), false);
  std::vector<std::pair<int, int>> edges;
  for (const auto& v : u.vertices())
    for (int h : v) {
      if (done[static_cast<std::size_t>(h)]) continue;
      int x = partner[static_cast<std::size_t>(h)];
      while (matched.contains(x)) {
        done[static_cast<std::size_t>(x)] = true;
        const int y = matched.at(x);
        done[static_cast<std::size_t>(y)] = true;
        x = partner[static_cast<std::size_t>(y)];
      }
      done[static_cast<std::size_t>(h)] = true;
      done[static_cast<std::size_t>(x)] = true;
      edges.emplace_back(h, x);
    }
  int loops = u.free_loops();
  for (const auto& [start, other] : matched) {
    if (done[static_cast<std::size_t>(start)]) continue;
    int x = start;
    do {
      done[static_cast<std::size_t>(x)] = true;
      const int y = matched.at(x);
      done[static_cast<std::size_t>(y)] = true;
      x = partner[static_cast<std::size_t>(y)];
    } while (x != start);
    ++loops;
  }
  std::map<int, int> renumber;
  auto id = [&](int h) { return renumber.try_emplace(h, static_cast<int>(renumber.size())).first->second; };
  std::vector<JacobiDiagram::Vertex> vertices;
  for (const auto& v : u.vertices()) vertices.push_back({id(v[0]), id(v[1]), id(v[2])});
  for (auto& [a, b] : edges) {
    a = id(a);
    b = id(b);
  }
  return JacobiDiagram(std::move(vertices), {}, std::move(edges), loops, u.coefficient());
}

void glue_all(const JacobiDiagram& d1, const JacobiDiagram& d2, const Rational& c, DiagramSum& out) {
  for (const auto& [h, leg] : d1.legs())
    if (!leg.derivative) throw std::invalid_argument("bracket: first argument must carry dx-legs only");
  for (const auto& [h, leg] : d2.legs())
    if (leg.derivative) throw std::invalid_argument("bracket: second argument must carry x-legs only");
  std::set<std::string> labels;
  for (const auto& [h, leg] : d1.legs()) labels.insert(leg.label);
  for (const auto& [h, leg] : d2.legs()) labels.insert(leg.label);
  for (const auto& label : labels)
    if (d1.leg_count(label, true) != d2.leg_count(label, false)) return;

  const JacobiDiagram u = d1.disjoint_union(d2);
  const int shift = d1.half_edge_bound();
  struct Group {
    std::vector<int> dx, x;
  };
  std::vector<Group> groups;
  for (const auto& label : labels) {
    Group g;
    for (const auto& [h, leg] : d1.legs())
      if (leg.label == label) g.dx.push_back(h);
    for (const auto& [h, leg] : d2.legs())
      if (leg.label == label) g.x.push_back(h + shift);
    groups.push_back(std::move(g));
  }
  std::vector<std::vector<std::size_t>> perms(groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    perms[i].resize(groups[i].x.size());
    std::iota(perms[i].begin(), perms[i].end(), 0);
  }
  std::function<void(std::size_t)> visit = [&](std::size_t g) {
    if (g == groups.size()) {
      std::map<int, int> matched;
      for (std::size_t i = 0; i < groups.size(); ++i)
        for (std::size_t k = 0; k < groups[i].dx.size(); ++k) {
          matched[groups[i].dx[k]] = groups[i].x[perms[i][k]];
          matched[groups[i].x[perms[i][k]]] = groups[i].dx[k];
        }
      out.terms.emplace_back(c, glue(u, matched));
      return;
    }
    std::sort(perms[g].begin(), perms[g].end());
    do {
      visit(g + 1);
    } while (std::next_permutation(perms[g].begin(), perms[g].end()));
  };
  visit(0);
}

}  // namespace

DiagramSum bracket(const DiagramSum& d1, const DiagramSum& d2) {
  DiagramSum out;
  for (const auto& [c1, a] : d1.terms)
    for (const auto& [c2, b] : d2.terms) glue_all(a, b, c1 * c2, out);
  return out;
}

Rational adjoint_casimir(const LieAlgebra& L) {
  const std::size_t n = L.dim();
  std::vector<Matrix> ad(n, Matrix(n, n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) ad[i](k, j) = L.structure(i, j, k);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (L.gram_inverse()(i, j) != 0) m = m + L.gram_inverse()(i, j) * (ad[i] * ad[j]);
  const Rational c = m(0, 0);
  if (!(m == c * Matrix::identity(n))) throw std::logic_error("adjoint Casimir is not scalar");
  return c;
}

Rational theta_weight_expected(const LieAlgebra& L) {
  return adjoint_casimir(L) * static_cast<unsigned long>(L.dim());
}

Sides<HbarSeries> wu_check(const LieAlgebra& L, int f, const JacobiDiagram& d, int order) {
  require_framing(f);
  if (d.legs().size() > kWuMaxLegs)
    throw std::invalid_argument("wu_check: at most " + std::to_string(kWuMaxLegs) + " legs");
  const auto labels = leg_labels(d);
  if (labels.size() > 1) throw std::invalid_argument("wu_check: legs must share one label");
  for (const auto& [h, leg] : d.legs())
    if (leg.derivative) throw std::invalid_argument("wu_check: diagram must carry x-legs only");

  const std::size_t legs = d.legs().size();
  HbarSeries lhs(Ring::scalar(), order);
  if (legs % 2 == 0) {
    // Only the m-th term of the exponential has matching leg counts.
    const unsigned m = static_cast<unsigned>(legs / 2);
    DiagramSum struts = JacobiDiagram();
    if (m > 0) {
      const DiagramSum s = JacobiDiagram::strut(labels.front(), true);
      for (unsigned k = 0; k < m; ++k) struts = struts * s;
    }
    Rational c = 1 / factorial(m);
    for (unsigned k = 0; k < m; ++k) c *= Rational(-1) / (2 * f);
    lhs = graded_weight(c * bracket(struts, DiagramSum(d)), L, order);
  }
  const MultiPoly w = weight(d, L);
  const int slack = static_cast<int>(legs / 2);
  const HbarSeries graded = HbarSeries::monomial(w.embed(L.ring()), d.degree(), order + slack + d.degree());
  HbarSeries rhs = e_op(QuadraticSpace::coadjoint(L), f, graded, order);
  return {std::move(lhs), std::move(rhs)};
}

}  // namespace lmo
