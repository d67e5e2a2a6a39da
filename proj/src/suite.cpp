#include "lmo/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <thread>

#include <json.hpp>
#include <toml.hpp>

#include "lmo/diagrams.hpp"
#include "lmo/laplace.hpp"
#include "lmo/oracle.hpp"

namespace lmo {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"hcrf", "dhd",  "disc", "reduce", "oe",   "wu",
                                              "theta", "intertwiner", "i2", "duflo", "mc"};
  return names;
}

void SuiteConfig::validate() const {
  if (suites.empty()) throw ConfigError("no suite selected");
  for (const auto& s : suites)
    if (s != "all" && std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw ConfigError("unknown suite '" + s + "'");
  for (const auto& a : algebras)
    if (a != "sl2" && a != "sl3") throw ConfigError("unsupported algebra '" + a + "' (sl2, sl3)");
  const auto& supported = RootSystem::supported();
  for (const auto& r : root_systems)
    if (std::find(supported.begin(), supported.end(), r) == supported.end())
      throw ConfigError("unsupported root system '" + r + "' (A1, A2, A3, B2, G2)");
  if (max_degree < 2 || max_degree % 2 != 0) throw ConfigError("max_degree must be an even integer >= 2");
  if (series_order < 0) throw ConfigError("series_order must be >= 0");
  if (framings.empty()) throw ConfigError("at least one framing is required");
  for (int f : framings)
    if (f == 0) throw ConfigError("framings must be nonzero");
  if (mc_samples < McConfig::kMinSamples) throw ConfigError("mc_samples must be >= 10000");
  if (output.empty()) throw ConfigError("output path is empty");
}

namespace {

template <typename T>
std::vector<T> toml_array(const toml::node& node, const std::string& key) {
  const auto* arr = node.as_array();
  if (!arr) throw ConfigError("config key '" + key + "' must be an array");
  std::vector<T> out;
  for (const auto& item : *arr) {
    auto v = item.value<T>();
    if (!v) throw ConfigError("config key '" + key + "' has an element of the wrong type");
    out.push_back(*v);
  }
  return out;
}

template <typename T>
T toml_scalar(const toml::node& node, const std::string& key) {
  auto v = node.value<T>();
  if (!v) throw ConfigError("config key '" + key + "' has the wrong type");
  return *v;
}

}  // namespace

SuiteConfig load_config(const std::filesystem::path& path, SuiteConfig base) {
  toml::table table;
  try {
    table = toml::parse_file(path.string());
  } catch (const toml::parse_error& e) {
    throw ConfigError("cannot parse " + path.string() + ": " + std::string(e.description()));
  }
  static const std::set<std::string> known{"suites",     "algebras", "root_systems", "max_degree", "series_order",
                                           "framings",   "mc_samples", "mc_seed",    "output",     "threads"};
  for (const auto& [key, node] : table) {
    const std::string k(key.str());
    if (!known.contains(k)) throw ConfigError("unknown config key '" + k + "'");
    if (k == "suites") base.suites = toml_array<std::string>(node, k);
    if (k == "algebras") base.algebras = toml_array<std::string>(node, k);
    if (k == "root_systems") base.root_systems = toml_array<std::string>(node, k);
    if (k == "max_degree") base.max_degree = static_cast<int>(toml_scalar<std::int64_t>(node, k));
    if (k == "series_order") base.series_order = static_cast<int>(toml_scalar<std::int64_t>(node, k));
    if (k == "framings") {
      base.framings.clear();
      for (auto f : toml_array<std::int64_t>(node, k)) base.framings.push_back(static_cast<int>(f));
    }
    if (k == "mc_samples") {
      const auto v = toml_scalar<std::int64_t>(node, k);
      if (v < 0) throw ConfigError("mc_samples must be positive");
      base.mc_samples = static_cast<std::uint64_t>(v);
    }
    if (k == "mc_seed") base.mc_seed = static_cast<std::uint64_t>(toml_scalar<std::int64_t>(node, k));
    if (k == "output") base.output = toml_scalar<std::string>(node, k);
    if (k == "threads") {
      const auto v = toml_scalar<std::int64_t>(node, k);
      if (v < 0) throw ConfigError("threads must be >= 0");
      base.threads = static_cast<unsigned>(v);
    }
  }
  return base;
}

bool Report::pass() const {
  return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
}

std::size_t Report::failures() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const CheckRecord& r) { return !r.pass; }));
}

std::string Report::to_json() const {
  using json = nlohmann::ordered_json;
  json cfg;
  cfg["suites"] = config.suites;
  cfg["algebras"] = config.algebras;
  cfg["root_systems"] = config.root_systems;
  cfg["max_degree"] = config.max_degree;
  cfg["series_order"] = config.series_order;
  cfg["framings"] = config.framings;
  cfg["mc_samples"] = config.mc_samples;
  cfg["mc_seed"] = config.mc_seed;
  cfg["tamper_c"] = config.tamper_c;
  json recs = json::array();
  for (const auto& r : records) {
    json j;
    j["suite"] = r.suite;
    j["identity"] = r.identity;
    json inputs = json::object();
    for (const auto& [k, v] : r.inputs) inputs[k] = v;
    j["inputs"] = inputs;
    if (r.estimate) {
      j["estimate"] = *r.estimate;
      j["stderr"] = *r.std_error;
      j["expected"] = *r.expected;
      j["samples"] = config.mc_samples;
      j["seed"] = config.mc_seed;
    } else {
      j["lhs"] = r.lhs;
      j["rhs"] = r.rhs;
    }
    j["pass"] = r.pass;
    j["elapsed_ms"] = std::round(r.elapsed_ms * 1000.0) / 1000.0;
    recs.push_back(std::move(j));
  }
  json out;
  out["schema_version"] = kReportSchemaVersion;
  out["tool"] = "lmocheck";
  out["version"] = kToolVersion;
  out["config"] = cfg;
  out["records"] = recs;
  out["summary"] = {{"total", records.size()}, {"failed", failures()}};
  out["pass"] = pass();
  return out.dump(2) + "\n";
}

void Report::write(const std::filesystem::path& path) const {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << to_json();
    if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

namespace {

using Task = std::function<CheckRecord()>;

struct NamedPoly {
  std::string name;
  MultiPoly poly;
};

std::string power_name(const std::string& base, unsigned k) {
  return k == 1 ? base : base + "^" + std::to_string(k);
}

// C^a on sl2 and C^a C3^b on sl3 with degree <= max_degree.
std::vector<NamedPoly> invariant_grid(const LieAlgebra& L, int max_degree) {
  std::vector<NamedPoly> out;
  const MultiPoly c = L.casimir();
  for (unsigned a = 0; 2 * static_cast<int>(a) <= max_degree; ++a) {
    if (L.name() == "sl2") {
      out.push_back({a == 0 ? "1" : power_name("C", a), c.pow(a)});
      continue;
    }
    const MultiPoly c3 = L.cubic_casimir();
    for (unsigned b = 0; 2 * static_cast<int>(a) + 3 * static_cast<int>(b) <= max_degree; ++b) {
      std::string name;
      if (a > 0) name = power_name("C", a);
      if (b > 0) name += (name.empty() ? "" : "*") + power_name("C3", b);
      out.push_back({name.empty() ? "1" : name, c.pow(a) * c3.pow(b)});
    }
  }
  return out;
}

CheckRecord exact(std::string suite, std::string identity, std::map<std::string, std::string> inputs, std::string lhs,
                  std::string rhs, bool pass) {
  CheckRecord r;
  r.suite = std::move(suite);
  r.identity = std::move(identity);
  r.inputs = std::move(inputs);
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.pass = pass;
  return r;
}

CheckRecord statistical(std::string suite, std::string identity, std::map<std::string, std::string> inputs,
                        double estimate, double std_error, double expected) {
  CheckRecord r;
  r.suite = std::move(suite);
  r.identity = std::move(identity);
  r.inputs = std::move(inputs);
  r.estimate = estimate;
  r.std_error = std_error;
  r.expected = expected;
  r.pass = std::isfinite(estimate) && std::abs(estimate - expected) <= 4.0 * std_error;
  return r;
}

const std::vector<std::pair<std::string, std::string>>& wu_diagrams() {
  static const std::vector<std::pair<std::string, std::string>> list{
      {"strut", "leg(x,0) leg(x,1) e(0,1)"},
      {"strut^2", "leg(x,0) leg(x,1) leg(x,2) leg(x,3) e(0,1) e(2,3)"},
      {"strut^3", "leg(x,0) leg(x,1) leg(x,2) leg(x,3) leg(x,4) leg(x,5) e(0,1) e(2,3) e(4,5)"},
      {"tripod", "v(0,1,2) leg(x,3) leg(x,4) leg(x,5) e(0,3) e(1,4) e(2,5)"},
      {"wheel2", "v(0,1,2) v(3,4,5) leg(x,6) leg(x,7) e(0,6) e(3,7) e(1,5) e(2,4)"},
      {"H", "v(0,1,2) v(3,4,5) leg(x,6) leg(x,7) leg(x,8) leg(x,9) e(0,3) e(1,6) e(2,7) e(4,8) e(5,9)"},
      {"theta", "v(0,1,2) v(3,5,4) e(0,3) e(1,4) e(2,5)"},
      {"theta+strut", "v(0,1,2) v(3,5,4) e(0,3) e(1,4) e(2,5) leg(x,6) leg(x,7) e(6,7)"},
      {"theta with two legs",
       "v(0,1,2) v(3,5,4) v(6,7,8) v(9,10,11) leg(x,12) leg(x,13) e(0,3) e(1,6) e(7,4) e(2,9) e(10,5) e(8,12) "
       "e(11,13)"},
      {"H+strut",
       "v(0,1,2) v(3,4,5) leg(x,6) leg(x,7) leg(x,8) leg(x,9) e(0,3) e(1,6) e(2,7) e(4,8) e(5,9) leg(x,10) "
       "leg(x,11) e(10,11)"},
  };
  return list;
}

// Non-invariant test inputs for the intertwiner suite: all quadratic
// monomials and a few quartic ones.
std::vector<MultiPoly> intertwiner_inputs(const LieAlgebra& L) {
  std::vector<MultiPoly> out;
  const std::size_t n = L.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) out.push_back(L.variable(i) * L.variable(j));
  out.push_back(L.variable(0).pow(2) * L.variable(n - 1).pow(2));
  out.push_back(L.variable(0) * L.variable(1) * L.variable(n - 1) * L.variable(n - 2));
  out.push_back(L.casimir() * L.variable(0) * L.variable(1));
  return out;
}

std::string framing_name(int f) { return std::to_string(f); }

void add_tasks(const std::string& suite, const SuiteConfig& cfg, std::vector<Task>& tasks) {
  const int order = cfg.series_order;
  if (suite == "hcrf" || suite == "dhd" || suite == "reduce") {
    for (const auto& name : cfg.algebras) {
      auto L = std::make_shared<LieAlgebra>(LieAlgebra::from_name(name));
      for (const auto& p : invariant_grid(*L, cfg.max_degree)) {
        if (suite == "hcrf") {
          tasks.push_back([L, p] {
            auto s = check_hcrf(*L, p.poly);
            return exact("hcrf", "check_hcrf", {{"algebra", L->name()}, {"p", p.name}}, s.lhs.to_string(),
                         s.rhs.to_string(), s.equal());
          });
        } else if (suite == "dhd") {
          if (p.poly.degree() % 2 != 0) continue;
          tasks.push_back([L, p] {
            auto s = check_dhd(*L, p.poly);
            return exact("dhd", "check_dhd", {{"algebra", L->name()}, {"p", p.name}}, to_string(s.lhs),
                         to_string(s.rhs), s.equal());
          });
        } else {
          for (int f : cfg.framings) {
            const bool tamper = cfg.tamper_c;
            tasks.push_back([L, p, f, order, tamper] {
              std::optional<Rational> c;
              if (tamper) c = c_constant(L->root_system()) + 1;
              auto s = reduce_identity(*L, f, p.poly, order, c);
              return exact("reduce", "reduce_identity",
                           {{"algebra", L->name()}, {"p", p.name}, {"f", framing_name(f)}}, s.lhs.to_string(),
                           s.rhs.to_string(), s.equal());
            });
          }
        }
      }
      if (suite == "reduce" && cfg.framings.size() >= 2) {
        const std::vector<int> ff{cfg.framings[0], cfg.framings[1]};
        tasks.push_back([L, ff, order] {
          const std::vector<MultiPoly> factors{L->casimir(), L->casimir().pow(2)};
          auto s = reduce_identity_multi(*L, ff, factors, order);
          return exact("reduce", "reduce_identity_multi",
                       {{"algebra", L->name()}, {"p", "C (x) C^2"},
                        {"f", framing_name(ff[0]) + "," + framing_name(ff[1])}},
                       s.lhs.to_string(), s.rhs.to_string(), s.equal());
        });
      }
    }
  } else if (suite == "disc") {
    for (const auto& name : cfg.root_systems) {
      tasks.push_back([name] {
        auto rs = RootSystem::from_name(name);
        const MultiPoly lap = QuadraticSpace::cartan(rs).laplacian(rs.disc_poly());
        return exact("disc", "laplacian_of_D", {{"root_system", name}}, lap.to_string(), "0", lap.is_zero());
      });
    }
  } else if (suite == "oe") {
    for (const auto& name : cfg.root_systems) {
      auto rs = std::make_shared<RootSystem>(RootSystem::from_name(name));
      const auto basis = weyl_invariant_basis(*rs, static_cast<unsigned>(std::min(cfg.max_degree, 6)));
      for (const auto& p : basis)
        for (int f : cfg.framings)
          tasks.push_back([rs, p, f, order] {
            auto s = o_eq_e_check(*rs, f, p, order);
            return exact("oe", "o_eq_e", {{"root_system", rs->name()}, {"p", p.to_string()}, {"f", framing_name(f)}},
                         s.lhs.to_string(), s.rhs.to_string(), s.equal());
          });
    }
  } else if (suite == "wu") {
    for (const auto& name : cfg.algebras) {
      auto L = std::make_shared<LieAlgebra>(LieAlgebra::from_name(name));
      for (const auto& [label, text] : wu_diagrams())
        for (int f : cfg.framings)
          tasks.push_back([L, label, text, f, order] {
            auto s = wu_check(*L, f, JacobiDiagram::parse(text), order);
            return exact("wu", "wu_check", {{"algebra", L->name()}, {"diagram", label}, {"f", framing_name(f)}},
                         s.lhs.to_string(), s.rhs.to_string(), s.equal());
          });
    }
  } else if (suite == "theta") {
    for (const auto& name : cfg.algebras) {
      tasks.push_back([name] {
        auto L = LieAlgebra::from_name(name);
        const Rational w = weight(JacobiDiagram::theta(), L).constant_term();
        const Rational expected = 24 * L.root_system().invariants().rho_norm_sq;
        return exact("theta", "theta_weight", {{"algebra", name}, {"rhs", "24|rho|^2"}}, to_string(w),
                     to_string(expected), w == expected);
      });
      tasks.push_back([name] {
        auto L = LieAlgebra::from_name(name);
        const Rational w = weight(JacobiDiagram::theta(), L).constant_term();
        const Rational expected = theta_weight_expected(L);
        return exact("theta", "theta_weight", {{"algebra", name}, {"rhs", "C_ad*dim"}}, to_string(w),
                     to_string(expected), w == expected);
      });
      tasks.push_back([name] {
        auto L = LieAlgebra::from_name(name);
        const Rational w = weight(JacobiDiagram::theta(), L).constant_term();
        const Rational flipped = weight(JacobiDiagram::theta().flipped(0), L).constant_term();
        return exact("theta", "theta_orientation", {{"algebra", name}}, to_string(flipped), to_string(-w),
                     flipped == -w && w != 0);
      });
    }
  } else if (suite == "intertwiner") {
    for (const auto& name : cfg.algebras) {
      auto L = std::make_shared<LieAlgebra>(LieAlgebra::from_name(name));
      const auto inputs = intertwiner_inputs(*L);
      const auto framings = cfg.framings;
      for (const auto& g : inputs) {
        tasks.push_back([L, g, framings, order] {
          const auto space = QuadraticSpace::coadjoint(*L);
          std::string first = "0";
          bool ok = true;
          for (std::size_t x = 0; x < L->dim() && ok; ++x)
            for (int f : framings) {
              const HbarSeries v = e_op(space, f, L->ad_apply(x, g), order);
              if (!v.is_zero()) {
                ok = false;
                first = v.to_string();
                break;
              }
            }
          return exact("intertwiner", "e_op_of_ad", {{"algebra", L->name()}, {"g", g.to_string()}}, first, "0", ok);
        });
        if (L->name() == "sl2")
          tasks.push_back([L, g] {
            std::string first = "0";
            bool ok = true;
            for (std::size_t x = 0; x < L->dim() && ok; ++x)
              for (int k = 1; k <= 6; ++k) {
                const Rational v = sym_char(*L, k, L->ad_apply(x, g));
                if (v != 0) {
                  ok = false;
                  first = to_string(v);
                  break;
                }
              }
            return exact("intertwiner", "sym_char_of_ad", {{"algebra", L->name()}, {"g", g.to_string()}}, first, "0",
                         ok);
          });
      }
    }
  } else if (suite == "i2") {
    for (const auto& name : cfg.root_systems) {
      for (int f : {1, -1}) {
        tasks.push_back([name, f] {
          auto rs = RootSystem::from_name(name);
          const int phi = rs.invariants().phi_plus;
          const Rational lead = i2_trivial(rs, f, 0).shifted(phi).coefficient(0).constant_term();
          Rational expected = c_constant(rs);
          for (int k = 0; k < phi; ++k) expected /= -2 * f;
          return exact("i2", "i2_leading_term", {{"root_system", name}, {"f", framing_name(f)}}, to_string(lead),
                       to_string(expected), lead == expected);
        });
        tasks.push_back([name, f, order] {
          auto rs = RootSystem::from_name(name);
          const HbarSeries tau = lens_tau(rs, f, order);
          const bool ok = tau == HbarSeries::constant(Rational(1), order) && tau.truncation_order() == order;
          return exact("i2", "lens_tau_unit", {{"root_system", name}, {"p", framing_name(f)}}, tau.to_string(), "1",
                       ok);
        });
      }
    }
  } else if (suite == "duflo") {
    tasks.push_back([] {
      auto L = LieAlgebra::build_sl(2);
      std::string lhs, rhs;
      bool ok = true;
      for (int n = 1; n <= 10; ++n) {
        const Rational a = sym_char(L, n, L.casimir()) + frac(n, 2);
        const Rational b = frac(static_cast<long>(n) * n * n, 2);
        lhs += (n > 1 ? "," : "") + to_string(a);
        rhs += (n > 1 ? "," : "") + to_string(b);
        ok = ok && a == b;
      }
      return exact("duflo", "sym_char_shift", {{"algebra", "sl2"}, {"n", "1..10"}}, lhs, rhs, ok);
    });
  } else if (suite == "mc") {
    McConfig base;
    base.samples = cfg.mc_samples;
    base.seed = cfg.mc_seed;
    base.threads = cfg.threads;
    auto gauss = [base](std::string label, double f_hbar, std::function<std::pair<McEstimate, double>(McConfig)> run) {
      return [base, label, f_hbar, run] {
        McConfig c = base;
        c.f_hbar = f_hbar;
        auto [est, exact_value] = run(c);
        return statistical("mc", "gauss_mc", {{"case", label}, {"f_hbar", std::to_string(f_hbar)}}, est.estimate,
                           est.std_error, exact_value);
      };
    };
    tasks.push_back(gauss("line x^2", -0.1, [](McConfig c) {
      const QuadraticSpace line(Ring::make({"x"}), Matrix::identity(1));
      const MultiPoly x = MultiPoly::variable(line.ring(), "x");
      return std::pair{gauss_mc(line, c, x * x), symbolic_expectation(line, x * x, c.f_hbar)};
    }));
    tasks.push_back(gauss("line x^3", -0.1, [](McConfig c) {
      const QuadraticSpace line(Ring::make({"x"}), Matrix::identity(1));
      const MultiPoly x = MultiPoly::variable(line.ring(), "x");
      return std::pair{gauss_mc(line, c, x.pow(3)), symbolic_expectation(line, x.pow(3), c.f_hbar)};
    }));
    for (const auto& name : cfg.algebras) {
      tasks.push_back(gauss(name + " C", -0.5, [name](McConfig c) {
        auto L = LieAlgebra::from_name(name);
        return std::pair{gauss_mc(L, c, L.casimir()),
                         symbolic_expectation(QuadraticSpace::coadjoint(L), L.casimir(), c.f_hbar)};
      }));
      tasks.push_back(gauss(name + " C^2", -1.0, [name](McConfig c) {
        auto L = LieAlgebra::from_name(name);
        const MultiPoly p = L.casimir().pow(2);
        return std::pair{gauss_mc(L, c, p), symbolic_expectation(QuadraticSpace::coadjoint(L), p, c.f_hbar)};
      }));
    }
    for (const auto& name : cfg.root_systems) {
      tasks.push_back(gauss(name + " D^2 or D", -2.0, [name](McConfig c) {
        auto rs = RootSystem::from_name(name);
        const MultiPoly d = rs.disc_poly();
        const MultiPoly p = 2 * d.degree() <= kMcMaxDegree ? d * d : d;
        const auto space = QuadraticSpace::cartan(rs);
        return std::pair{gauss_mc(space, c, p), symbolic_expectation(space, p, c.f_hbar)};
      }));
    }
    for (const auto& name : cfg.algebras) {
      for (const char* pname : {"1", "C"}) {
        const std::string label = pname;
        tasks.push_back([base, name, label] {
          auto L = LieAlgebra::from_name(name);
          const MultiPoly p = label == "1" ? MultiPoly(L.ring(), 1) : L.casimir();
          const auto r = weyl_ratio(L, base, p);
          return statistical("mc", "weyl_ratio", {{"algebra", name}, {"p", label}}, r.ratio, r.std_error,
                             expected_weyl_ratio(L.root_system()));
        });
      }
    }
  }
}

}  // namespace

Report run_suite(const SuiteConfig& config) {
  config.validate();
  std::vector<std::string> selected;
  const bool all = std::find(config.suites.begin(), config.suites.end(), "all") != config.suites.end();
  for (const auto& s : suite_names())
    if (all || std::find(config.suites.begin(), config.suites.end(), s) != config.suites.end()) selected.push_back(s);

  std::vector<Task> tasks;
  for (const auto& s : selected) add_tasks(s, config, tasks);

  Report report;
  report.config = config;
  report.records.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto start = std::chrono::steady_clock::now();
      CheckRecord r;
      try {
        r = tasks[i]();
      } catch (const std::exception& e) {
        r.suite = "error";
        r.identity = "exception";
        r.lhs = e.what();
        r.pass = false;
      }
      r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      report.records[i] = std::move(r);
    }
  };
  unsigned threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(tasks.size(), 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return report;
}

}  // namespace lmo
