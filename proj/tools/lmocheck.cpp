// lmocheck: verification suites and invariant calculations.
//
//   lmocheck verify [--suite NAME]... [--config FILE] [--output FILE]
//   lmocheck tau-lens -p INT --algebra NAME [--order N]
//   lmocheck theta --algebra NAME [--flip-vertex]
//
// Exit codes: 0 pass, 1 verification failure, 2 usage or config error.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "lmo/diagrams.hpp"
#include "lmo/laplace.hpp"
#include "lmo/suite.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr const char* kConfigEnv = "LMOCHECK_CONFIG";

lmo::RootSystem root_system_for(const std::string& name) {
  if (name == "sl2") return lmo::RootSystem::from_name("A1");
  if (name == "sl3") return lmo::RootSystem::from_name("A2");
  return lmo::RootSystem::from_name(name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks of Gaussian evaluation identities and lens space series"};
  app.require_subcommand(1);
  app.set_version_flag("--version", lmo::kToolVersion);

  std::string config_path;
  app.add_option("--config", config_path, "TOML config file (default: $LMOCHECK_CONFIG)");

  auto* verify = app.add_subcommand("verify", "Run verification suites and write a JSON report");
  std::vector<std::string> suites;
  std::vector<std::string> algebras, root_systems;
  std::vector<int> framings;
  std::optional<int> max_degree, order;
  std::optional<std::uint64_t> mc_samples, mc_seed;
  std::optional<std::string> output;
  std::optional<unsigned> threads;
  bool tamper = false;
  verify->add_option("--suite", suites, "hcrf|dhd|disc|reduce|oe|wu|theta|intertwiner|i2|duflo|mc|all");
  verify->add_option("--algebra", algebras, "sl2, sl3");
  verify->add_option("--root-system", root_systems, "A1, A2, A3, B2, G2");
  verify->add_option("--framing", framings, "nonzero integer framings");
  verify->add_option("--max-degree", max_degree, "even degree bound for invariant inputs");
  verify->add_option("--order", order, "hbar series order");
  verify->add_option("--mc-samples", mc_samples, "Monte Carlo samples per case");
  verify->add_option("--mc-seed", mc_seed, "Monte Carlo seed");
  verify->add_option("--output", output, "report path");
  verify->add_option("--threads", threads, "worker threads, 0 = all cores");
  verify->add_flag("--tamper-c", tamper, "negative control: perturb c in reduce_identity");

  auto* tau = app.add_subcommand("tau-lens", "Perturbative invariant of the lens space L(p,1)");
  int p = 0;
  std::string tau_algebra;
  int tau_order = 10;
  tau->add_option("-p", p, "surgery coefficient")->required();
  tau->add_option("--algebra", tau_algebra, "A1, A2, A3, B2, G2, sl2 or sl3")->required();
  tau->add_option("--order", tau_order, "hbar order")->check(CLI::NonNegativeNumber);

  auto* theta = app.add_subcommand("theta", "Weight of the theta diagram");
  std::string theta_algebra;
  bool flip = false;
  theta->add_option("--algebra", theta_algebra, "sl2 or sl3")->required();
  theta->add_flag("--flip-vertex", flip, "negative control: reverse one cyclic order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*verify) {
      lmo::SuiteConfig cfg;
      if (config_path.empty())
        if (const char* env = std::getenv(kConfigEnv)) config_path = env;
      if (!config_path.empty()) cfg = lmo::load_config(config_path);
      if (!suites.empty()) cfg.suites = suites;
      if (!algebras.empty()) cfg.algebras = algebras;
      if (!root_systems.empty()) cfg.root_systems = root_systems;
      if (!framings.empty()) cfg.framings = framings;
      if (max_degree) cfg.max_degree = *max_degree;
      if (order) cfg.series_order = *order;
      if (mc_samples) cfg.mc_samples = *mc_samples;
      if (mc_seed) cfg.mc_seed = *mc_seed;
      if (output) cfg.output = *output;
      if (threads) cfg.threads = *threads;
      cfg.tamper_c = tamper;
      cfg.validate();

      const lmo::Report report = lmo::run_suite(cfg);
      report.write(cfg.output);
      for (const auto& r : report.records) {
        if (r.pass) continue;
        std::cerr << "FAIL " << r.suite << " " << r.identity;
        for (const auto& [k, v] : r.inputs) std::cerr << " " << k << "=" << v;
        std::cerr << "\n";
      }
      std::cout << report.records.size() - report.failures() << "/" << report.records.size() << " checks passed; report "
                << cfg.output.string() << "\n";
      return report.pass() ? kExitPass : kExitFail;
    }

    if (*tau) {
      if (p == 0) {
        std::cerr << "error: p must be nonzero\n";
        return kExitUsage;
      }
      const lmo::RootSystem rs = root_system_for(tau_algebra);
      std::cout << lmo::lens_tau_normalized(rs, p, tau_order).to_string() << "\n";
      std::cout << "ratio: " << lmo::lens_tau(rs, p, tau_order).to_string() << "\n";
      return kExitPass;
    }

    if (*theta) {
      const lmo::LieAlgebra L = lmo::LieAlgebra::from_name(theta_algebra);
      lmo::JacobiDiagram d = lmo::JacobiDiagram::theta();
      if (flip) d = d.flipped(0);
      const lmo::Rational w = lmo::weight(d, L).constant_term();
      const lmo::Rational expected = 24 * L.root_system().invariants().rho_norm_sq;
      std::cout << lmo::to_string(w) << " " << lmo::to_string(expected) << "\n";
      if (w != expected) {
        std::cerr << "mismatch: contraction " << lmo::to_string(w) << " vs 24|rho|^2 " << lmo::to_string(expected)
                  << "\n";
        return kExitFail;
      }
      return kExitPass;
    }
  } catch (const lmo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
