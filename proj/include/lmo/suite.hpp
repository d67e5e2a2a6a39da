#pragma once

// Verification suites over a configured grid and their JSON report.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lmo {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

struct SuiteConfig {
  std::vector<std::string> suites{"all"};
  std::vector<std::string> algebras{"sl2", "sl3"};
  std::vector<std::string> root_systems{"A1", "A2", "A3", "B2", "G2"};
  int max_degree = 8;
  int series_order = 8;
  std::vector<int> framings{1, -1, 2, -2, 3};
  std::uint64_t mc_samples = 1000000;
  std::uint64_t mc_seed = 42;
  std::filesystem::path output = "lmocheck_report.json";
  unsigned threads = 0;
  /// Negative control: reduce_identity runs with c + 1.
  bool tamper_c = false;

  /// Throws ConfigError.
  void validate() const;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Suite names accepted by `verify --suite`, in report order.
const std::vector<std::string>& suite_names();

/// Reads keys of SuiteConfig from a TOML file over `base`.
SuiteConfig load_config(const std::filesystem::path& path, SuiteConfig base = {});

struct CheckRecord {
  std::string suite;
  std::string identity;
  std::map<std::string, std::string> inputs;
  /// Exact checks.
  std::string lhs, rhs;
  /// Monte Carlo checks.
  std::optional<double> estimate, std_error, expected;
  bool pass = false;
  double elapsed_ms = 0;
};

struct Report {
  SuiteConfig config;
  std::vector<CheckRecord> records;
  bool pass() const;
  std::size_t failures() const;
  /// Deterministic JSON apart from elapsed_ms fields.
  std::string to_json() const;
  /// Writes to a temporary sibling and renames.
  void write(const std::filesystem::path& path) const;
};

Report run_suite(const SuiteConfig& config);

}  // namespace lmo
