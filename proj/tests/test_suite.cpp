#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "lmo/suite.hpp"

using namespace lmo;

namespace {

SuiteConfig small(std::vector<std::string> suites) {
  SuiteConfig cfg;
  cfg.suites = std::move(suites);
  cfg.max_degree = 4;
  cfg.series_order = 4;
  cfg.framings = {1, -2};
  cfg.root_systems = {"A1", "A2", "B2"};
  cfg.mc_samples = 20000;
  cfg.threads = 2;
  return cfg;
}

nlohmann::json without_timing(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  for (auto& r : j["records"]) r.erase("elapsed_ms");
  return j;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("lmocheck_test_" + name);
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_NOTHROW(SuiteConfig{}.validate());
  auto bad = [](auto mutate) {
    SuiteConfig c;
    mutate(c);
    return c;
  };
  CHECK_THROWS_AS(bad([](SuiteConfig& c) { c.max_degree = 5; }).validate(), ConfigError);
  CHECK_THROWS_AS(bad([](SuiteConfig& c) { c.max_degree = 0; }).validate(), ConfigError);
  CHECK_THROWS_AS(bad([](SuiteConfig& c) { c.series_order = -1; }).validate(), ConfigError);
  CHECK_THROWS_AS(bad([](SuiteConfig& c) { c.framings = {1, 0}; }).validate(), ConfigError);
  CHECK_THROWS_AS(bad([](SuiteConfig& c) { c.algebras = {"so5"}; }).validate(), ConfigError);
  CHECK_THROWS_AS(bad([](SuiteConfig& c) { c.root_systems = {"E8"}; }).validate(), ConfigError);
  CHECK_THROWS_AS(bad([](SuiteConfig& c) { c.suites = {"nope"}; }).validate(), ConfigError);
  CHECK_THROWS_AS(bad([](SuiteConfig& c) { c.mc_samples = 10; }).validate(), ConfigError);
}

TEST_CASE("TOML config") {
  const auto path = temp_file("config.toml");
  {
    std::ofstream out(path);
    out << "algebras = [\"sl2\"]\nmax_degree = 6\nframings = [1, -1]\nmc_seed = 7\noutput = \"r.json\"\n";
  }
  const SuiteConfig cfg = load_config(path);
  CHECK(cfg.algebras == std::vector<std::string>{"sl2"});
  CHECK(cfg.max_degree == 6);
  CHECK(cfg.framings == std::vector<int>{1, -1});
  CHECK(cfg.mc_seed == 7);
  CHECK(cfg.output == "r.json");
  CHECK(cfg.series_order == SuiteConfig{}.series_order);
  {
    std::ofstream out(path);
    out << "max_degree = \"six\"\n";
  }
  CHECK_THROWS_AS(load_config(path), ConfigError);
  {
    std::ofstream out(path);
    out << "colour = 3\n";
  }
  CHECK_THROWS_AS(load_config(path), ConfigError);
  {
    std::ofstream out(path);
    out << "max_degree = [\n";
  }
  CHECK_THROWS_AS(load_config(path), ConfigError);
  std::filesystem::remove(path);
}

TEST_CASE("exact suites pass and records follow the grid") {
  const Report r = run_suite(small({"hcrf", "dhd", "disc", "reduce", "theta", "duflo"}));
  CHECK(r.pass());
  CHECK(r.failures() == 0);
  std::size_t dhd = 0, reduce = 0;
  for (const auto& rec : r.records) {
    CHECK(rec.pass);
    dhd += rec.suite == "dhd";
    reduce += rec.identity == "reduce_identity";
  }
  // sl2: 1, C, C^2; sl3: 1, C, C^2, C3 (dhd drops the odd C3)
  CHECK(dhd == 6);
  CHECK(reduce == 7 * 2);
  // grid contract at max_degree 6 on sl3: C^a C3^b with 2a + 3b <= 6
  SuiteConfig six = small({"dhd"});
  six.algebras = {"sl3"};
  six.max_degree = 6;
  std::vector<std::string> inputs;
  for (const auto& rec : run_suite(six).records) inputs.push_back(rec.inputs.at("p"));
  CHECK(inputs == std::vector<std::string>{"1", "C3^2", "C", "C^2", "C^3"});
}

TEST_CASE("negative control fails on reduce_identity") {
  SuiteConfig cfg = small({"hcrf", "reduce"});
  cfg.tamper_c = true;
  const Report r = run_suite(cfg);
  CHECK_FALSE(r.pass());
  const auto first = std::find_if(r.records.begin(), r.records.end(), [](const CheckRecord& x) { return !x.pass; });
  REQUIRE(first != r.records.end());
  CHECK(first->identity == "reduce_identity");
}

TEST_CASE("report JSON is deterministic") {
  const SuiteConfig cfg = small({"theta", "disc", "mc"});
  const Report a = run_suite(cfg);
  SuiteConfig other = cfg;
  other.threads = 1;
  const Report b = run_suite(other);
  const auto ja = without_timing(a.to_json());
  auto jb = without_timing(b.to_json());
  CHECK(ja["records"] == jb["records"]);
  CHECK(ja["schema_version"] == 1);
  CHECK(ja["pass"] == a.pass());
  bool saw_mc = false;
  for (const auto& rec : ja["records"])
    if (rec["suite"] == "mc") {
      saw_mc = true;
      CHECK(rec.contains("estimate"));
      CHECK(rec.contains("stderr"));
      CHECK(rec["samples"] == 20000);
      CHECK(rec["seed"] == 42);
    }
  CHECK(saw_mc);
  const auto path = temp_file("report.json");
  a.write(path);
  std::ifstream in(path);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text == a.to_json());
  CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  std::filesystem::remove(path);
}
