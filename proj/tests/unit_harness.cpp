#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "projlab/harness.hpp"

using namespace projlab;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config parsing: defaults, sections, hash stability") {
  auto cfg = parse_config_text("experiment = E1\nseed = 9\n");
  CHECK(cfg.experiment == "E1");
  CHECK(cfg.seed == 9);
  CHECK(cfg.get("seq") == "geo:4");      // default recorded
  CHECK(cfg.get("depth") == "512");
  CHECK(cfg.out_dir == "out/e1");

  auto cfg2 = parse_config_text("seed = 9\nexperiment = E1\n");
  CHECK(cfg.hash_hex() == cfg2.hash_hex());  // order-insensitive

  auto cfg3 = parse_config_text("experiment = E1\nseed = 10\n");
  CHECK(cfg.hash_hex() != cfg3.hash_hex());

  // sections prefix keys; E-schemas have no sectioned keys, so it errors
  CHECK_THROWS_WITH_AS(
      parse_config_text("experiment = E1\n[weird]\nkey = 1\n"),
      doctest::Contains("unknown keys: weird.key"), std::invalid_argument);
}

TEST_CASE("config parsing: errors name the offending keys") {
  CHECK_THROWS_WITH_AS(parse_config_text("experiment = E1\nmisspelled = 3\n"),
                       doctest::Contains("misspelled"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config_text("seed = 1\n"),
                       doctest::Contains("experiment"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("experiment = E9\n"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config_text("experiment = E1\ns = 3/2\n"),
                       doctest::Contains("(0,1)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("experiment = E1\nexperiment = E2\n"),
                  std::invalid_argument);
}

TEST_CASE("E1 runs, passes, and reruns byte-identically") {
  auto cfg = parse_config_text(
      "experiment = E1\nseed = 4\ncount = 20\nout_dir = test_out/e1\n");
  auto rep1 = run_experiment(cfg);
  CHECK(rep1.pass);
  std::string bytes1 = slurp(rep1.report_path);
  std::string trials1 = slurp(rep1.trials_path);
  auto rep2 = run_experiment(cfg);
  CHECK(slurp(rep2.report_path) == bytes1);
  CHECK(slurp(rep2.trials_path) == trials1);
  CHECK(bytes1.find(cfg.hash_hex()) != std::string::npos);
  CHECK(bytes1.find("provenance") != std::string::npos);

  auto files = emit_plot_data(rep1.report_path);
  CHECK(files.size() >= 2);  // data file + manifest
  bool has_manifest = false;
  for (const auto& f : files)
    has_manifest |= f.find("plot_manifest.json") != std::string::npos;
  CHECK(has_manifest);

  std::filesystem::remove_all("test_out");
}

TEST_CASE("E5 small corpus runs clean") {
  auto cfg = parse_config_text(
      "experiment = E5\nexhaustive_r = 6\nfuzz_count = 200\nfuzz_r = 32\n"
      "out_dir = test_out/e5\n");
  auto rep = run_experiment(cfg);
  CHECK(rep.pass);
  std::filesystem::remove_all("test_out");
}

TEST_CASE("infeasible configuration fails before writing output") {
  auto cfg = parse_config_text(
      "experiment = E3\ndepth = 60\nscales = 20,40,60\nout_dir = test_out/e3bad\n");
  CHECK_THROWS_AS(run_experiment(cfg), std::domain_error);
  CHECK(!std::filesystem::exists("test_out/e3bad/report.json"));
  std::filesystem::remove_all("test_out");
}
