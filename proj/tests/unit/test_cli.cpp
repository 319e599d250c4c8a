#include <doctest.h>

#include "symgrowth/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace symgrowth::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("symgrowth-test-" + name);
  fs::remove_all(d);
  return d;
}

std::vector<std::vector<std::string>> data_rows(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<std::string> cells;
    for (std::string c; ls >> c;) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

ExperimentConfig quick(const json& overrides) { return parse_config(overrides); }

}  // namespace

TEST_CASE("defaults file matches the built-in defaults") {
  const auto text = slurp(fs::path(SYMGROWTH_SOURCE_DIR) / "config" / "defaults.json");
  CHECK(json::parse(text) == default_config_json());
  const auto c = default_config();
  CHECK(c.experiment == Experiment::All);
  CHECK(c.seed == 2024);
  CHECK(parse_config(to_json(c)).s_grid == c.s_grid);
  CHECK(to_json(parse_config(to_json(c))) == to_json(c));
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(parse_config(json{{"bogus", 1}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"tolerance", 0.0}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"tolerance", -1e-9}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"kappa", "ten"}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"seed", -1}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"n_max", 0}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"experiment", "nope"}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"s_grid", {2.0, 1.0}}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"x", {0.0}}, {"y", json::array()}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json::array()), ConfigError);
  CHECK(parse_config(json{{"seed", 7}}).seed == 7);

  const auto bad = fresh_dir("bad-config");
  fs::create_directories(bad);
  std::ofstream(bad / "c.json") << "{\"n_max\": ";
  CHECK_THROWS_AS(load_config((bad / "c.json").string()), ConfigError);
  CHECK_THROWS_AS(load_config((bad / "missing.json").string()), ConfigError);
}

TEST_CASE("model errors surface as config errors") {
  CHECK_THROWS_AS(run(quick({{"experiment", "propagation"}, {"lift", "nope"}})), ConfigError);
  CHECK_THROWS_AS(run(quick({{"experiment", "growth"}, {"map", {{"model", "nope"}}}})), ConfigError);
  CHECK_THROWS_AS(run(quick({{"experiment", "spectrum"}, {"hamiltonian", {{"m", 1}}}})), ConfigError);
  CHECK_THROWS_AS(run(quick({{"experiment", "spectrum"}, {"hamiltonian", {{"m", 1}, {"epsilon", 0.5}, {"H", {0.1}}, {"x", 1}}}})),
                  ConfigError);
}

TEST_CASE("growth run: 64 rows, Gamma_1 >= 1, byte-identical reruns") {
  const auto cfg = quick({{"experiment", "growth"}, {"n_max", 64}, {"grid", 16}});
  const auto a = fresh_dir("growth-a"), b = fresh_dir("growth-b");
  const auto ra = run(cfg);
  write_artifacts(ra, a.string());
  write_artifacts(run(cfg), b.string());
  CHECK(exit_code(ra) == 0);
  CHECK(slurp(a / "growth.csv") == slurp(b / "growth.csv"));

  std::istringstream in(slurp(a / "growth.csv"));
  std::string line;
  std::getline(in, line);
  CHECK(line == "n,gamma_n,error_bar");
  int rows = 0;
  double gamma1 = 0.0;
  while (std::getline(in, line)) {
    if (rows++ == 0) gamma1 = std::stod(line.substr(line.find(',') + 1));
  }
  CHECK(rows == 64);
  CHECK(gamma1 >= 1.0);

  const auto report = json::parse(slurp(a / "report.json"));
  CHECK(report["config"]["seed"] == 2024);
  CHECK(report["all_pass"] == true);

  emit_plot_data(ra, a.string());
  const auto plot = data_rows(a / "growth.dat");
  REQUIRE(plot.size() == 64);
  CHECK(plot[0].size() == 2);
}

TEST_CASE("plot files: filling has five columns, distortion three") {
  const auto d = fresh_dir("plots");
  const auto filling = run(quick({{"experiment", "filling"}}));
  const auto distortion = run(quick({{"experiment", "distortion"}, {"n_max", 32}, {"radius", 10}}));
  emit_plot_data(filling, d.string());
  emit_plot_data(distortion, d.string());
  const auto f = data_rows(d / "filling.dat");
  const auto g = data_rows(d / "distortion.dat");
  REQUIRE(f.size() == 5);
  for (const auto& r : f) CHECK(r.size() == 5);
  REQUIRE(g.size() == 32);
  for (const auto& r : g) CHECK(r.size() == 3);
  CHECK(slurp(d / "filling.dat").rfind("# filling\n# tests: ", 0) == 0);
  for (const auto& e : fs::directory_iterator(d)) CHECK(e.path().extension() == ".dat");
}

TEST_CASE("every record carries a registered tag") {
  const auto& tags = tag_registry();
  for (const char* e : {"growth", "propagation", "delta", "spectrum", "filling", "distortion", "certificate",
                        "appendix", "isoperimetric"}) {
    auto cfg = quick({{"experiment", e}, {"n_max", 16}, {"grid", 16}, {"radius", 8}});
    const auto r = run(cfg);
    CHECK_MESSAGE(!r.checks.empty(), e);
    for (const auto& c : r.checks) CHECK_MESSAGE(tags.count(c.tag) == 1, c.tag);
    for (const auto& s : r.series) CHECK_MESSAGE(tags.count(s.tag) == 1, s.tag);
  }
}

TEST_CASE("failing check gives exit code 1") {
  const auto r = run(quick({{"experiment", "delta"}, {"n_max", 8}, {"tolerance", 1e-300}}));
  CHECK_FALSE(r.all_pass());
  CHECK(exit_code(r) == 1);
}

TEST_CASE("output directory override and atomic writes") {
  ::unsetenv("SYMGROWTH_OUT_DIR");
  CHECK(resolve_out_dir("fallback") == "fallback");
  ::setenv("SYMGROWTH_OUT_DIR", "/tmp/elsewhere", 1);
  CHECK(resolve_out_dir("fallback") == "/tmp/elsewhere");
  ::unsetenv("SYMGROWTH_OUT_DIR");

  const auto d = fresh_dir("atomic");
  write_atomic((d / "nested" / "f.txt").string(), "one");
  write_atomic((d / "nested" / "f.txt").string(), "two");
  CHECK(slurp(d / "nested" / "f.txt") == "two");
  int files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(d / "nested")) ++files;
  CHECK(files == 1);
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0) == "1");
}

TEST_CASE("verify_all passes on defaults") {
  const auto r = verify_all(default_config());
  CHECK(r.checks.size() == 12);
  for (const auto& c : r.checks) CHECK_MESSAGE(c.pass, c.check_id, " ", c.values.dump());
}
