#include "symgrowth/cli.hpp"
#include "symgrowth/errors.hpp"
#include "symgrowth/groups.hpp"
#include "symgrowth/map_zoo.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using nlohmann::json;
namespace sc = symgrowth::cli;

namespace {

struct Globals {
  std::string config;
  std::string out_dir;
  std::optional<unsigned long> seed;
  std::optional<int> jobs;
};

// Accepts inline JSON or a path to a JSON file.
json json_argument(const std::string& text, const std::string& what) {
  std::string body = text;
  if (!text.empty() && text.front() != '{' && text.front() != '[') {
    std::ifstream in(text);
    if (!in) throw sc::ConfigError(fmt::format("{}: cannot read '{}'", what, text));
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw sc::ConfigError(fmt::format("{}: malformed JSON: {}", what, e.what()));
  }
}

json base_config(const Globals& g) {
  json j = json::object();
  if (!g.config.empty()) j = json_argument(g.config, "--config");
  if (!j.is_object()) throw sc::ConfigError("config must be a JSON object");
  if (g.seed) j["seed"] = *g.seed;
  if (g.jobs) j["jobs"] = *g.jobs;
  return j;
}

std::string pick_out_dir(const Globals& g, const sc::ExperimentConfig& c) {
  return g.out_dir.empty() ? sc::resolve_out_dir(c.out_dir) : g.out_dir;
}

void print_records(const sc::Report& r) {
  for (const auto& c : r.checks)
    fmt::print("{} {} [{}] {}\n", c.pass ? "PASS" : "FAIL", c.check_id, c.tag, c.values.dump());
  for (const auto& c : r.checks)
    if (!c.pass) fmt::print(stderr, "failed: {} [{}] target: {} values: {}\n", c.check_id, c.tag, c.target, c.values.dump());
}

void print_series_csv(const sc::Report& r) {
  if (r.series.empty()) return;
  const auto& s = r.series.front();
  for (std::size_t i = 0; i < s.columns.size(); ++i) fmt::print("{}{}", i ? "," : "", s.columns[i]);
  fmt::print("\n");
  for (const auto& row : s.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) fmt::print("{}{}", i ? "," : "", row[i]);
    fmt::print("\n");
  }
}

// Validates, runs, writes artifacts. Config errors propagate before anything is written.
int execute(const Globals& g, json overrides, const std::string& out_format) {
  json j = base_config(g);
  for (auto& [k, v] : overrides.items()) j[k] = v;
  const auto config = sc::parse_config(j);
  const auto out_dir = pick_out_dir(g, config);
  const auto report = sc::run(config);
  const auto files = sc::write_artifacts(report, out_dir);
  sc::emit_plot_data(report, out_dir);
  if (out_format == "csv") {
    print_series_csv(report);
  } else if (out_format == "json") {
    fmt::print("{}\n", report.to_json().dump(2));
  } else {
    print_records(report);
    fmt::print("artifacts: {}\n", out_dir);
  }
  if (out_format != "summary")
    for (const auto& c : report.checks)
      if (!c.pass) fmt::print(stderr, "failed: {} [{}] target: {} values: {}\n", c.check_id, c.tag, c.target, c.values.dump());
  return sc::exit_code(report);
}

std::vector<double> halving_grid(double smax, int points) {
  std::vector<double> s(static_cast<std::size_t>(points));
  double v = smax;
  for (int i = points - 1; i >= 0; --i, v /= 2) s[static_cast<std::size_t>(i)] = v;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Growth of symplectic maps on universal covers, filling functions and Baumslag-Solitar distortion"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, "JSON config file (defaults apply to missing keys)");
  app.add_option("--out-dir", g.out_dir, "artifact directory (else SYMGROWTH_OUT_DIR, else config out_dir)");
  app.add_option("--seed", g.seed, "seed for randomized sampling");
  app.add_option("--jobs", g.jobs, "worker threads for growth sampling");

  std::function<int()> action;

  auto* zoo = app.add_subcommand("zoo", "map zoo");
  zoo->require_subcommand(1);
  zoo->add_subcommand("list", "print the JSON schema of every model")->callback([&] {
    action = [] {
      fmt::print("{}\n", symgrowth::zoo_schema().dump(2));
      return 0;
    };
  });

  std::string map_text, out_format = "summary";
  long nmax = 64;
  int grid = 64;
  auto* growth = app.add_subcommand("growth", "growth sequence Gamma_n of a zoo map");
  growth->add_option("--map", map_text, "zoo JSON, inline or a file path");
  growth->add_option("--nmax", nmax, "largest iterate")->check(CLI::PositiveNumber);
  growth->add_option("--grid", grid, "sample grid resolution per axis")->check(CLI::PositiveNumber);
  growth->add_option("--out", out_format, "stdout format")->check(CLI::IsMember({"summary", "csv", "json"}));
  growth->callback([&] {
    action = [&] {
      json o = {{"experiment", "growth"}, {"n_max", nmax}, {"grid", grid}};
      if (!map_text.empty()) o["map"] = json_argument(map_text, "--map");
      return execute(g, o, out_format);
    };
  });

  auto* prop = app.add_subcommand("propagation", "displacement d_n of a standard lift against Gamma_n");
  std::string lift = "skew_product";
  prop->add_option("--lift", lift, "standard lift id");
  prop->add_option("--nmax", nmax)->check(CLI::PositiveNumber);
  prop->add_option("--out", out_format)->check(CLI::IsMember({"summary", "csv", "json"}));
  prop->callback([&] {
    action = [&] { return execute(g, {{"experiment", "propagation"}, {"lift", lift}, {"n_max", nmax}}, out_format); };
  });

  auto* act = app.add_subcommand("action", "action difference, spectrum width, isoperimetric check");
  act->require_subcommand(1);
  std::vector<double> x, y;
  long n_iter = 64;
  auto* delta = act->add_subcommand("delta", "delta(f^n; x, y) for fixed points x, y");
  delta->add_option("--map", map_text, "zoo JSON of the base map (identity lift)");
  delta->add_option("--lift", lift, "standard lift id, used when --map is absent");
  delta->add_option("--x", x, "first fixed point")->delimiter(',');
  delta->add_option("--y", y, "second fixed point")->delimiter(',');
  delta->add_option("--n", n_iter, "largest iterate")->check(CLI::PositiveNumber);
  delta->add_option("--out", out_format)->check(CLI::IsMember({"summary", "csv", "json"}));
  delta->callback([&] {
    action = [&] {
      json o = {{"experiment", "delta"}, {"lift", lift}, {"n_max", n_iter}, {"x", x}, {"y", y}};
      if (!map_text.empty()) o["map"] = json_argument(map_text, "--map");
      if (!x.empty() && map_text.empty()) throw sc::ConfigError("--x/--y need --map");
      return execute(g, o, out_format);
    };
  });
  std::string h_text;
  auto* spectrum = act->add_subcommand("spectrum", "action spectrum width of a twist Hamiltonian");
  spectrum->add_option("--H", h_text, "Hamiltonian JSON {m, epsilon, H, time}");
  spectrum->add_option("--n", n_iter, "largest iterate")->check(CLI::PositiveNumber);
  spectrum->add_option("--out", out_format)->check(CLI::IsMember({"summary", "csv", "json"}));
  spectrum->callback([&] {
    action = [&] {
      json o = {{"experiment", "spectrum"}, {"n_max", n_iter}};
      if (!h_text.empty()) o["hamiltonian"] = json_argument(h_text, "--H");
      return execute(g, o, out_format);
    };
  });
  std::string corpus;
  double kappa = 10.0;
  auto* iso = act->add_subcommand("isoperimetric", "isoperimetric consistency on a loop corpus");
  iso->add_option("--corpus", corpus, "JSON loop file; generated corpus when absent");
  iso->add_option("--kappa", kappa)->check(CLI::PositiveNumber);
  iso->add_option("--out", out_format)->check(CLI::IsMember({"summary", "csv", "json"}));
  iso->callback([&] {
    action = [&] {
      return execute(g, {{"experiment", "isoperimetric"}, {"corpus", corpus}, {"kappa", kappa}}, out_format);
    };
  });

  std::string model = "torus2n";
  int half_dim = 1;
  double smax = 8.0, t = 8.0;
  auto* filling = app.add_subcommand("filling", "filling function bounds u_lo <= u <= u_hi");
  filling->add_option("--model", model)->check(CLI::IsMember({"torus2n", "hyperbolic"}));
  filling->add_option("--n", half_dim, "half dimension of the torus")->check(CLI::Range(1, 4));
  filling->add_option("--smax", smax, "largest s; the grid halves down five points")->check(CLI::PositiveNumber);
  filling->add_option("--out", out_format)->check(CLI::IsMember({"summary", "csv", "json"}));
  auto filling_overrides = [&] {
    return json{{"experiment", "filling"}, {"filling_model", model}, {"half_dim", half_dim},
                {"s_grid", halving_grid(smax, 5)}, {"t", t}};
  };
  filling->callback([&] {
    if (!action) action = [&] { return execute(g, filling_overrides(), out_format); };
  });
  auto* invert = filling->add_subcommand("invert", "interval for v(t), the inverse of s u(s)");
  invert->add_option("--t", t)->check(CLI::PositiveNumber)->required();
  invert->callback([&] {
    action = [&] {
      json j = base_config(g);
      const json o = filling_overrides();
      for (const auto& [k, v] : o.items()) j[k] = v;
      j["filling_model"] = "torus2n";
      const auto config = sc::parse_config(j);
      const auto report = sc::run(config);
      for (const auto& c : report.checks)
        if (c.check_id == "v-interval") {
          fmt::print("v({}) in [{}, {}]\n", t, sc::format_number(c.values["v_lo"].get<double>()),
                     sc::format_number(c.values["v_hi"].get<double>()));
          return c.pass ? 0 : 1;
        }
      print_records(report);
      return 1;
    };
  });

  long q = 2, p = 1;
  auto* groups = app.add_subcommand("groups", "Baumslag-Solitar word metrics");
  groups->require_subcommand(1);
  auto* bs = groups->add_subcommand("bs", "BS(q, p) = <a, b | a^q = b a^p b^-1>");
  bs->add_option("--q", q);
  bs->add_option("--p", p);
  bs->require_subcommand(1);
  long power = 8;
  int radius = 12;
  std::size_t max_nodes = 20'000'000;
  auto* length = bs->add_subcommand("length", "word length of a^N by breadth-first search");
  length->add_option("--power", power, "N")->check(CLI::PositiveNumber);
  length->add_option("--radius", radius)->check(CLI::Range(1, 255));
  length->add_option("--max-nodes", max_nodes)->check(CLI::PositiveNumber);
  length->callback([&] {
    action = [&] {
      symgrowth::Presentation P;
      try {
        P = symgrowth::Presentation::bs(q, p);
      } catch (const symgrowth::PreconditionError& e) {
        throw sc::ConfigError(e.what());
      }
      const auto res = symgrowth::word_length_bfs(P, symgrowth::GroupWord::power(symgrowth::Generator::a, power),
                                                  radius, max_nodes);
      json out = {{"presentation", P.name()}, {"n", power}, {"radius", res.radius},
                  {"ball_size", res.ball_size}, {"truncated", res.truncated}};
      if (res.found) {
        out["length"] = res.length;
        out["witness"] = res.witness.to_string();
      } else {
        out["length"] = fmt::format("> {}", res.radius);
        if ((P.q > P.p && P.p > 0) || (P.q < P.p && P.p < 0))
          out["upper_bound"] = symgrowth::construction_length(P, power);
      }
      fmt::print("{}\n", out.dump(2));
      return 0;
    };
  });
  auto* distortion = bs->add_subcommand("distortion", "profile of ||a^n|| for n <= N");
  distortion->add_option("--nmax", nmax)->check(CLI::PositiveNumber);
  distortion->add_option("--radius", radius)->check(CLI::Range(1, 255));
  distortion->add_option("--max-nodes", max_nodes)->check(CLI::PositiveNumber);
  distortion->add_option("--out", out_format)->check(CLI::IsMember({"summary", "csv", "json"}));
  distortion->callback([&] {
    action = [&] {
      return execute(g, {{"experiment", "distortion"}, {"q", q}, {"p", p}, {"n_max", nmax}, {"radius", radius},
                         {"max_nodes", max_nodes}},
                     out_format);
    };
  });

  auto* cert = app.add_subcommand("certificate", "lower-bound certificate for Gamma_n from the filling function");
  cert->add_option("--lift", lift);
  cert->add_option("--nmax", nmax)->check(CLI::PositiveNumber);
  cert->add_option("--out", out_format)->check(CLI::IsMember({"summary", "csv", "json"}));
  cert->callback([&] {
    action = [&] { return execute(g, {{"experiment", "certificate"}, {"lift", lift}, {"n_max", nmax}}, out_format); };
  });

  app.add_subcommand("appendix", "checks on the T^4 / Z_2 example")->callback([&] {
    action = [&] { return execute(g, {{"experiment", "appendix"}}, "summary"); };
  });

  app.add_subcommand("verify-all", "all acceptance checks on pinned defaults")->callback([&] {
    action = [&] { return execute(g, {{"experiment", "all"}}, "summary"); };
  });

  std::string experiment;
  auto* run = app.add_subcommand("run", "run the experiment named in the config (or on the command line)");
  run->add_option("experiment", experiment, "experiment kind, e.g. verify-all or growth");
  run->callback([&] {
    action = [&] {
      json o = json::object();
      if (!experiment.empty()) o["experiment"] = experiment == "verify-all" ? "all" : experiment;
      return execute(g, o, "summary");
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    return action ? action() : 2;
  } catch (const sc::ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
}
