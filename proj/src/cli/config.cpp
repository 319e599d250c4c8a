#include "symgrowth/cli.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>

namespace symgrowth::cli {

using nlohmann::json;

namespace {

const std::vector<std::pair<Experiment, std::string>> kNames = {
    {Experiment::Growth, "growth"},     {Experiment::Propagation, "propagation"},
    {Experiment::Delta, "delta"},       {Experiment::Spectrum, "spectrum"},
    {Experiment::Filling, "filling"},   {Experiment::Distortion, "distortion"},
    {Experiment::Certificate, "certificate"}, {Experiment::Appendix, "appendix"},
    {Experiment::Isoperimetric, "isoperimetric"}, {Experiment::All, "all"},
};

double positive_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(fmt::format("config.{} must be a number", key));
  const double x = v.get<double>();
  if (!(x > 0.0)) throw ConfigError(fmt::format("config.{} must be positive", key));
  return x;
}

long long positive_integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError(fmt::format("config.{} must be an integer", key));
  const auto x = v.get<long long>();
  if (x <= 0) throw ConfigError(fmt::format("config.{} must be positive", key));
  return x;
}

std::string string_value(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError(fmt::format("config.{} must be a string", key));
  return v.get<std::string>();
}

}  // namespace

std::string to_string(Experiment e) {
  for (const auto& [k, name] : kNames)
    if (k == e) return name;
  return "unknown";
}

Experiment experiment_from_string(const std::string& name) {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  throw ConfigError(fmt::format("unknown experiment '{}'", name));
}

json default_config_json() {
  return {
      {"version", 1},
      {"experiment", "all"},
      {"map",
       {{"model", "torus2"},
        {"params",
         {{"map", "skew_product"},
          {"alpha", 0.0},
          {"psi", {{"a0", 0.0}, {"cos", {0.0}}, {"sin", {0.15915494309189535}}}}}}}},
      {"lift", "skew_product"},
      {"x", json::array()},
      {"y", json::array()},
      {"hamiltonian", {{"m", 1}, {"epsilon", 0.5}, {"H", {0.1, -0.4}}, {"time", 1.0}}},
      {"filling_model", "torus2n"},
      {"half_dim", 1},
      {"s_grid", {0.5, 1.0, 2.0, 4.0, 8.0}},
      {"t", 8.0},
      {"q", 2},
      {"p", 1},
      {"n_max", 64},
      {"grid", 64},
      {"radius", 12},
      {"max_nodes", 20000000},
      {"tolerance", 1e-8},
      {"kappa", 10.0},
      {"contractible", 200},
      {"winding", 20},
      {"corpus", ""},
      {"out_dir", "symgrowth-out"},
      {"seed", 2024},
      {"jobs", 1},
  };
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  json merged = default_config_json();
  for (const auto& [key, value] : j.items()) {
    if (!merged.contains(key)) throw ConfigError(fmt::format("config: unknown key '{}'", key));
    merged[key] = value;
  }
  ExperimentConfig c;
  if (!merged["version"].is_number_integer() || merged["version"].get<int>() != 1)
    throw ConfigError("config.version must be 1");
  c.experiment = experiment_from_string(string_value(merged["experiment"], "experiment"));
  if (!merged["map"].is_object()) throw ConfigError("config.map must be an object");
  c.map = merged["map"];
  c.lift = string_value(merged["lift"], "lift");
  for (const char* key : {"x", "y"}) {
    if (!merged[key].is_array()) throw ConfigError(fmt::format("config.{} must be an array of numbers", key));
    auto& dst = std::string(key) == "x" ? c.x : c.y;
    for (const auto& v : merged[key]) {
      if (!v.is_number()) throw ConfigError(fmt::format("config.{} must be an array of numbers", key));
      dst.push_back(v.get<double>());
    }
  }
  if (c.x.size() != c.y.size()) throw ConfigError("config.x and config.y must have the same length");
  if (!merged["hamiltonian"].is_object()) throw ConfigError("config.hamiltonian must be an object");
  c.hamiltonian = merged["hamiltonian"];
  c.filling_model = string_value(merged["filling_model"], "filling_model");
  if (c.filling_model != "torus2n" && c.filling_model != "hyperbolic")
    throw ConfigError("config.filling_model must be 'torus2n' or 'hyperbolic'");
  c.half_dim = static_cast<int>(positive_integer(merged["half_dim"], "half_dim"));
  if (c.half_dim > 4) throw ConfigError("config.half_dim must lie in 1..4");
  if (!merged["s_grid"].is_array() || merged["s_grid"].empty()) throw ConfigError("config.s_grid must be a non-empty array");
  for (const auto& s : merged["s_grid"]) c.s_grid.push_back(positive_number(s, "s_grid"));
  for (std::size_t i = 1; i < c.s_grid.size(); ++i)
    if (!(c.s_grid[i] > c.s_grid[i - 1])) throw ConfigError("config.s_grid must be strictly increasing");
  c.t = positive_number(merged["t"], "t");
  if (!merged["q"].is_number_integer() || !merged["p"].is_number_integer() || merged["q"].get<long>() == 0 ||
      merged["p"].get<long>() == 0)
    throw ConfigError("config.q and config.p must be nonzero integers");
  c.q = merged["q"].get<long>();
  c.p = merged["p"].get<long>();
  c.n_max = static_cast<long>(positive_integer(merged["n_max"], "n_max"));
  c.grid = static_cast<int>(positive_integer(merged["grid"], "grid"));
  c.radius = static_cast<int>(positive_integer(merged["radius"], "radius"));
  if (c.radius > 255) throw ConfigError("config.radius must be at most 255");
  c.max_nodes = static_cast<std::size_t>(positive_integer(merged["max_nodes"], "max_nodes"));
  c.tolerance = positive_number(merged["tolerance"], "tolerance");
  c.kappa = positive_number(merged["kappa"], "kappa");
  c.contractible = static_cast<int>(positive_integer(merged["contractible"], "contractible"));
  if (!merged["winding"].is_number_integer() || merged["winding"].get<int>() < 0)
    throw ConfigError("config.winding must be a non-negative integer");
  c.winding = merged["winding"].get<int>();
  c.corpus = string_value(merged["corpus"], "corpus");
  c.out_dir = string_value(merged["out_dir"], "out_dir");
  if (!merged["seed"].is_number_integer() || merged["seed"].get<long long>() < 0)
    throw ConfigError("config.seed must be a non-negative integer");
  c.seed = merged["seed"].get<unsigned long>();
  c.jobs = static_cast<int>(positive_integer(merged["jobs"], "jobs"));
  return c;
}

ExperimentConfig default_config() { return parse_config(json::object()); }

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read config '{}'", path));
  std::stringstream ss;
  ss << in.rdbuf();
  json j;
  try {
    j = json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("malformed JSON in '{}': {}", path, e.what()));
  }
  return parse_config(j);
}

json to_json(const ExperimentConfig& c) {
  return {
      {"version", c.version},
      {"experiment", to_string(c.experiment)},
      {"map", c.map},
      {"lift", c.lift},
      {"x", c.x},
      {"y", c.y},
      {"hamiltonian", c.hamiltonian},
      {"filling_model", c.filling_model},
      {"half_dim", c.half_dim},
      {"s_grid", c.s_grid},
      {"t", c.t},
      {"q", c.q},
      {"p", c.p},
      {"n_max", c.n_max},
      {"grid", c.grid},
      {"radius", c.radius},
      {"max_nodes", c.max_nodes},
      {"tolerance", c.tolerance},
      {"kappa", c.kappa},
      {"contractible", c.contractible},
      {"winding", c.winding},
      {"corpus", c.corpus},
      {"out_dir", c.out_dir},
      {"seed", c.seed},
      {"jobs", c.jobs},
  };
}

}  // namespace symgrowth::cli
