#include "symgrowth/errors.hpp"
#include "symgrowth/map_zoo.hpp"

#include <fmt/format.h>

#include <set>

namespace symgrowth {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw PreconditionError(where + ": expected an object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) throw PreconditionError(fmt::format("{}: unknown key '{}'", where, key));
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw PreconditionError(fmt::format("{}: missing key '{}'", where, key));
  return obj.at(key);
}

double number(const json& v, const std::string& what) {
  if (!v.is_number()) throw PreconditionError(what + " must be a number");
  return v.get<double>();
}

std::vector<double> numbers(const json& v, const std::string& what) {
  if (!v.is_array()) throw PreconditionError(what + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(number(e, what));
  return out;
}

Mat matrix(const json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) throw PreconditionError(what + " must be a non-empty array of rows");
  const auto rows = static_cast<int>(v.size());
  if (rows > kMaxDim) throw PreconditionError(what + " is too large");
  Mat m(rows, rows);
  for (int i = 0; i < rows; ++i) {
    const auto row = numbers(v[static_cast<std::size_t>(i)], what);
    if (static_cast<int>(row.size()) != rows) throw PreconditionError(what + " must be square");
    for (int j = 0; j < rows; ++j) m(i, j) = row[static_cast<std::size_t>(j)];
  }
  return m;
}

FourierSeries fourier(const json& v) {
  reject_unknown(v, {"a0", "cos", "sin"}, "psi");
  const double a0 = v.contains("a0") ? number(v["a0"], "psi.a0") : 0.0;
  auto c = v.contains("cos") ? numbers(v["cos"], "psi.cos") : std::vector<double>{};
  auto s = v.contains("sin") ? numbers(v["sin"], "psi.sin") : std::vector<double>{};
  return FourierSeries(a0, std::move(c), std::move(s));
}

SymplecticMap torus_member(const json& params, int dim, std::set<std::string> allowed) {
  const std::string kind = require(params, "map", "params").get<std::string>();
  if (kind == "translation") {
    allowed.insert({"map", "e"});
    reject_unknown(params, allowed, "params");
    const auto e = numbers(require(params, "e", "params"), "e");
    if (static_cast<int>(e.size()) != dim) throw PreconditionError(fmt::format("e must have {} entries", dim));
    return translation_map(make_vec(e));
  }
  if (kind == "linear") {
    allowed.insert({"map", "A"});
    reject_unknown(params, allowed, "params");
    const Mat a = matrix(require(params, "A", "params"), "A");
    if (a.rows() != dim) throw PreconditionError(fmt::format("A must be {}x{}", dim, dim));
    return linear_torus_map(a);
  }
  if (kind == "skew_product" && dim == 2) {
    allowed.insert({"map", "alpha", "psi"});
    reject_unknown(params, allowed, "params");
    return skew_product_map(number(require(params, "alpha", "params"), "alpha"),
                            fourier(require(params, "psi", "params")));
  }
  throw PreconditionError(fmt::format("unknown torus map '{}' in dimension {}", kind, dim));
}

}  // namespace

SymplecticMap map_from_json(const json& spec) {
  reject_unknown(spec, {"model", "params"}, "map");
  const auto& model_v = require(spec, "model", "map");
  if (!model_v.is_string()) throw PreconditionError("map.model must be a string");
  const std::string model = model_v.get<std::string>();
  const json params = spec.contains("params") ? spec["params"] : json::object();
  if (!params.is_object()) throw PreconditionError("map.params must be an object");
  try {
    if (model == "torus2") return torus_member(params, 2, {});
    if (model == "torus2n") {
      const auto& nv = require(params, "n", "params");
      if (!nv.is_number_integer() || nv.get<int>() < 1 || 2 * nv.get<int>() > kMaxDim)
        throw PreconditionError(fmt::format("params.n must be an integer in [1, {}]", kMaxDim / 2));
      return torus_member(params, 2 * nv.get<int>(), {"n"});
    }
    if (model == "twist_cylinder") {
      reject_unknown(params, {"m", "epsilon", "H", "time"}, "params");
      const auto& mv = require(params, "m", "params");
      if (!mv.is_number_integer()) throw PreconditionError("params.m must be an integer");
      const double eps = number(require(params, "epsilon", "params"), "epsilon");
      const auto core = numbers(require(params, "H", "params"), "H");
      const double time = params.contains("time") ? number(params["time"], "time") : 1.0;
      return twist_map(TwistHamiltonian(mv.get<int>(), eps, Polynomial(core)), time);
    }
    if (model == "quotient_t4") {
      reject_unknown(params, {"lift"}, "params");
      const std::string lift = params.contains("lift") ? params["lift"].get<std::string>() : "f1";
      if (lift == "f1") return appendix_flow(1.0);
      if (lift == "gamma") return appendix_gamma();
      if (lift == "gamma_f1") return appendix_gamma_flow();
      throw PreconditionError(fmt::format("unknown quotient_t4 lift '{}'", lift));
    }
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("malformed map parameters: ") + e.what());
  }
  throw PreconditionError(fmt::format("unknown model '{}'", model));
}

json zoo_schema() {
  return json::array({
      {{"model", "torus2"},
       {"maps",
        {{{"map", "translation"}, {"e", "[e1, e2]"}},
         {{"map", "linear"}, {"A", "2x2 integer matrix, det 1"}},
         {{"map", "skew_product"},
          {"alpha", "rotation number"},
          {"psi", "{a0, cos: [...], sin: [...]} Fourier coefficients of psi(x)"}}}}},
      {{"model", "torus2n"},
       {"params", {{"n", "half dimension, 1..4"}}},
       {"maps",
        {{{"map", "translation"}, {"e", "vector of length 2n"}},
         {{"map", "linear"}, {"A", "2n x 2n integer symplectic matrix"}}}}},
      {{"model", "twist_cylinder"},
       {"params",
        {{"m", "1..4"},
         {"epsilon", "disc radius"},
         {"H", "core polynomial coefficients in s = |p|^2, cut off by the bump"},
         {"time", "time of the flow (default 1)"}}}},
      {{"model", "quotient_t4"}, {"params", {{"lift", "f1 | gamma | gamma_f1"}}}},
  });
}

}  // namespace symgrowth
