#include "symgrowth/action.hpp"
#include "symgrowth/cli.hpp"
#include "symgrowth/errors.hpp"
#include "symgrowth/filling.hpp"
#include "symgrowth/groups.hpp"
#include "symgrowth/growth.hpp"
#include "symgrowth/map_zoo.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

namespace symgrowth::cli {

using nlohmann::json;

namespace {

const double kPi = std::numbers::pi;

struct Verdict {
  bool pass = false;
  json values;
};

// Times `body`; a library exception becomes a failing record carrying the message.
CheckRecord check(const std::string& id, const std::string& tag, const std::string& target,
                  const std::function<Verdict()>& body) {
  CheckRecord rec{id, tag, json::object(), target, false, 0.0};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    auto v = body();
    rec.pass = v.pass;
    rec.values = std::move(v.values);
  } catch (const std::exception& e) {
    rec.values = {{"error", e.what()}};
  }
  rec.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

// Model construction errors are configuration errors.
template <class F>
auto build(const std::string& what, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const PreconditionError& e) {
    throw ConfigError(fmt::format("{}: {}", what, e.what()));
  } catch (const DomainError& e) {
    throw ConfigError(fmt::format("{}: {}", what, e.what()));
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("{}: {}", what, e.what()));
  }
}

std::string num(double x) { return format_number(x); }

Vec to_vec(const std::vector<double>& v) {
  Vec out(static_cast<int>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<int>(i)) = v[i];
  return out;
}

LiftedMap find_lift(const std::string& id) {
  for (auto& lift : standard_lifts())
    if (lift.id() == id) return lift;
  std::string known;
  for (const auto& lift : standard_lifts()) known += " " + lift.id();
  throw ConfigError(fmt::format("unknown lift '{}' (known:{})", id, known));
}

TwistHamiltonian hamiltonian_from_json(const json& j) {
  for (const auto& [key, _] : j.items())
    if (key != "m" && key != "epsilon" && key != "H" && key != "time")
      throw ConfigError(fmt::format("hamiltonian: unknown key '{}'", key));
  return build("hamiltonian", [&] {
    const int m = j.at("m").get<int>();
    const double eps = j.at("epsilon").get<double>();
    return TwistHamiltonian(m, eps, Polynomial(j.at("H").get<std::vector<double>>()));
  });
}

double hamiltonian_time(const json& j) { return j.contains("time") ? j.at("time").get<double>() : 1.0; }

// Lift and fixed pair for delta and the certificate.
struct Pair {
  LiftedMap lift;
  Vec x;
  Vec y;
};

Pair fixed_pair(const ExperimentConfig& c) {
  if (!c.x.empty()) {
    return build("delta pair", [&] {
      const auto map = map_from_json(c.map);
      const Vec x = to_vec(c.x), y = to_vec(c.y);
      return Pair{LiftedMap(map, Vec::Zero(map.dim()), {x, y}, map.name()), x, y};
    });
  }
  auto lift = find_lift(c.lift);
  if (lift.fixed_points().size() < 2)
    throw ConfigError(fmt::format("lift '{}' has fewer than two listed fixed points", c.lift));
  const Vec x = lift.fixed_points()[0], y = lift.fixed_points()[1];
  return Pair{std::move(lift), x, y};
}

FillingSetting filling_setting(const ExperimentConfig& c) {
  return c.filling_model == "hyperbolic" ? FillingSetting::hyperbolic() : FillingSetting::torus(2 * c.half_dim);
}

// Shear norm of [[1, 0], [c, 1]]: the exact Gamma_n of the standard skew product.
double shear_norm(double c) { return (std::abs(c) + std::sqrt(c * c + 4.0)) / 2.0; }

// ---- experiments --------------------------------------------------------------

void growth_experiment(const ExperimentConfig& c, Report& r) {
  const auto map = build("map", [&] { return map_from_json(c.map); });
  GrowthSeries gs;
  r.checks.push_back(check("gamma-at-least-one", "growth-sequence", "min Gamma_n >= 1", [&] {
    gs = growth_sequence(map, static_cast<int>(c.n_max), c.grid, c.jobs);
    double lo = std::numeric_limits<double>::infinity();
    for (double g : gs.values) lo = std::min(lo, g);
    return Verdict{lo >= 1.0, {{"map", map.name()}, {"min_gamma", lo}, {"grid_points", gs.grid_points}}};
  }));
  if (gs.values.size() >= 16) {
    r.checks.push_back(check("growth-type", "growth-sequence", "classification reported", [&] {
      const auto cls = classify_growth(gs.values);
      return Verdict{true,
                     {{"type", to_string(cls.type)}, {"rate", cls.rate}, {"degree", cls.degree}, {"heuristic", true}}};
    }));
  }
  Series s{"growth", "growth-sequence", {"n", "gamma_n", "error_bar"}, {}, {"n", "gamma_n"}};
  for (std::size_t k = 0; k < gs.values.size(); ++k)
    s.rows.push_back({std::to_string(k + 1), num(gs.values[k]), num(gs.error_bars[k])});
  r.series.push_back(std::move(s));
}

void propagation_experiment(const ExperimentConfig& c, Report& r) {
  const auto lift = find_lift(c.lift);
  const int dim = lift.base().dim();
  // Propagation samples the full fundamental domain, so the grid is capped per dimension.
  const int pgrid = std::min(c.grid, dim <= 2 ? 32 : 8);
  GrowthSeries gs;
  PropagationSeries ps;
  r.checks.push_back(check("propagation-inequality", "propagation-inequality",
                           "d_n <= (1 + diam) (Gamma_n + error bar) for all n", [&] {
    gs = growth_sequence(lift.base(), static_cast<int>(c.n_max), c.grid, c.jobs);
    ps = propagation(lift, static_cast<int>(c.n_max), pgrid);
    const double k = 1.0 + lift.fundamental_domain().diameter();
    double worst = 0.0;
    for (long n = 1; n <= c.n_max; ++n)
      worst = std::max(worst, ps.values[static_cast<std::size_t>(n - 1)] / (k * gs.upper(static_cast<int>(n))));
    return Verdict{worst <= 1.0, {{"lift", lift.id()}, {"constant", k}, {"max_ratio", worst}}};
  }));
  Series s{"propagation", "propagation-inequality", {"n", "gamma_n", "error_bar", "dn"}, {}, {"n", "gamma_n", "dn"}};
  for (std::size_t k = 0; k < ps.values.size(); ++k)
    s.rows.push_back({std::to_string(k + 1), num(gs.values[k]), num(gs.error_bars[k]), num(ps.values[k])});
  r.series.push_back(std::move(s));
}

void delta_experiment(const ExperimentConfig& c, Report& r) {
  const auto pair = fixed_pair(c);
  std::vector<ActionRecord> recs;
  r.checks.push_back(check("iterate-scaling", "iterate-scaling",
                           fmt::format("max |delta_n / (n delta_1) - 1| < {}", c.tolerance), [&] {
    double worst = 0.0;
    for (long n = 1; n <= c.n_max; ++n) recs.push_back(action_difference(pair.lift, pair.x, pair.y, n));
    const double d1 = recs[0].value;
    if (std::abs(d1) <= 1e-12) return Verdict{false, {{"delta_1", d1}, {"error", "delta_1 vanishes"}}};
    for (std::size_t k = 0; k < recs.size(); ++k)
      worst = std::max(worst, std::abs(recs[k].value / (static_cast<double>(k + 1) * d1) - 1.0));
    return Verdict{worst < c.tolerance, {{"lift", pair.lift.id()}, {"delta_1", d1}, {"max_relative_error", worst}}};
  }));
  r.checks.push_back(check("delta-well-defined", "delta-well-defined",
                           fmt::format("curves and primitives agree within {}", c.tolerance), [&] {
    Vec mid = 0.5 * (pair.x + pair.y);
    mid(1) += 0.3;
    Polyline bent;
    bent.vertices = {pair.x, mid, pair.y};
    bent.id = "bent";
    const int dim = static_cast<int>(pair.x.size());
    const auto ref = action_difference(pair.lift, pair.x, pair.y, segment_polyline(pair.x, pair.y),
                                       PrimitiveForm::standard(dim)).value;
    double spread = 0.0;
    for (const auto& alpha : {PrimitiveForm::standard(dim), PrimitiveForm::standard_dual(dim)})
      for (const auto& gamma : {segment_polyline(pair.x, pair.y), bent})
        spread = std::max(spread, std::abs(action_difference(pair.lift, pair.x, pair.y, gamma, alpha).value - ref));
    return Verdict{spread < c.tolerance, {{"delta", ref}, {"max_deviation", spread}}};
  }));
  Series s{"delta", "iterate-scaling", {"n", "delta_n", "quadrature_error"}, {}, {"n", "delta_n"}};
  for (std::size_t k = 0; k < recs.size(); ++k)
    s.rows.push_back({std::to_string(k + 1), num(recs[k].value), num(recs[k].error)});
  r.series.push_back(std::move(s));
}

void spectrum_experiment(const ExperimentConfig& c, Report& r) {
  const auto h = hamiltonian_from_json(c.hamiltonian);
  const double time = build("hamiltonian.time", [&] { return hamiltonian_time(c.hamiltonian); });
  std::vector<double> widths;
  r.checks.push_back(check("width-scaling", "width-scaling",
                           fmt::format("|width(f^n) - n width(f)| <= {}", c.tolerance), [&] {
    const auto one = hamiltonian_action_spectrum(h, time);
    double worst = 0.0;
    for (long n = 1; n <= c.n_max; ++n) {
      widths.push_back(hamiltonian_action_spectrum(h, time * static_cast<double>(n)).width);
      worst = std::max(worst, std::abs(widths.back() - static_cast<double>(n) * one.width));
    }
    return Verdict{worst <= c.tolerance,
                   {{"width", one.width}, {"mean", one.mean}, {"actions", one.actions}, {"max_error", worst}}};
  }));
  r.checks.push_back(check("width-conjugation", "width-conjugation",
                           fmt::format("|width(g f g^-1) - width(f)| <= {}", c.tolerance), [&] {
    const auto g = cylinder_translation(h.m(), h.epsilon(), Vec::Constant(h.m(), 0.37));
    const auto rep = width_conjugation_check(h, time, g);
    const double diff = std::abs(rep.conjugated_width - rep.width);
    return Verdict{diff <= c.tolerance, {{"width", rep.width},
                                         {"conjugated_width", rep.conjugated_width},
                                         {"fixed_points", rep.fixed_points}}};
  }));
  Series s{"spectrum", "width-scaling", {"n", "width"}, {}, {}};
  for (std::size_t k = 0; k < widths.size(); ++k) s.rows.push_back({std::to_string(k + 1), num(widths[k])});
  r.series.push_back(std::move(s));
}

void filling_experiment(const ExperimentConfig& c, Report& r) {
  const auto setting = filling_setting(c);
  FillingEstimate est;
  r.checks.push_back(check("filling-bounds", "filling-bounds", "u_lo <= u_hi on the grid", [&] {
    est = estimate_filling(setting, c.s_grid);
    return Verdict{estimate_consistent(est), {{"model", c.filling_model}, {"s", c.s_grid}}};
  }));
  if (est.s_grid.empty()) return;
  if (c.filling_model == "torus2n") {
    r.checks.push_back(check("torus-linear", "torus-filling", "0.49 s <= u_lo and u_hi <= 1.01 s", [&] {
      double lo = 1e300, hi = 0.0;
      for (std::size_t i = 0; i < est.s_grid.size(); ++i) {
        lo = std::min(lo, est.u_lo[i] / est.s_grid[i]);
        hi = std::max(hi, est.u_hi[i] / est.s_grid[i]);
      }
      return Verdict{lo >= 0.49 && hi <= 1.01, {{"min_u_lo_over_s", lo}, {"max_u_hi_over_s", hi}}};
    }));
    r.checks.push_back(check("v-interval", "filling-bounds", fmt::format("v({}) interval reported", c.t), [&] {
      const auto v = v_from_u(with_homogeneous_extension(est), c.t);
      return Verdict{v.lo <= v.hi, {{"t", c.t}, {"v_lo", v.lo}, {"v_hi", v.hi}}};
    }));
  } else {
    r.checks.push_back(check("hyperbolic-bounded", "hyperbolic-filling", "u_hi <= 1.001", [&] {
      double hi = 0.0;
      for (double u : est.u_hi) hi = std::max(hi, u);
      return Verdict{hi <= 1.001, {{"max_u_hi", hi}}};
    }));
  }
  Series s{"filling", "filling-bounds", {"s", "u_lo", "u_hi", "w_lo", "w_hi"}, {}, {}};
  for (std::size_t i = 0; i < est.s_grid.size(); ++i)
    s.rows.push_back({num(est.s_grid[i]), num(est.u_lo[i]), num(est.u_hi[i]), num(est.w_lo(i)), num(est.w_hi(i))});
  r.series.push_back(std::move(s));
}

void distortion_experiment(const ExperimentConfig& c, Report& r) {
  const auto P = build("presentation", [&] { return Presentation::bs(c.q, c.p); });
  const bool constructible = (P.q > P.p && P.p > 0) || (P.q < P.p && P.p < 0);
  DistortionProfile prof;
  r.checks.push_back(check("length-bounds", "log-distortion",
                           constructible ? "||a^n|| <= construction bound, ||a^{n+1}|| <= ||a^n|| + 1"
                                         : "||a^{n+1}|| <= ||a^n|| + 1",
                           [&] {
    prof = distortion_profile(P, c.n_max, c.radius, c.max_nodes);
    bool ok = true;
    std::size_t exact = 0;
    for (std::size_t i = 0; i < prof.entries.size(); ++i) {
      const auto& e = prof.entries[i];
      exact += e.exact;
      if (constructible) ok = ok && static_cast<double>(e.length) <= construction_length_bound(P, e.n);
      if (i + 1 < prof.entries.size()) ok = ok && prof.entries[i + 1].length <= e.length + 1;
    }
    return Verdict{ok, {{"presentation", P.name()},
                        {"exact", exact},
                        {"bfs_radius", prof.bfs_radius},
                        {"ball_size", prof.ball_size},
                        {"truncated", prof.truncated}}};
  }));
  if (constructible) {
    r.checks.push_back(check("constructed-words", "log-distortion", "W(2^k) reduces to a^{2^k}, k <= 20", [&] {
      bool ok = true;
      json lengths = json::array();
      for (int k = 1; k <= 20; ++k) {
        const BigInt n = BigInt(1) << k;
        const auto w = log_word_construct(P, n);
        ok = ok && britton_reduce(w * GroupWord::power(Generator::a, -n), P).empty();
        lengths.push_back(static_cast<long>(w.length()));
      }
      return Verdict{ok, {{"lengths", lengths}}};
    }));
  }
  if (!prof.entries.empty() && prof.liminf_at > 0) {
    r.checks.push_back(check("liminf-estimate", "u-element", "estimate reported (not a proof)", [&] {
      return Verdict{std::isfinite(prof.liminf_estimate),
                     {{"liminf_estimate", prof.liminf_estimate}, {"attained_at", prof.liminf_at}}};
    }));
  }
  Series s{"distortion", "log-distortion", {"n", "exact_or_bound", "kind", "witness_word"}, {}, {"n", "exact_or_bound", "kind"}};
  for (const auto& e : prof.entries)
    s.rows.push_back({std::to_string(e.n), std::to_string(e.length), e.exact ? "exact" : "bound", e.witness});
  r.series.push_back(std::move(s));
}

void certificate_experiment(const ExperimentConfig& c, Report& r) {
  const auto pair = fixed_pair(c);
  std::vector<double> certs;
  GrowthSeries gs;
  r.checks.push_back(check("certificate-below-gamma", "certificate", "cert_n <= Gamma_n + error bar", [&] {
    const auto filling = with_homogeneous_extension(estimate_filling(FillingSetting::torus(pair.lift.base().dim()), c.s_grid));
    gs = growth_sequence(pair.lift.base(), static_cast<int>(c.n_max), c.grid, c.jobs);
    const auto gamma = segment_polyline(pair.x, pair.y);
    double margin = std::numeric_limits<double>::infinity();
    for (long n = 1; n <= c.n_max; ++n) {
      certs.push_back(lower_bound_certificate(pair.lift, pair.x, pair.y, gamma, n, filling));
      margin = std::min(margin, gs.upper(static_cast<int>(n)) - certs.back());
    }
    return Verdict{margin >= 0.0, {{"lift", pair.lift.id()}, {"min_margin", margin}}};
  }));
  if (certs.size() >= 8) {
    r.checks.push_back(check("certificate-sqrt-growth", "certificate", "cert_n / sqrt(n) within a factor 2 for n >= 4", [&] {
      double lo = 1e300, hi = 0.0;
      for (std::size_t k = 3; k < certs.size(); ++k) {
        const double q = certs[k] / std::sqrt(static_cast<double>(k + 1));
        lo = std::min(lo, q);
        hi = std::max(hi, q);
      }
      return Verdict{lo > 0.0 && lo >= 0.5 * hi, {{"min_ratio", lo}, {"max_ratio", hi}}};
    }));
  }
  Series s{"certificate", "certificate", {"n", "certificate", "gamma_upper"}, {}, {}};
  for (std::size_t k = 0; k < certs.size(); ++k)
    s.rows.push_back({std::to_string(k + 1), num(certs[k]), num(gs.upper(static_cast<int>(k + 1)))});
  r.series.push_back(std::move(s));
}

bool torus_equal(const Vec& a, const Vec& b, double tol) {
  for (int i = 0; i < a.size(); ++i) {
    const double d = a(i) - b(i);
    if (std::abs(d - std::round(d)) > tol) return false;
  }
  return true;
}

CheckRecord appendix_check(unsigned long seed) {
  return check("appendix", "appendix", "involutions, commutation, fixed set, bounded Gamma_n, H_1 obstruction", [&] {
    const auto f1 = appendix_flow(1.0);
    const auto gamma = appendix_gamma();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    bool inv = true, comm = true;
    for (int s = 0; s < 1000; ++s) {
      const Vec z = make_vec({u(rng), u(rng), u(rng), u(rng)});
      inv = inv && torus_equal(f1.evaluate(f1.evaluate(z)), z, 1e-12) &&
            torus_equal(gamma.evaluate(gamma.evaluate(z)), z, 1e-12);
      comm = comm && torus_equal(f1.evaluate(gamma.evaluate(z)), gamma.evaluate(f1.evaluate(z)), 1e-12);
    }
    bool fixed = true;
    for (const auto& t : appendix_fixed_point_set()) fixed = fixed && t.verified;
    const auto g = growth_sequence(appendix_gamma_flow(), 64, 8);
    double gmax = 0.0;
    for (double v : g.values) gmax = std::max(gmax, v);
    const auto rep = appendix_contractible_obstruction();
    Eigen::Matrix4i expect = Eigen::Matrix4i::Identity();
    expect(2, 2) = expect(3, 3) = -1;
    int fixing = 0;
    bool diag = true;
    for (const auto& l : rep.lifts) {
      if (!l.fixes_fixed_set_point) continue;
      ++fixing;
      diag = diag && l.h1_action == expect && !l.acts_as_identity;
    }
    const bool ok = inv && comm && fixed && gmax <= g.gamma(1) + 1e-12 && fixing == 1 && diag &&
                    rep.no_contractible_witness;
    return Verdict{ok, {{"involutions", inv},
                        {"commute", comm},
                        {"fixed_set_verified", fixed},
                        {"max_gamma_n", gmax},
                        {"point_fixing_lifts", fixing},
                        {"h1_diag_1_1_m1_m1", diag}}};
  });
}

std::vector<Polyline> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read corpus '{}'", path));
  std::stringstream ss;
  ss << in.rdbuf();
  return build("corpus", [&] {
    const json j = json::parse(ss.str());
    if (!j.is_array()) throw PreconditionError("corpus must be an array of loops");
    std::vector<Polyline> out;
    for (const auto& item : j) {
      Polyline c;
      c.closed = true;
      const json& verts = item.is_object() ? item.at("vertices") : item;
      c.id = item.is_object() && item.contains("id") ? item["id"].get<std::string>() : fmt::format("loop{}", out.size());
      for (const auto& v : verts) {
        const auto xy = v.get<std::vector<double>>();
        if (xy.size() != 2) throw PreconditionError("corpus vertices must be [x, y] pairs");
        c.vertices.push_back(make_vec({xy[0], xy[1]}));
      }
      if (c.vertices.size() < 3) throw PreconditionError("corpus loops need at least 3 vertices");
      out.push_back(std::move(c));
    }
    return out;
  });
}

void isoperimetric_experiment(const ExperimentConfig& c, Report& r) {
  const bool generated = c.corpus.empty();
  const auto corpus = generated ? generate_loop_corpus(static_cast<unsigned>(c.seed), c.contractible, c.winding)
                                : load_corpus(c.corpus);
  Series s{"isoperimetric", "isoperimetric", {"loop", "accepted", "ratio"}, {}, {}};
  r.checks.push_back(check("isoperimetric-corpus", "isoperimetric",
                           fmt::format("|int alpha| <= {} length on accepted loops; winding loops rejected", c.kappa),
                           [&] {
    const auto res = isoperimetric_corpus(Lattice::integer(), corpus, c.kappa);
    for (const auto& loop : corpus) {
      try {
        const auto one = isoperimetric_consistency(Lattice::integer(), loop, c.kappa);
        s.rows.push_back({loop.id, "1", num(one.ratio)});
      } catch (const PreconditionError&) {
        s.rows.push_back({loop.id, "0", ""});
      }
    }
    bool ok = res.all_hold && std::isfinite(res.max_ratio);
    if (generated)
      ok = ok && res.accepted == static_cast<std::size_t>(c.contractible) &&
           res.rejected == static_cast<std::size_t>(c.winding);
    return Verdict{ok, {{"accepted", res.accepted}, {"rejected", res.rejected}, {"max_ratio", res.max_ratio}}};
  }));
  r.series.push_back(std::move(s));
}

}  // namespace

// ---- verify-all -------------------------------------------------------------------

Report verify_all(const ExperimentConfig& config) {
  Report r;
  r.experiment = "all";
  r.config = to_json(config);
  const int jobs = config.jobs;
  const auto skew = skew_product_lift();
  const Vec x = make_vec({0.0, 0.3}), y = make_vec({0.5, 0.3});

  r.checks.push_back(check("criterion-1", "iterate-scaling", "max_{n<=64} |delta_n/(n delta_1) - 1| < 1e-8, < 5 s", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const double err = verify_iterate_scaling(skew, x, y, 64);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return Verdict{err < 1e-8 && secs < 5.0, {{"max_relative_error", err}, {"seconds", secs}}};
  }));

  r.checks.push_back(check("criterion-2", "delta-well-defined", "two curves x two primitives agree within 1e-9", [&] {
    Polyline bent;
    bent.vertices = {x, make_vec({0.25, 0.7}), make_vec({0.4, 0.1}), y};
    const double ref = action_difference(skew, x, y, segment_polyline(x, y), PrimitiveForm::standard(2)).value;
    double spread = 0.0;
    for (const auto& alpha : {PrimitiveForm::standard(2), PrimitiveForm::standard_dual(2)})
      for (const auto& gamma : {segment_polyline(x, y), bent})
        spread = std::max(spread, std::abs(action_difference(skew, x, y, gamma, alpha).value - ref));
    return Verdict{spread < 1e-9, {{"delta", ref}, {"max_deviation", spread}}};
  }));

  const std::vector<double> grid{0.5, 1, 2, 4, 8};
  std::optional<FillingEstimate> torus_ext;
  r.checks.push_back(check("criterion-3", "torus-filling", "u_lo >= 0.49 s, u_hi <= 1.01 s, v(8) contains [2.83, 4.0], < 30 s", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto est = estimate_filling(FillingSetting::torus(2), grid);
    double lo = 1e300, hi = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      lo = std::min(lo, est.u_lo[i] / grid[i]);
      hi = std::max(hi, est.u_hi[i] / grid[i]);
    }
    torus_ext = with_homogeneous_extension(est);
    const auto v = v_from_u(*torus_ext, 8.0);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return Verdict{lo >= 0.49 && hi <= 1.01 && v.lo <= 2.83 && v.hi >= 4.0 && secs < 30.0,
                   {{"min_u_lo_over_s", lo}, {"max_u_hi_over_s", hi}, {"v_lo", v.lo}, {"v_hi", v.hi}, {"seconds", secs}}};
  }));

  r.checks.push_back(check("criterion-4", "hyperbolic-filling", "u_hi(s) <= 1.001 for s in [1, 10]", [&] {
    const auto setting = FillingSetting::hyperbolic();
    const auto cands = default_candidates(setting);
    double worst = 0.0;
    for (int k = 0; k <= 18; ++k) worst = std::max(worst, u_upper(setting, 1.0 + 0.5 * k, cands));
    return Verdict{worst <= 1.001, {{"max_u_hi", worst}}};
  }));

  r.checks.push_back(check("criterion-5", "growth-laws",
                           "translation Gamma_n = 1 (n <= 256); skew within 1e-6 of shear(n) (n <= 100); "
                           "twist Gamma_n/n within 5% of max|H''| (50 <= n <= 200)",
                           [&] {
    const auto tr = growth_sequence(translation_map(make_vec({0.5, 0.25})), 256, 8, jobs);
    bool trans = true;
    for (double g : tr.values) trans = trans && g == 1.0;
    const auto sk = growth_sequence(skew.base(), 100, 64, jobs);
    double sk_err = 0.0;
    for (int n = 1; n <= 100; ++n) sk_err = std::max(sk_err, std::abs(sk.gamma(n) - shear_norm(n)));
    const auto h = default_twist_hamiltonian();
    // max |H''| over the disc from the certified piecewise profile: H'' = 2 G' + 4 s G''.
    double slope = 0.0;
    for (int i = 0; i <= 200000; ++i) {
      const double p = h.epsilon() * i / 200000.0;
      const double s = p * p;
      slope = std::max(slope, std::abs(2 * h.profile(s, 1) + 4 * s * h.profile(s, 2)));
    }
    const auto tw = growth_sequence(twist_map(h), 200, 4096, jobs);
    double dev = 0.0;
    for (int n = 50; n <= 200; ++n) dev = std::max(dev, std::abs(tw.gamma(n) / n - slope) / slope);
    return Verdict{trans && sk_err <= 1e-6 && dev <= 0.05, {{"translation_bounded", trans},
                                                            {"skew_max_error", sk_err},
                                                            {"gamma_100", sk.gamma(100)},
                                                            {"twist_slope", slope},
                                                            {"twist_max_relative_deviation", dev}}};
  }));

  r.checks.push_back(check("criterion-6", "certificate", "cert_n <= Gamma_n + error bar (n <= 100), cert_n ~ sqrt(n)", [&] {
    if (!torus_ext) torus_ext = with_homogeneous_extension(estimate_filling(FillingSetting::torus(2), grid));
    const auto g = growth_sequence(skew.base(), 100, 64, jobs);
    double margin = 1e300, lo = 1e300, hi = 0.0;
    for (long n = 1; n <= 100; ++n) {
      const double cert = lower_bound_certificate(skew, x, y, segment_polyline(x, y), n, *torus_ext);
      margin = std::min(margin, g.upper(static_cast<int>(n)) - cert);
      if (n >= 4) {
        lo = std::min(lo, cert / std::sqrt(static_cast<double>(n)));
        hi = std::max(hi, cert / std::sqrt(static_cast<double>(n)));
      }
    }
    return Verdict{margin >= 0.0 && lo > 0.0 && lo >= 0.5 * hi,
                   {{"min_margin", margin}, {"cert_over_sqrt_n_min", lo}, {"cert_over_sqrt_n_max", hi}}};
  }));

  r.checks.push_back(check("criterion-7", "propagation-inequality", "d_n <= (1 + diam) Gamma_n on every lift, n <= 64", [&] {
    json per = json::object();
    bool ok = true;
    for (const auto& lift : standard_lifts()) {
      const auto g = growth_sequence(lift.base(), 64, 32, jobs);
      const auto d = propagation(lift, 64, 8);
      const double k = 1.0 + lift.fundamental_domain().diameter();
      double worst = 0.0;
      for (int n = 1; n <= 64; ++n) worst = std::max(worst, d.values[static_cast<std::size_t>(n - 1)] / (k * g.upper(n)));
      ok = ok && worst <= 1.0;
      per[lift.id()] = worst;
    }
    return Verdict{ok, {{"max_ratio_per_lift", per}}};
  }));

  r.checks.push_back(check("criterion-8", "width-scaling", "|width(f^n) - n h0| <= 1e-9 (n <= 32), conjugation within 1e-9", [&] {
    const auto h = default_twist_hamiltonian();
    const double h0 = 0.1;
    double scale = 0.0, conj = 0.0;
    for (int n = 1; n <= 32; ++n) scale = std::max(scale, std::abs(hamiltonian_action_spectrum(h, n).width - n * h0));
    const auto shift = cylinder_translation(1, h.epsilon(), make_vec({0.37}));
    for (double n : {1.0, 2.0, 5.0, 32.0}) {
      const auto rep = width_conjugation_check(h, n, shift);
      conj = std::max(conj, std::abs(rep.conjugated_width - rep.width));
    }
    return Verdict{scale <= 1e-9 && conj <= 1e-9, {{"max_scaling_error", scale}, {"max_conjugation_error", conj}}};
  }));

  r.checks.push_back(check("criterion-9", "log-distortion",
                           "BS(2,1): exact ||a^n|| <= 2 log2 n + 3 (n <= 64, radius 12); |W(2^k)| <= 3k + 5, < 60 s", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto P = Presentation::bs(2, 1);
    const auto prof = distortion_profile(P, 64, 12);
    std::size_t exact = 0;
    double worst = -1e300;
    for (const auto& e : prof.entries) {
      if (!e.exact) continue;
      ++exact;
      worst = std::max(worst, e.length - (2.0 * std::log2(static_cast<double>(e.n)) + 3.0));
    }
    bool words = true;
    for (int k = 1; k <= 20; ++k) {
      const BigInt n = BigInt(1) << k;
      const auto w = log_word_construct(P, n);
      words = words && britton_reduce(w * GroupWord::power(Generator::a, -n), P).empty() && w.length() <= 3 * k + 5;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return Verdict{worst <= 0.0 && words && secs < 60.0,
                   {{"exact_at_radius_12", exact}, {"max_excess", worst}, {"words_ok", words}, {"seconds", secs}}};
  }));

  r.checks.push_back(appendix_check(config.seed));
  r.checks.back().check_id = "criterion-10";

  r.checks.push_back(check("criterion-11", "isoperimetric", "200 zero-winding loops accepted with finite ratio, 20 winding loops rejected", [&] {
    const auto res = isoperimetric_corpus(Lattice::integer(), generate_loop_corpus(static_cast<unsigned>(config.seed), 200, 20), 10.0);
    return Verdict{res.accepted == 200 && res.rejected == 20 && std::isfinite(res.max_ratio) && res.all_hold,
                   {{"accepted", res.accepted}, {"rejected", res.rejected}, {"max_ratio", res.max_ratio}}};
  }));

  r.checks.push_back(check("criterion-12", "flux-criterion", "flux = 0 iff int psi = 0 (tolerance 1e-10), 20 random psi", [&] {
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> coef(-0.2, 0.2);
    int agree = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const double mean = trial % 2 ? 0.0 : 0.05 + std::abs(coef(rng));
      const FourierSeries psi(mean, {coef(rng), coef(rng), coef(rng)}, {coef(rng), coef(rng)});
      agree += (flux_of_path(shear_path(psi)).norm() <= 1e-10) == (mean == 0.0);
    }
    return Verdict{agree == 20, {{"agreeing", agree}}};
  }));
  return r;
}

Report run(const ExperimentConfig& config) {
  if (config.experiment == Experiment::All) return verify_all(config);
  Report r;
  r.experiment = to_string(config.experiment);
  r.config = to_json(config);
  switch (config.experiment) {
    case Experiment::Growth: growth_experiment(config, r); break;
    case Experiment::Propagation: propagation_experiment(config, r); break;
    case Experiment::Delta: delta_experiment(config, r); break;
    case Experiment::Spectrum: spectrum_experiment(config, r); break;
    case Experiment::Filling: filling_experiment(config, r); break;
    case Experiment::Distortion: distortion_experiment(config, r); break;
    case Experiment::Certificate: certificate_experiment(config, r); break;
    case Experiment::Appendix: r.checks.push_back(appendix_check(config.seed)); break;
    case Experiment::Isoperimetric: isoperimetric_experiment(config, r); break;
    case Experiment::All: break;
  }
  return r;
}

}  // namespace symgrowth::cli
