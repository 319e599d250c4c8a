// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any failure.

#include "symgrowth/action.hpp"
#include "symgrowth/filling.hpp"
#include "symgrowth/groups.hpp"
#include "symgrowth/growth.hpp"
#include "symgrowth/map_zoo.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>

using namespace symgrowth;

namespace {

const double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(int id, const std::string& name, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, fmt::format("exception: {}", e.what())};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  failures += !out.pass;
  fmt::print("{} [{:2}] {}: {} ({:.2f} s)\n", out.pass ? "PASS" : "FAIL", id, name, out.detail, secs);
  std::fflush(stdout);
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Largest singular value of the shear [[1, 0], [c, 1]].
double shear_norm(double c) { return (std::abs(c) + std::sqrt(c * c + 4.0)) / 2.0; }

// max |H''| for m = 1 by central differences of H.
double max_second_derivative_fd(const TwistHamiltonian& h, int samples = 20000) {
  const double step = 1e-4;
  double best = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double p = -h.epsilon() + 2.0 * h.epsilon() * i / samples;
    const double lo = std::max(-h.epsilon(), p - step);
    const double hi = std::min(h.epsilon(), p + step);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double f0 = h.value(make_vec({mid - half}));
    const double f1 = h.value(make_vec({mid}));
    const double f2 = h.value(make_vec({mid + half}));
    best = std::max(best, std::abs(f0 - 2 * f1 + f2) / (half * half));
  }
  return best;
}

// max H - min H over a fine radial sample.
double brute_width(const TwistHamiltonian& h, int samples = 200000) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i <= samples; ++i) {
    const double v = h.value(make_vec({h.epsilon() * i / samples}));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

int angle_winding(const Polyline& c, const Vec& pt) {
  double total = 0.0;
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    const Vec u = c.vertices[i] - pt;
    const Vec v = c.vertices[(i + 1) % c.vertices.size()] - pt;
    total += std::atan2(u(0) * v(1) - u(1) * v(0), u.dot(v));
  }
  return static_cast<int>(std::lround(total / (2 * kPi)));
}

bool torus_equal(const Vec& a, const Vec& b, double tol) {
  for (int i = 0; i < a.size(); ++i) {
    const double d = a(i) - b(i);
    if (std::abs(d - std::round(d)) > tol) return false;
  }
  return true;
}

const Vec kX = make_vec({0.0, 0.3});
const Vec kY = make_vec({0.5, 0.3});

}  // namespace

int main() {
  const auto skew = skew_product_lift();

  run(1, "iterate scaling on the skew-product pair", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const double err = verify_iterate_scaling(skew, kX, kY, 64);
    const double secs = elapsed_since(t0);
    const double d1 = action_difference(skew, kX, kY).value;
    // Oracle: the region between the segment and its image has area int_0^{1/2} psi = 1 / (2 pi^2).
    const double oracle = 1.0 / (2 * kPi * kPi);
    const bool ok = err < 1e-8 && secs < 5.0 && std::abs(std::abs(d1) - oracle) < 1e-12;
    return Outcome{ok, fmt::format("max |delta_n/(n delta_1) - 1| = {:.2e} (< 1e-8), delta_1 = {:.15f}, "
                                   "|delta_1| vs 1/(2 pi^2) off by {:.1e}, {:.2f} s (< 5 s)",
                                   err, d1, std::abs(std::abs(d1) - oracle), secs)};
  });

  run(2, "delta independent of curve and primitive", [&] {
    Polyline bent;
    bent.vertices = {kX, make_vec({0.25, 0.7}), make_vec({0.4, 0.1}), kY};
    bent.id = "bent";
    const Polyline straight = segment_polyline(kX, kY);
    const auto standard = PrimitiveForm::standard(2);
    const auto dual = PrimitiveForm::standard_dual(2);
    const double ref = action_difference(skew, kX, kY, straight, standard).value;
    double spread = 0.0;
    for (const Polyline* c : {&straight, static_cast<const Polyline*>(&bent)})
      for (const PrimitiveForm* a : {&standard, &dual})
        spread = std::max(spread, std::abs(action_difference(skew, kX, kY, *c, *a).value - ref));
    return Outcome{spread < 1e-9, fmt::format("2 curves x 2 primitives, max deviation {:.2e} (< 1e-9)", spread)};
  });

  FillingEstimate torus_ext;
  run(3, "torus filling u(s) ~ s", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> grid{0.5, 1, 2, 4, 8};
    const auto est = estimate_filling(FillingSetting::torus(2), grid);
    double lo_ratio = 1e300, hi_ratio = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      lo_ratio = std::min(lo_ratio, est.u_lo[i] / grid[i]);
      hi_ratio = std::max(hi_ratio, est.u_hi[i] / grid[i]);
    }
    torus_ext = with_homogeneous_extension(est);
    const auto v = v_from_u(torus_ext, 8.0);
    const double secs = elapsed_since(t0);
    const bool ok = lo_ratio >= 0.49 && hi_ratio <= 1.01 && v.lo <= 2.83 && v.hi >= 4.0 && secs < 30.0;
    return Outcome{ok, fmt::format("min u_lo/s = {:.4f} (>= 0.49), max u_hi/s = {:.4f} (<= 1.01), "
                                   "v(8) in [{:.4f}, {:.4f}] (contains [2.83, 4.0]), {:.2f} s (< 30 s)",
                                   lo_ratio, hi_ratio, v.lo, v.hi, secs)};
  });

  run(4, "hyperbolic plane u(s) <= 1", [&] {
    const auto setting = FillingSetting::hyperbolic();
    const auto cands = default_candidates(setting);
    double worst = 0.0, at = 0.0;
    for (int k = 0; k <= 18; ++k) {
      const double s = 1.0 + 0.5 * k;
      const double hi = u_upper(setting, s, cands);
      if (hi > worst) {
        worst = hi;
        at = s;
      }
    }
    return Outcome{worst <= 1.001, fmt::format("max u_hi over s = 1, 1.5, ..., 10 is {:.6f} at s = {} (<= 1.001)",
                                               worst, at)};
  });

  run(5, "growth laws: translation, skew product, twist", [&] {
    const auto tr = growth_sequence(translation_map(make_vec({0.5, 0.25})), 256, 8);
    bool trans_ok = true;
    for (double g : tr.values) trans_ok = trans_ok && g == 1.0;

    const auto sk = growth_sequence(skew.base(), 100, 64);
    double sk_err = 0.0;
    for (int n = 1; n <= 100; ++n) sk_err = std::max(sk_err, std::abs(sk.gamma(n) - shear_norm(n)));

    const auto h = default_twist_hamiltonian();
    const double slope = max_second_derivative_fd(h);
    const auto tw = growth_sequence(twist_map(h), 200, 4096);
    double tw_dev = 0.0;
    for (int n = 50; n <= 200; ++n) tw_dev = std::max(tw_dev, std::abs(tw.gamma(n) / n - slope) / slope);
    const bool ok = trans_ok && sk_err <= 1e-6 && tw_dev <= 0.05;
    return Outcome{ok, fmt::format("translation Gamma_n == 1 for n <= 256: {}; skew max |Gamma_n - shear(n)| = "
                                   "{:.2e} (<= 1e-6, Gamma_100 = {:.6f}); twist max |Gamma_n/n - {:.4f}|/{:.4f} = "
                                   "{:.4f} (<= 0.05) for 50 <= n <= 200",
                                   trans_ok ? "yes" : "no", sk_err, sk.gamma(100), slope, slope, tw_dev)};
  });

  run(6, "lower-bound certificate chain", [&] {
    if (torus_ext.s_grid.empty()) torus_ext = with_homogeneous_extension(estimate_filling(FillingSetting::torus(2), {0.5, 1, 2, 4, 8}));
    const auto g = growth_sequence(skew.base(), 100, 64);
    const auto gamma = segment_polyline(kX, kY);
    double worst_margin = 1e300;
    double min_ratio = 1e300, max_ratio = 0.0;
    for (long n = 1; n <= 100; ++n) {
      const double cert = lower_bound_certificate(skew, kX, kY, gamma, n, torus_ext);
      worst_margin = std::min(worst_margin, g.upper(static_cast<int>(n)) - cert);
      if (n >= 4) {
        const double r = cert / std::sqrt(static_cast<double>(n));
        min_ratio = std::min(min_ratio, r);
        max_ratio = std::max(max_ratio, r);
      }
    }
    // sqrt(n) growth: cert / sqrt(n) stays within a factor 2 over 4 <= n <= 100.
    const bool ok = worst_margin >= 0.0 && min_ratio > 0.0 && min_ratio >= 0.5 * max_ratio;
    return Outcome{ok, fmt::format("min (Gamma_n + err - cert) = {:.4f} (>= 0); cert/sqrt(n) in [{:.4f}, {:.4f}] "
                                   "for 4 <= n <= 100",
                                   worst_margin, min_ratio, max_ratio)};
  });

  run(7, "propagation inequality Gamma_n >= d_n / (1 + diam)", [&] {
    std::string per;
    bool ok = true;
    for (const auto& lift : standard_lifts()) {
      const auto g = growth_sequence(lift.base(), 64, 32);
      const auto d = propagation(lift, 64, 8);
      const double c = 1.0 + lift.fundamental_domain().diameter();
      double worst = 0.0;
      for (int n = 1; n <= 64; ++n) worst = std::max(worst, d.values[static_cast<std::size_t>(n - 1)] / (c * g.upper(n)));
      ok = ok && worst <= 1.0;
      per += fmt::format(" {}={:.3f}", lift.id(), worst);
    }
    return Outcome{ok, fmt::format("max d_n / ((1 + diam) Gamma_n) over n <= 64 (<= 1):{}", per)};
  });

  run(8, "width scaling and conjugation invariance", [&] {
    const auto h = default_twist_hamiltonian();
    const double h0 = brute_width(h);
    double scale_err = 0.0;
    for (int n = 1; n <= 32; ++n)
      scale_err = std::max(scale_err, std::abs(hamiltonian_action_spectrum(h, n).width - n * h0));
    const auto shift = cylinder_translation(1, h.epsilon(), make_vec({0.37}));
    double conj_err = 0.0;
    for (double n : {1.0, 2.0, 5.0, 32.0}) {
      const auto rep = width_conjugation_check(h, n, shift);
      conj_err = std::max(conj_err, std::abs(rep.conjugated_width - rep.width));
    }
    const bool ok = scale_err <= 1e-9 && conj_err <= 1e-9;
    return Outcome{ok, fmt::format("h0 = {:.12f}; max |width(f^n) - n h0| = {:.1e} (n <= 32); "
                                   "max |width(g f^n g^-1) - width(f^n)| = {:.1e} for g = translation by 0.37 (<= 1e-9)",
                                   h0, scale_err, conj_err)};
  });

  run(9, "Baumslag-Solitar logarithmic distortion", [&] {
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
    // Every n <= 64 becomes exact at radius 14.
    const auto wide = distortion_profile(P, 64, 14);
    double worst14 = -1e300;
    std::size_t exact14 = 0;
    for (const auto& e : wide.entries) {
      exact14 += e.exact;
      worst14 = std::max(worst14, e.length - (2.0 * std::log2(static_cast<double>(e.n)) + 3.0));
    }
    bool words_ok = true;
    long max_excess = -1000;
    for (int k = 1; k <= 20; ++k) {
      const BigInt n = BigInt(1) << k;
      const auto w = log_word_construct(P, n);
      words_ok = words_ok && britton_reduce(w * GroupWord::power(Generator::a, -n), P).empty();
      max_excess = std::max(max_excess, static_cast<long>(w.length()) - (3L * k + 5L));
    }
    const double secs = elapsed_since(t0);
    const bool ok = worst <= 0.0 && worst14 <= 0.0 && exact14 == 64 && words_ok && max_excess <= 0 && secs < 60.0;
    return Outcome{ok, fmt::format("radius 12: {}/64 exact (ball {} states), max(len - 2 log2 n - 3) = {:.3f}; "
                                   "radius 14: {}/64 exact, max = {:.3f}; 2^k words (k <= 20) reduce to a^n: {}, "
                                   "max(len - 3k - 5) = {}; {:.2f} s (< 60 s)",
                                   exact, prof.ball_size, worst, exact14, worst14, words_ok ? "yes" : "no", max_excess,
                                   secs)};
  });

  run(10, "appendix example T^4 / Z_2", [&] {
    const auto f1 = appendix_flow(1.0);
    const auto gamma = appendix_gamma();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    bool inv = true, comm = true;
    for (int s = 0; s < 1000; ++s) {
      const Vec z = make_vec({u(rng), u(rng), u(rng), u(rng)});
      inv = inv && torus_equal(f1.evaluate(f1.evaluate(z)), z, 1e-12) &&
            torus_equal(gamma.evaluate(gamma.evaluate(z)), z, 1e-12);
      comm = comm && torus_equal(f1.evaluate(gamma.evaluate(z)), gamma.evaluate(f1.evaluate(z)), 1e-12);
    }
    // Fixed set of gamma o f1 is {(p, q, m1/2, m2/2)}: check it on a grid and off it.
    bool fixed_ok = true;
    for (const auto& t : appendix_fixed_point_set()) fixed_ok = fixed_ok && t.verified;
    for (int m1 = 0; m1 < 2; ++m1)
      for (int m2 = 0; m2 < 2; ++m2) fixed_ok = fixed_ok && appendix_is_fixed(make_vec({u(rng), u(rng), 0.5 * m1, 0.5 * m2}));
    fixed_ok = fixed_ok && !appendix_is_fixed(make_vec({0.3, 0.6, 0.25, 0.0}));

    const auto f = appendix_gamma_flow();
    const auto g = growth_sequence(f, 64, 8);
    double gmax = 0.0;
    bool even_one = true;
    for (int n = 1; n <= 64; ++n) {
      gmax = std::max(gmax, g.gamma(n));
      if (n % 2 == 0) even_one = even_one && std::abs(g.gamma(n) - 1.0) <= 1e-12;
    }
    const bool bounded = even_one && gmax <= g.gamma(1) + 1e-12;

    const auto rep = appendix_contractible_obstruction();
    Eigen::Matrix4i expect = Eigen::Matrix4i::Identity();
    expect(2, 2) = expect(3, 3) = -1;
    int fixing = 0;
    bool diag_ok = true;
    for (const auto& l : rep.lifts) {
      if (!l.fixes_fixed_set_point) continue;
      ++fixing;
      diag_ok = diag_ok && l.h1_action == expect && !l.acts_as_identity;
    }
    const bool ok = inv && comm && fixed_ok && bounded && fixing == 1 && diag_ok && rep.no_contractible_witness;
    return Outcome{ok, fmt::format("f1^2 = gamma^2 = id: {}; commute: {}; fixed set {{(p,q,m1/2,m2/2)}}: {}; "
                                   "Gamma_n <= {:.4f} with Gamma_2k = 1 (n <= 64): {}; point-fixing lifts: {}, "
                                   "acting as diag(1,1,-1,-1) != I: {}",
                                   inv, comm, fixed_ok, gmax, bounded, fixing, diag_ok)};
  });

  run(11, "isoperimetric consistency on R^2 minus Z^2", [&] {
    const auto corpus = generate_loop_corpus(2024, 200, 20);
    std::size_t oracle_winding = 0;
    for (const auto& c : corpus) {
      bool winds = false;
      for (int i = -4; i <= 6 && !winds; ++i)
        for (int j = -4; j <= 6 && !winds; ++j) winds = angle_winding(c, make_vec({double(i), double(j)})) != 0;
      oracle_winding += winds;
    }
    const auto res = isoperimetric_corpus(Lattice::integer(), corpus, 10.0);
    const bool ok = res.accepted == 200 && res.rejected == 20 && oracle_winding == 20 && std::isfinite(res.max_ratio) &&
                    res.all_hold;
    return Outcome{ok, fmt::format("{} accepted, {} rejected (angle-sum oracle: {} winding loops), "
                                   "max |int alpha| / length = {:.6f} (finite, kappa_est = 10)",
                                   res.accepted, res.rejected, oracle_winding, res.max_ratio)};
  });

  run(12, "flux vanishes iff int psi = 0", [&] {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> coef(-0.2, 0.2);
    int agree = 0;
    double worst_zero = 0.0, worst_value = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const double mean = trial % 2 ? 0.0 : 0.05 + std::abs(coef(rng));
      const FourierSeries psi(mean, {coef(rng), coef(rng), coef(rng)}, {coef(rng), coef(rng)});
      const Vec flux = flux_of_path(shear_path(psi));
      const bool vanishes = flux.norm() <= 1e-10;
      agree += vanishes == (mean == 0.0);
      if (mean == 0.0) worst_zero = std::max(worst_zero, flux.norm());
      // Oracle: the dx component of the flux of (x, y + t psi(x)) is int psi.
      worst_value = std::max(worst_value, std::abs(flux(0) - mean) + std::abs(flux(1)));
    }
    const bool ok = agree == 20 && worst_value <= 1e-10;
    return Outcome{ok, fmt::format("{}/20 agree; max |flux| for mean-zero psi = {:.1e}; max |flux - (int psi, 0)| = "
                                   "{:.1e} (<= 1e-10)",
                                   agree, worst_zero, worst_value)};
  });

  fmt::print("{} of 12 criteria passed\n", 12 - failures);
  return failures == 0 ? 0 : 1;
}
