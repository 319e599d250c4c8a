#include <doctest.h>

#include "symgrowth/errors.hpp"
#include "symgrowth/growth.hpp"

#include <cmath>
#include <numbers>

using namespace symgrowth;

namespace {

const double kPi = std::numbers::pi;

// Largest singular value of [[1, 0], [c, 1]].
double shear_norm(double c) { return (std::abs(c) + std::sqrt(c * c + 4.0)) / 2.0; }

// max |H''| of a radial profile on m = 1, by central differences of H itself.
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

}  // namespace

TEST_CASE("translation has Gamma_n = 1") {
  const auto s = growth_sequence(translation_map(make_vec({0.5, 0.25})), 256, 8);
  for (double g : s.values) CHECK(g == 1.0);
  CHECK(s.grid_points == 1);
  CHECK(classify_growth(s.values).type == GrowthType::Elliptic);
}

TEST_CASE("skew product matches the closed-form shear norm") {
  const auto f = skew_product_map(0.0, FourierSeries::standard_sine());
  const auto s = growth_sequence(f, 100, 64);
  for (int n = 1; n <= 100; ++n) CHECK(std::abs(s.gamma(n) - shear_norm(n)) <= 1e-6);
  CHECK(s.gamma(10) == doctest::Approx((10 + std::sqrt(104.0)) / 2).epsilon(1e-12));
  CHECK(s.gamma(10) == doctest::Approx(10.0990).epsilon(1e-5));
  const auto c = classify_growth(s.values);
  CHECK(c.type == GrowthType::Parabolic);
  CHECK(c.degree == doctest::Approx(1.0).epsilon(0.1));
  for (std::size_t k = 0; k < s.values.size(); ++k) CHECK(s.error_bars[k] >= 0.0);
}

TEST_CASE("twist map grows linearly with slope max|H''|") {
  const TwistHamiltonian h = default_twist_hamiltonian();
  const double slope = max_second_derivative_fd(h);
  const auto s = growth_sequence(twist_map(h), 200, 4096);
  for (int n = 50; n <= 200; ++n) {
    CHECK(std::abs(s.gamma(n) / n - slope) <= 0.05 * slope);
    CHECK(std::abs(s.upper(n) / n - slope) <= 0.05 * slope);
  }
}

TEST_CASE("cat map is hyperbolic with the eigenvalue rate") {
  const auto s = growth_sequence(linear_torus_map(make_mat({{2, 1}, {1, 1}})), 32, 4);
  const auto c = classify_growth(s.values);
  CHECK(c.type == GrowthType::Hyperbolic);
  CHECK(c.rate == doctest::Approx(std::log((3 + std::sqrt(5.0)) / 2)).epsilon(1e-6));
}

TEST_CASE("Gamma_n >= 1 and submultiplicativity") {
  const SymplecticMap maps[] = {skew_product_map(0.618033988749895, FourierSeries(0, {0.03}, {0.1, 0.02})),
                                twist_map(default_twist_hamiltonian()),
                                linear_torus_map(make_mat({{1, 1}, {0, 1}}))};
  for (const auto& f : maps) {
    const auto s = growth_sequence(f, 32, 64);
    for (int m = 1; m <= 16; ++m) {
      CHECK(s.gamma(m) >= 1.0);
      for (int n = 1; n <= 16; ++n) CHECK(s.gamma(m + n) <= s.gamma(m) * s.gamma(n) * (1 + 1e-6));
    }
  }
}

TEST_CASE("Gamma_n(f^2) equals Gamma_2n(f) on the same grid") {
  const auto f = skew_product_map(0.3, FourierSeries(0, {0.05}, {0.12}));
  const auto direct = growth_sequence(f, 32, 64);
  const auto squared = growth_sequence(compose(f, f), 16, 64);
  for (int n = 1; n <= 16; ++n) CHECK(squared.gamma(n) == doctest::Approx(direct.gamma(2 * n)).epsilon(1e-12));
}

TEST_CASE("conjugation bound Gamma_n(h f h^-1) <= Gamma_1(h)^2 Gamma_n(f)") {
  const auto f = skew_product_map(0.0, FourierSeries::standard_sine());
  const auto shear = linear_torus_map(make_mat({{1, 0}, {1, 1}}));
  for (const auto& h : {translation_map(make_vec({0.37, 0.11})), shear}) {
    const auto gf = growth_sequence(f, 24, 128);
    const auto gc = growth_sequence(conjugate(h, f), 24, 128);
    const double g1h = growth_sequence(h, 1, 4).gamma(1);
    for (int n = 1; n <= 24; ++n) CHECK(gc.gamma(n) <= g1h * g1h * gf.upper(n) * (1 + 1e-9));
  }
}

TEST_CASE("grid refinement never decreases Gamma_n") {
  const auto f = skew_product_map(0.2, FourierSeries(0, {0.07, 0.01}, {0.05}));
  std::vector<double> prev;
  for (int r : {8, 16, 32, 64}) {
    const auto s = growth_sequence(f, 20, r);
    if (!prev.empty())
      for (int n = 1; n <= 20; ++n) CHECK(s.gamma(n) >= prev[static_cast<std::size_t>(n - 1)]);
    prev = s.values;
  }
}

TEST_CASE("parallel evaluation is deterministic") {
  const auto f = twist_map(TwistHamiltonian(2, 0.4, Polynomial({0.0, 0.5, -1.0})));
  const auto one = growth_sequence(f, 12, 16, 1);
  const auto four = growth_sequence(f, 12, 16, 4);
  CHECK(one.values == four.values);
}

TEST_CASE("overflow in growth_sequence is a range error") {
  CHECK_THROWS_AS(growth_sequence(linear_torus_map(make_mat({{2, 1}, {1, 1}})), 2000, 2), RangeError);
}

TEST_CASE("standard lifts: fixed points and deck equivariance") {
  for (const auto& lift : standard_lifts()) {
    CAPTURE(lift.id());
    CHECK(lift.equivariance_defect(1000, 5) <= 1e-12);
    for (const auto& x : lift.fixed_points()) CHECK((lift.apply(x) - x).norm() <= 1e-12);
  }
  CHECK_THROWS_AS(LiftedMap(translation_map(make_vec({0.5, 0.0})), Vec::Zero(2), {make_vec({0.0, 0.0})}, "bad"),
                  PreconditionError);
}

TEST_CASE("propagation examples") {
  const auto lifts = standard_lifts();
  const auto& identity = lifts[0];
  const double diam = identity.fundamental_domain().diameter();
  for (double d : propagation(identity, 32, 16).values) CHECK(d <= diam + 1e-12);

  const auto skew = skew_product_lift();
  const auto p = propagation(skew, 64, 32);
  for (int n = 1; n <= 64; ++n)
    CHECK(p.values[static_cast<std::size_t>(n - 1)] >= n / (2 * kPi) - skew.fundamental_domain().diameter());

  // Refining the grid never lowers d_n.
  const auto coarse = propagation(skew, 16, 8);
  const auto fine = propagation(skew, 16, 16);
  for (std::size_t k = 0; k < 16; ++k) CHECK(fine.values[k] >= coarse.values[k]);
}

TEST_CASE("Gamma_n dominates d_n with constant 1 + diam on every lift") {
  for (const auto& lift : standard_lifts()) {
    CAPTURE(lift.id());
    const auto g = growth_sequence(lift.base(), 64, 32);
    const auto d = propagation(lift, 64, 8);
    const double c = 1.0 + lift.fundamental_domain().diameter();
    for (int n = 1; n <= 64; ++n) CHECK(d.values[static_cast<std::size_t>(n - 1)] <= c * g.upper(n));
  }
}

TEST_CASE("growth order comparison") {
  std::vector<double> lin, root, affine;
  for (int n = 1; n <= 64; ++n) {
    lin.push_back(n);
    root.push_back(std::sqrt(n));
    affine.push_back(3.0 * n + 5.0);
  }
  CHECK(growth_order_compare(lin, root).relation == OrderRelation::Dominates);
  CHECK(growth_order_compare(root, lin).relation == OrderRelation::Dominated);
  const auto eq = growth_order_compare(lin, affine);
  CHECK(eq.relation == OrderRelation::Equivalent);
  CHECK(eq.constant_witness > 0.0);

  const auto s = growth_sequence(skew_product_map(0.0, FourierSeries::standard_sine()), 64, 32);
  CHECK(growth_order_compare(s.values, root).relation == OrderRelation::Dominates);
  CHECK_THROWS_AS(growth_order_compare({1, 2}, {1, 2}), PreconditionError);
}

TEST_CASE("Birkhoff sums") {
  const auto psi = FourierSeries::standard_sine();
  const auto zero = birkhoff_growth(psi, 0.0, 50);
  for (int n = 1; n <= 50; ++n) CHECK(zero[static_cast<std::size_t>(n - 1)] == doctest::Approx(n * 1.0).epsilon(1e-12));

  // Golden rotation: |sum cos(2 pi (x + k a))| <= 1 / |sin(pi a)|.
  const double golden = (std::sqrt(5.0) - 1) / 2;
  const auto g = birkhoff_growth(psi, golden, 10000, 64);
  const double bound = 1.0 / std::abs(std::sin(kPi * golden));
  for (double b : g) CHECK(b <= bound + 1e-9);

  // psi'(x) + psi'(x + 1/2) = 0 for odd harmonics.
  const FourierSeries odd(0.0, {0.1, 0.0, 0.02}, {0.05});
  const auto half = birkhoff_growth(odd, 0.5, 200);
  for (double b : half) CHECK(b <= odd.derivative_bound(1) + 1e-12);
}
