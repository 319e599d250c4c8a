#include <doctest.h>

#include "symgrowth/errors.hpp"
#include "symgrowth/forms.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace symgrowth;

namespace {

Polyline square_loop() {
  Polyline c;
  c.closed = true;
  c.vertices = {make_vec({0, 0}), make_vec({1, 0}), make_vec({1, 1}), make_vec({0, 1})};
  return c;
}

// Shoelace formula for the signed Euclidean area of a closed planar polygon.
double shoelace(const Polyline& c) {
  double a = 0.0;
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    const Vec& u = c.vertices[i];
    const Vec& v = c.vertices[(i + 1) % c.vertices.size()];
    a += u(0) * v(1) - v(0) * u(1);
  }
  return 0.5 * a;
}

}  // namespace

TEST_CASE("adaptive Simpson") {
  const auto r = adaptive_simpson([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-12);
  CHECK(std::abs(r.value - (std::exp(1.0) - 1.0)) < 1e-12);
  const auto z = adaptive_simpson([](double x) { return std::sin(2 * std::numbers::pi * x); }, 0.0, 1.0);
  CHECK(std::abs(z.value) < 1e-12);
}

TEST_CASE("primitives: d alpha = omega is enforced") {
  CHECK_NOTHROW(PrimitiveForm::standard(4));
  CHECK_NOTHROW(PrimitiveForm::standard_dual(2));
  Mat half = 0.5 * PrimitiveForm::standard(2).linear() + 0.5 * PrimitiveForm::standard_dual(2).linear();
  CHECK_NOTHROW(PrimitiveForm::flat(half, Vec::Zero(2)));
  CHECK_THROWS_AS(PrimitiveForm::flat(Mat::Identity(2, 2), Vec::Zero(2)), PreconditionError);
  CHECK_THROWS_AS(PrimitiveForm::flat(Mat::Zero(3, 3), Vec::Zero(3)), PreconditionError);
}

TEST_CASE("line integrals") {
  const auto alpha = PrimitiveForm::standard(2);
  const auto sq = square_loop();
  // Green: p dq around a counter-clockwise loop gives +area.
  CHECK(std::abs(line_integral(alpha, sq).value - 1.0) < 1e-12);
  CHECK(line_integral(alpha, sq).value == doctest::Approx(shoelace(sq)).epsilon(1e-12));
  CHECK(line_integral(PrimitiveForm::standard_dual(2), sq).value == doctest::Approx(1.0).epsilon(1e-12));

  const auto h = PrimitiveForm::hyperbolic();
  CHECK(line_integral(h, segment_polyline(make_vec({0, 2}), make_vec({1, 2}))).value == doctest::Approx(0.5));
  CHECK_THROWS_AS(line_integral(h, segment_polyline(make_vec({0, 1}), make_vec({0, -1}))), DomainError);

  // Exact terms integrate to zero around closed loops.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  TrigTerm t{{1, 0}, 0.0, 1.0};
  TrigTerm t2{{2, -1}, 0.3, -0.7};
  const auto wiggly = alpha.plus_exact(t).plus_exact(t2);
  for (int trial = 0; trial < 20; ++trial) {
    Polyline c;
    c.closed = true;
    for (int k = 0; k < 7; ++k) c.vertices.push_back(make_vec({u(rng), u(rng)}));
    const double d = line_integral(wiggly, c, 1e-12).value - line_integral(alpha, c, 1e-12).value;
    CHECK(std::abs(d) < 1e-10);
  }
}

TEST_CASE("norms and metric lengths") {
  const auto alpha = PrimitiveForm::standard(2);
  CHECK(alpha.norm(make_vec({3, 1})) == doctest::Approx(3.0));
  CHECK(alpha.with_metric_scale(2.0).norm(make_vec({3, 1})) == doctest::Approx(1.5));
  const auto h = PrimitiveForm::hyperbolic();
  for (double q : {0.1, 1.0, 7.0}) CHECK(h.norm(make_vec({0.3, q})) == doctest::Approx(1.0));

  // Vertical hyperbolic segment from q = 1 to q = e has length 1.
  CHECK(metric_length(h, segment_polyline(make_vec({0, 1}), make_vec({0, std::exp(1.0)}))) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(metric_length(alpha.with_metric_scale(3.0), square_loop()) == doctest::Approx(12.0));

  const auto c = circle_polyline(make_vec({0, 0}), 1.0, 6);
  CHECK(c.euclidean_length() == doctest::Approx(6.0));
  CHECK_NOTHROW(c.check_steps(1.0 + 1e-12));
  CHECK_THROWS_AS(c.check_steps(0.5), PreconditionError);
}
