#include "symgrowth/twist_hamiltonian.hpp"

#include "symgrowth/errors.hpp"

#include <algorithm>
#include <cmath>

namespace symgrowth {

namespace {

// 1 - smoothstep_7(tau): C^3, equal to 1 at tau = 0 and 0 at tau = 1.
Polynomial bump_in_tau() {
  return Polynomial({1.0, 0.0, 0.0, 0.0, -35.0, 84.0, -70.0, 20.0});
}

// smoothstep_7(u) = u^4 (35 - 84 u + 70 u^2 - 20 u^3).
const Polynomial& smoothstep() {
  static const Polynomial s({0.0, 0.0, 0.0, 0.0, 35.0, -84.0, 70.0, -20.0});
  return s;
}

// d^j/dtau^j of the bump, evaluated without cancellation: S(1 - tau) near tau = 1.
double bump_derivative(double tau, int j) {
  Polynomial d = smoothstep();
  for (int k = 0; k < j; ++k) d = d.derivative();
  if (tau > 0.5) return (j % 2 ? -1.0 : 1.0) * d(1.0 - tau);
  return (j == 0 ? 1.0 : 0.0) - d(tau);
}

// Exact integral of a polynomial over [lo, hi].
double integrate(const Polynomial& p, double lo, double hi) {
  double acc = 0.0;
  const auto& c = p.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double e = static_cast<double>(k + 1);
    acc += c[k] * (std::pow(hi, e) - std::pow(lo, e)) / e;
  }
  return acc;
}

}  // namespace

TwistHamiltonian::TwistHamiltonian(int m, double epsilon, Polynomial core)
    : m_(m), epsilon_(epsilon), core_(std::move(core)) {
  if (m < 1 || 2 * m > kMaxDim) throw PreconditionError("twist cylinder: m must be in [1, 4]");
  if (!(epsilon > 0.0)) throw PreconditionError("twist cylinder: epsilon must be positive");
  s_inner_ = 0.25 * epsilon * epsilon;
  s_outer_ = 0.81 * epsilon * epsilon;
  // tau = (s - s_inner) / (s_outer - s_inner)
  const double span = s_outer_ - s_inner_;
  const Polynomial bump = bump_in_tau().composed_affine(1.0 / span, -s_inner_ / span);
  pieces_[0] = core_;
  pieces_[1] = bump * core_;
  pieces_[2] = Polynomial({0.0});
  for (std::size_t i = 0; i < 3; ++i) {
    derivs_[i][0] = pieces_[i];
    for (std::size_t k = 1; k < 4; ++k) derivs_[i][k] = derivs_[i][k - 1].derivative();
  }
}

double TwistHamiltonian::profile(double s, int order) const {
  const std::size_t idx = s <= s_inner_ ? 0 : (s < s_outer_ ? 1 : 2);
  if (idx != 1) return derivs_[idx][static_cast<std::size_t>(order)](s);
  // Leibniz on B(tau(s)) P(s); the expanded product loses ~1e-11 to cancellation.
  static constexpr int kBinom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
  const double span = s_outer_ - s_inner_;
  const double tau = (s - s_inner_) / span;
  double acc = 0.0;
  for (int j = 0; j <= order; ++j)
    acc += kBinom[order][j] * bump_derivative(tau, j) / std::pow(span, j) *
           derivs_[0][static_cast<std::size_t>(order - j)](s);
  return acc;
}

double TwistHamiltonian::value(const Vec& p) const { return profile(p.squaredNorm(), 0); }

Vec TwistHamiltonian::gradient(const Vec& p) const {
  return 2.0 * profile(p.squaredNorm(), 1) * p;
}

Mat TwistHamiltonian::hessian(const Vec& p) const {
  const double s = p.squaredNorm();
  const double g1 = profile(s, 1);
  const double g2 = profile(s, 2);
  Mat h = 4.0 * g2 * (p * p.transpose());
  h.diagonal().array() += 2.0 * g1;
  return h;
}

namespace {

struct PieceRange {
  std::size_t index;
  double lo;
  double hi;
};

}  // namespace

double TwistHamiltonian::hessian_norm_bound() const {
  const PieceRange ranges[] = {{0, 0.0, s_inner_}, {1, s_inner_, s_outer_}};
  double bound = 0.0;
  for (const auto& r : ranges) {
    const double g1 = derivs_[r.index][1].abs_bound(r.lo, r.hi);
    const double g2 = derivs_[r.index][2].abs_bound(r.lo, r.hi);
    bound = std::max(bound, 4.0 * r.hi * g2 + 2.0 * g1);
  }
  return bound;
}

double TwistHamiltonian::third_derivative_bound() const {
  const PieceRange ranges[] = {{0, 0.0, s_inner_}, {1, s_inner_, s_outer_}};
  double bound = 0.0;
  for (const auto& r : ranges) {
    const double radius = std::sqrt(r.hi);
    const double g2 = derivs_[r.index][2].abs_bound(r.lo, r.hi);
    const double g3 = derivs_[r.index][3].abs_bound(r.lo, r.hi);
    bound = std::max(bound, 8.0 * radius * radius * radius * g3 + 12.0 * radius * g2);
  }
  return bound;
}

double TwistHamiltonian::gradient_norm_bound() const {
  const PieceRange ranges[] = {{0, 0.0, s_inner_}, {1, s_inner_, s_outer_}};
  double bound = 0.0;
  for (const auto& r : ranges)
    bound = std::max(bound, 2.0 * std::sqrt(r.hi) * derivs_[r.index][1].abs_bound(r.lo, r.hi));
  return bound;
}

double TwistHamiltonian::value_bound() const {
  const PieceRange ranges[] = {{0, 0.0, s_inner_}, {1, s_inner_, s_outer_}};
  double bound = 0.0;
  for (const auto& r : ranges) bound = std::max(bound, derivs_[r.index][0].abs_bound(r.lo, r.hi));
  return bound;
}

double TwistHamiltonian::disc_mean() const {
  // mean = (m / eps^m) * int_0^eps G(r^2) r^(m-1) dr, integrated piecewise in r.
  const Polynomial r_squared({0.0, 0.0, 1.0});
  std::vector<double> weight_coeffs(static_cast<std::size_t>(m_), 0.0);
  weight_coeffs.back() = 1.0;
  const Polynomial weight(weight_coeffs);
  const double r_inner = std::sqrt(s_inner_);
  const double r_outer = std::sqrt(s_outer_);
  double total = 0.0;
  const double bounds[3][2] = {{0.0, r_inner}, {r_inner, r_outer}, {r_outer, epsilon_}};
  for (std::size_t i = 0; i < 3; ++i) {
    // G(r^2) as a polynomial in r: substitute s = r^2 by Horner.
    Polynomial in_r({0.0});
    const auto& c = pieces_[i].coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) in_r = in_r * r_squared + Polynomial({*it});
    total += integrate(in_r * weight, bounds[i][0], bounds[i][1]);
  }
  return static_cast<double>(m_) / std::pow(epsilon_, m_) * total;
}

}  // namespace symgrowth
