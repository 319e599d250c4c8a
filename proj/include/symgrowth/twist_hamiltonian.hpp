#pragma once

#include "symgrowth/linalg.hpp"
#include "symgrowth/series.hpp"

#include <array>

namespace symgrowth {

/// Radial Hamiltonian H(p) = G(|p|^2) on the disc D^m(eps), where
/// G(s) = B(s) * P(s), P is a user polynomial in s = |p|^2 and B is a C^3
/// polynomial bump: B = 1 for |p| <= 0.5 eps, B = 0 for |p| >= 0.9 eps.
/// Every derivative is a piecewise polynomial, so nothing is finite-differenced.
class TwistHamiltonian {
 public:
  TwistHamiltonian(int m, double epsilon, Polynomial core);

  int m() const { return m_; }
  double epsilon() const { return epsilon_; }
  const Polynomial& core() const { return core_; }

  /// Squared radii bounding the three pieces: [0, s_inner], [s_inner, s_outer], [s_outer, inf).
  double s_inner() const { return s_inner_; }
  double s_outer() const { return s_outer_; }

  /// G restricted to piece i (0: core, 1: cutoff, 2: plateau) as a polynomial in s.
  const Polynomial& piece(int i) const { return pieces_[static_cast<std::size_t>(i)]; }
  /// Profile G and its derivatives in s = |p|^2.
  double profile(double s, int order = 0) const;

  double value(const Vec& p) const;
  Vec gradient(const Vec& p) const;
  Mat hessian(const Vec& p) const;

  /// sup over the disc of the operator norm of the Hessian (certified upper bound).
  double hessian_norm_bound() const;
  /// Lipschitz bound for p -> Hessian(p) in operator norm.
  double third_derivative_bound() const;
  /// sup |grad H| and sup |H| (certified upper bounds).
  double gradient_norm_bound() const;
  double value_bound() const;

  /// Mean of H over the disc D^m(eps) (the omega-volume of the cylinder is a product).
  double disc_mean() const;

 private:
  int m_;
  double epsilon_;
  Polynomial core_;
  double s_inner_;
  double s_outer_;
  std::array<Polynomial, 3> pieces_;  // G on each piece
  std::array<std::array<Polynomial, 4>, 3> derivs_;
};

}  // namespace symgrowth
