#pragma once

#include <vector>

namespace symgrowth {

/// A smooth circle function given by finitely many Fourier coefficients:
///   psi(x) = a0 + sum_k (cos[k-1] * cos(2 pi k x) + sin[k-1] * sin(2 pi k x)).
/// All derivatives are evaluated in closed form.
class FourierSeries {
 public:
  FourierSeries() = default;
  FourierSeries(double a0, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

  /// sin(2 pi x) / (2 pi): the standard example circle function.
  static FourierSeries standard_sine();

  double mean() const { return a0_; }
  const std::vector<double>& cos_coeffs() const { return cos_; }
  const std::vector<double>& sin_coeffs() const { return sin_; }
  int degree() const;

  double value(double x) const { return derivative(x, 0); }
  /// d^order/dx^order at x.
  double derivative(double x, int order) const;

  /// sup |psi^(order)| <= sum_k (2 pi k)^order (|a_k| + |b_k|) (plus |a0| when order == 0).
  double derivative_bound(int order) const;

  /// Mean-zero antiderivative Psi with Psi' = psi - mean(psi).
  FourierSeries antiderivative() const;

  FourierSeries scaled(double factor) const;
  FourierSeries operator+(const FourierSeries& other) const;

 private:
  double a0_ = 0.0;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

/// Dense univariate polynomial sum_k c[k] t^k.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  const std::vector<double>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  double operator()(double t) const;
  Polynomial derivative() const;
  /// p(t + shift) as a polynomial in t.
  Polynomial shifted(double shift) const;
  /// Rigorous bound on |p| over [lo, hi] from Taylor expansions on `pieces`
  /// equal subintervals.
  double abs_bound(double lo, double hi, int pieces = 64) const;

  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator+(const Polynomial& other) const;
  Polynomial scaled(double factor) const;
  /// p(a t + b).
  Polynomial composed_affine(double a, double b) const;

 private:
  std::vector<double> c_;
};

}  // namespace symgrowth
