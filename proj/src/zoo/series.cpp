#include "symgrowth/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace symgrowth {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

FourierSeries::FourierSeries(double a0, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs)
    : a0_(a0), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
  const auto n = std::max(cos_.size(), sin_.size());
  cos_.resize(n, 0.0);
  sin_.resize(n, 0.0);
}

FourierSeries FourierSeries::standard_sine() { return FourierSeries(0.0, {0.0}, {1.0 / kTwoPi}); }

int FourierSeries::degree() const { return static_cast<int>(cos_.size()); }

double FourierSeries::derivative(double x, int order) const {
  double sum = order == 0 ? a0_ : 0.0;
  for (std::size_t i = 0; i < cos_.size(); ++i) {
    const double w = kTwoPi * static_cast<double>(i + 1);
    const double phase = w * x;
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    const double scale = std::pow(w, order);
    // d^order of cos and sin cycle with period 4.
    double dc = 0.0;
    double ds = 0.0;
    switch (order % 4) {
      case 0: dc = c; ds = s; break;
      case 1: dc = -s; ds = c; break;
      case 2: dc = -c; ds = -s; break;
      default: dc = s; ds = -c; break;
    }
    sum += scale * (cos_[i] * dc + sin_[i] * ds);
  }
  return sum;
}

double FourierSeries::derivative_bound(int order) const {
  double bound = order == 0 ? std::abs(a0_) : 0.0;
  for (std::size_t i = 0; i < cos_.size(); ++i) {
    const double w = kTwoPi * static_cast<double>(i + 1);
    bound += std::pow(w, order) * (std::abs(cos_[i]) + std::abs(sin_[i]));
  }
  return bound;
}

FourierSeries FourierSeries::antiderivative() const {
  std::vector<double> c(cos_.size());
  std::vector<double> s(sin_.size());
  for (std::size_t i = 0; i < cos_.size(); ++i) {
    const double w = kTwoPi * static_cast<double>(i + 1);
    // integral of a cos(wx) = (a/w) sin(wx); of b sin(wx) = -(b/w) cos(wx).
    s[i] = cos_[i] / w;
    c[i] = -sin_[i] / w;
  }
  return FourierSeries(0.0, std::move(c), std::move(s));
}

FourierSeries FourierSeries::scaled(double factor) const {
  FourierSeries out = *this;
  out.a0_ *= factor;
  for (auto& v : out.cos_) v *= factor;
  for (auto& v : out.sin_) v *= factor;
  return out;
}

FourierSeries FourierSeries::operator+(const FourierSeries& other) const {
  const auto n = std::max(cos_.size(), other.cos_.size());
  std::vector<double> c(n, 0.0);
  std::vector<double> s(n, 0.0);
  for (std::size_t i = 0; i < cos_.size(); ++i) {
    c[i] += cos_[i];
    s[i] += sin_[i];
  }
  for (std::size_t i = 0; i < other.cos_.size(); ++i) {
    c[i] += other.cos_[i];
    s[i] += other.sin_[i];
  }
  return FourierSeries(a0_ + other.a0_, std::move(c), std::move(s));
}

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
  while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
}

double Polynomial::operator()(double t) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial({0.0});
  std::vector<double> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::shifted(double shift) const { return composed_affine(1.0, shift); }

Polynomial Polynomial::composed_affine(double a, double b) const {
  // Horner in polynomial arithmetic: p(a t + b).
  Polynomial acc({0.0});
  const Polynomial lin({b, a});
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + Polynomial({*it});
  return acc;
}

double Polynomial::abs_bound(double lo, double hi, int pieces) const {
  // Taylor bound per subinterval; subdividing keeps it close to the true max.
  const double width = std::max(0.0, hi - lo) / static_cast<double>(pieces);
  double bound = 0.0;
  for (int i = 0; i < pieces; ++i) {
    const Polynomial local = shifted(lo + width * static_cast<double>(i));
    double piece = 0.0;
    double power = 1.0;
    for (double c : local.c_) {
      piece += std::abs(c) * power;
      power *= width;
    }
    bound = std::max(bound, piece);
  }
  return bound;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (c_.empty() || other.c_.empty()) return Polynomial({0.0});
  std::vector<double> out(c_.size() + other.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < other.c_.size(); ++j) out[i + j] += c_[i] * other.c_[j];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<double> out(std::max(c_.size(), other.c_.size()), 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
  for (std::size_t i = 0; i < other.c_.size(); ++i) out[i] += other.c_[i];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::scaled(double factor) const {
  std::vector<double> out = c_;
  for (auto& v : out) v *= factor;
  return Polynomial(std::move(out));
}

}  // namespace symgrowth
