#include "symgrowth/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace symgrowth {

Vec make_vec(std::initializer_list<double> values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

Vec make_vec(const std::vector<double>& values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = values[i];
  return v;
}

Mat make_mat(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto m = n == 0 ? 0 : static_cast<Eigen::Index>(rows.begin()->size());
  Mat out(n, m);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double x : row) out(i, j++) = x;
    ++i;
  }
  return out;
}

Mat symplectic_form(int dim) {
  Mat j = Mat::Zero(dim, dim);
  for (int k = 0; k + 1 < dim; k += 2) {
    j(k, k + 1) = 1.0;
    j(k + 1, k) = -1.0;
  }
  return j;
}

double operator_norm_2x2(double a, double b, double c, double d) {
  // sigma1^2 + sigma2^2 = |M|_F^2 and sigma1 * sigma2 = |det M|.
  const double frob2 = a * a + b * b + c * c + d * d;
  const double det = std::abs(a * d - b * c);
  const double plus = std::sqrt(frob2 + 2.0 * det);
  const double minus = std::sqrt(std::max(0.0, frob2 - 2.0 * det));
  return 0.5 * (plus + minus);
}

double max_abs_entry(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

namespace {

NormResult power_iterate(const Mat& gram, Vec v, double residual_target) {
  NormResult out;
  double lambda = 0.0;
  constexpr int kMaxIterations = 20000;
  for (int it = 1; it <= kMaxIterations; ++it) {
    Vec w = gram * v;
    const double norm = w.norm();
    if (norm == 0.0) {
      out.iterations = it;
      return out;
    }
    lambda = v.dot(w);
    const double residual = (w - lambda * v).norm();
    out.iterations = it;
    out.residual = residual;
    if (residual <= residual_target * std::max(1.0, lambda)) break;
    v = w / norm;
  }
  out.value = std::sqrt(std::max(0.0, lambda));
  return out;
}

}  // namespace

NormResult operator_norm_certified(const Mat& m, double residual_target) {
  if (m.rows() == 2 && m.cols() == 2) {
    return {operator_norm_2x2(m(0, 0), m(0, 1), m(1, 0), m(1, 1)), 0.0, 0};
  }
  if (m.size() == 0) return {};
  const Mat gram = m.transpose() * m;

  // Two deterministic starts: the heaviest Gram column and a generic vector.
  Eigen::Index best = 0;
  gram.colwise().norm().maxCoeff(&best);
  Vec start_a = gram.col(best);
  if (start_a.norm() == 0.0) return {};
  start_a.normalize();
  Vec start_b(gram.rows());
  for (Eigen::Index i = 0; i < start_b.size(); ++i) start_b(i) = 1.0 + 0.1 * static_cast<double>(i);
  start_b.normalize();

  NormResult a = power_iterate(gram, start_a, residual_target);
  NormResult b = power_iterate(gram, start_b, residual_target);
  NormResult best_result = a.value >= b.value ? a : b;

  if (best_result.residual > residual_target * std::max(1.0, best_result.value * best_result.value)) {
    // Clustered spectrum: fall back to a direct symmetric eigensolve.
    Eigen::SelfAdjointEigenSolver<Mat> solver(gram);
    best_result.value = std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
    best_result.residual = 0.0;
  }
  return best_result;
}

double determinant(const Mat& m) {
  if (m.rows() == 2 && m.cols() == 2) {
    const double w = m(0, 1) * m(1, 0);
    const double err = std::fma(-m(0, 1), m(1, 0), w);
    return std::fma(m(0, 0), m(1, 1), -w) + err;
  }
  return m.determinant();
}

}  // namespace symgrowth
