#pragma once

#include <Eigen/Dense>

#include <vector>

namespace symgrowth {

// Model dimensions are small (2, 4, 2n with n <= 4), so fixed upper bounds
// keep every point and Jacobian on the stack.
inline constexpr int kMaxDim = 8;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

Vec make_vec(std::initializer_list<double> values);
Vec make_vec(const std::vector<double>& values);
Mat make_mat(std::initializer_list<std::initializer_list<double>> rows);

/// Standard symplectic matrix in interleaved coordinates (p1, q1, ..., pn, qn):
/// block diag of [[0, 1], [-1, 0]].
Mat symplectic_form(int dim);

struct NormResult {
  double value = 0.0;
  double residual = 0.0;  // eigen-residual of the certifying vector (0 in dim 2)
  int iterations = 0;
};

/// Largest singular value. Closed form in dimension 2; power iteration on
/// M^T M with residual certification otherwise.
NormResult operator_norm_certified(const Mat& m, double residual_target = 1e-10);

inline double operator_norm(const Mat& m) { return operator_norm_certified(m).value; }

/// Closed-form largest singular value of a 2x2 matrix.
double operator_norm_2x2(double a, double b, double c, double d);

double max_abs_entry(const Mat& m);

/// Determinant; Kahan's fma scheme in dimension 2, so integer matrices with
/// entries near 2^50 still give det = 1 exactly.
double determinant(const Mat& m);

}  // namespace symgrowth
