#pragma once

#include "symgrowth/linalg.hpp"

#include <functional>
#include <string>
#include <vector>

namespace symgrowth {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  long evaluations = 0;
};

/// Adaptive Simpson with absolute target `tol` (Richardson-corrected). Panels
/// also stop refining once the change falls below 1e-12 of the coarse estimate
/// of int |f|, prorated by width.
QuadResult adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-10,
                            int max_depth = 40);

enum class CoverModel { PlaneR2n, HyperbolicHalfPlane };

/// Exact term d(c cos(2 pi k.x) + s sin(2 pi k.x)) added to a flat primitive.
struct TrigTerm {
  std::vector<int> k;
  double cos_coeff = 0.0;
  double sin_coeff = 0.0;
};

/// A primitive of the lifted symplectic form.
///
/// Flat: alpha_x = (A x + g) . dx + sum of exact trig terms on R^{2n}, with
/// A^T - A = J (the form matrix), so d alpha = sum dp ^ dq. The metric is
/// scale^2 times Euclidean.
/// Hyperbolic: alpha = dp / q + c dq on the upper half-plane, with the metric
/// (dp^2 + dq^2) / q^2.
class PrimitiveForm {
 public:
  /// Sum p_j dq_j on R^dim.
  static PrimitiveForm standard(int dim);
  /// -sum q_j dp_j on R^dim.
  static PrimitiveForm standard_dual(int dim);
  /// General flat primitive; throws PreconditionError unless A^T - A == J exactly.
  static PrimitiveForm flat(const Mat& a, const Vec& g, std::vector<TrigTerm> terms = {}, std::string id = "flat");
  static PrimitiveForm hyperbolic(double dq_coeff = 0.0);

  CoverModel model() const { return model_; }
  int dim() const { return dim_; }
  const std::string& id() const { return id_; }
  double metric_scale() const { return scale_; }
  bool has_trig_terms() const { return !terms_.empty(); }
  const Mat& linear() const { return a_; }
  const Vec& constant() const { return g_; }

  /// Same form, with the metric multiplied by scale^2.
  PrimitiveForm with_metric_scale(double scale) const;
  /// alpha - alpha(x0) for the linear part: adds the constant covector -A x0.
  PrimitiveForm recentred(const Vec& x0) const;
  PrimitiveForm plus_exact(const TrigTerm& term) const;

  /// Covector components at z. Hyperbolic: throws DomainError for q <= 0.
  Vec covector(const Vec& z) const;
  /// Metric norm of alpha_z.
  double norm(const Vec& z) const;
  /// Lipschitz constant of z -> norm(alpha_z) in the model metric, on a
  /// region where (hyperbolic) q <= q_max.
  double norm_lipschitz(double q_max = 0.0) const;
  /// Upper bound for the Euclidean |alpha_z| - |A z + g| (trig part only).
  double trig_sup_bound() const;

 private:
  PrimitiveForm() = default;

  CoverModel model_ = CoverModel::PlaneR2n;
  int dim_ = 2;
  Mat a_;
  Vec g_;
  std::vector<TrigTerm> terms_;
  double dq_coeff_ = 0.0;
  double scale_ = 1.0;
  std::string id_;
};

/// Polyline in a cover. Closed polylines return to the first vertex.
struct Polyline {
  std::vector<Vec> vertices;
  bool closed = false;
  std::string id;

  std::size_t segment_count() const;
  Vec segment_start(std::size_t i) const { return vertices[i]; }
  Vec segment_end(std::size_t i) const;
  double euclidean_length() const;
  /// Throws PreconditionError if two consecutive vertices are farther apart than max_step.
  void check_steps(double max_step) const;
};

/// Regular polygon with `vertices` corners on the circle of radius r about
/// `center` in the (axis, axis + 1) plane, counter-clockwise.
Polyline circle_polyline(const Vec& center, double r, int vertices, int axis = 0);
Polyline segment_polyline(const Vec& from, const Vec& to);

/// Integral of alpha along c, per-segment adaptive Simpson; total error < tol.
QuadResult line_integral(const PrimitiveForm& alpha, const Polyline& c, double tol = 1e-10);

/// Length of c in the form's metric (closed form per segment).
double metric_length(const PrimitiveForm& alpha, const Polyline& c);

}  // namespace symgrowth
