#include "symgrowth/forms.hpp"

#include "symgrowth/errors.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

namespace symgrowth {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct SimpsonState {
  const std::function<double(double)>* f;
  long evaluations = 0;
  double error = 0.0;
  double noise_density = 0.0;
};

double simpson_step(SimpsonState& st, double a, double b, double fa, double fm, double fb, double whole, double tol,
                    int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = (*st.f)(lm);
  const double frm = (*st.f)(rm);
  st.evaluations += 2;
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  // Stop at the tolerance or once the change is below the integrand's evaluation
  // noise, taken as 1e-12 of the total absolute mass per unit length (polynomial
  // profiles in expanded form are noisier than machine epsilon).
  const double noise = st.noise_density * (b - a);
  if (depth <= 0 || std::abs(diff) <= std::max(15.0 * tol, noise)) {
    st.error += std::abs(diff) / 15.0;
    return left + right + diff / 15.0;
  }
  return simpson_step(st, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(st, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

QuadResult adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol, int max_depth) {
  if (a == b) return {};
  SimpsonState st{&f};
  // Four initial panels so that symmetric integrands cannot fool the first estimate.
  constexpr int kPanels = 4;
  double samples[2 * kPanels + 1];
  for (int i = 0; i <= 2 * kPanels; ++i) samples[i] = f(a + (b - a) * i / (2 * kPanels));
  st.evaluations += 2 * kPanels + 1;
  double mass = 0.0;
  for (int i = 0; i < kPanels; ++i)
    mass += std::abs(samples[2 * i]) + 4.0 * std::abs(samples[2 * i + 1]) + std::abs(samples[2 * i + 2]);
  st.noise_density = 1e-12 * mass / (6.0 * kPanels);
  double total = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    const double lo = a + (b - a) * i / kPanels;
    const double hi = a + (b - a) * (i + 1) / kPanels;
    const double whole = (hi - lo) / 6.0 * (samples[2 * i] + 4.0 * samples[2 * i + 1] + samples[2 * i + 2]);
    total += simpson_step(st, lo, hi, samples[2 * i], samples[2 * i + 1], samples[2 * i + 2], whole, tol / kPanels,
                          max_depth);
  }
  return {total, st.error, st.evaluations};
}

// ---- PrimitiveForm --------------------------------------------------------------

PrimitiveForm PrimitiveForm::standard(int dim) {
  Mat a = Mat::Zero(dim, dim);
  for (int k = 0; 2 * k + 1 < dim; ++k) a(2 * k + 1, 2 * k) = 1.0;  // alpha_q = p
  return flat(a, Vec::Zero(dim), {}, "p_dq");
}

PrimitiveForm PrimitiveForm::standard_dual(int dim) {
  Mat a = Mat::Zero(dim, dim);
  for (int k = 0; 2 * k + 1 < dim; ++k) a(2 * k, 2 * k + 1) = -1.0;  // alpha_p = -q
  return flat(a, Vec::Zero(dim), {}, "minus_q_dp");
}

PrimitiveForm PrimitiveForm::flat(const Mat& a, const Vec& g, std::vector<TrigTerm> terms, std::string id) {
  const auto dim = static_cast<int>(a.rows());
  if (dim < 2 || dim % 2 != 0 || a.cols() != dim || g.size() != dim)
    throw PreconditionError("primitive: A must be square of even size and g must match");
  // d(sum_j (A x)_j dx_j) = sum_{i<j} (A_ji - A_ij) dx_i ^ dx_j must equal sum dp ^ dq.
  if ((a.transpose() - a - symplectic_form(dim)).cwiseAbs().maxCoeff() != 0.0)
    throw PreconditionError("primitive: d alpha != omega (A^T - A must equal the form matrix)");
  for (const auto& t : terms)
    if (static_cast<int>(t.k.size()) != dim) throw PreconditionError("primitive: trig wave vector has wrong size");
  PrimitiveForm out;
  out.model_ = CoverModel::PlaneR2n;
  out.dim_ = dim;
  out.a_ = a;
  out.g_ = g;
  out.terms_ = std::move(terms);
  out.id_ = std::move(id);
  return out;
}

PrimitiveForm PrimitiveForm::hyperbolic(double dq_coeff) {
  PrimitiveForm out;
  out.model_ = CoverModel::HyperbolicHalfPlane;
  out.dim_ = 2;
  out.dq_coeff_ = dq_coeff;
  out.id_ = dq_coeff == 0.0 ? "dp_over_q" : fmt::format("dp_over_q_plus_{}dq", dq_coeff);
  return out;
}

PrimitiveForm PrimitiveForm::with_metric_scale(double scale) const {
  if (!(scale > 0.0)) throw PreconditionError("primitive: metric scale must be positive");
  if (model_ != CoverModel::PlaneR2n) throw PreconditionError("primitive: metric scaling is for flat covers");
  PrimitiveForm out = *this;
  out.scale_ = scale;
  return out;
}

PrimitiveForm PrimitiveForm::recentred(const Vec& x0) const {
  if (model_ != CoverModel::PlaneR2n) throw PreconditionError("primitive: recentring is for flat covers");
  PrimitiveForm out = *this;
  out.g_ = g_ - a_ * x0;
  out.id_ = id_ + "_recentred";
  return out;
}

PrimitiveForm PrimitiveForm::plus_exact(const TrigTerm& term) const {
  if (model_ != CoverModel::PlaneR2n) throw PreconditionError("primitive: trig terms are for flat covers");
  if (static_cast<int>(term.k.size()) != dim_) throw PreconditionError("primitive: trig wave vector has wrong size");
  PrimitiveForm out = *this;
  out.terms_.push_back(term);
  out.id_ = id_ + "_plus_exact";
  return out;
}

Vec PrimitiveForm::covector(const Vec& z) const {
  if (model_ == CoverModel::HyperbolicHalfPlane) {
    if (!(z(1) > 0.0)) throw DomainError("hyperbolic primitive: point with q <= 0");
    return make_vec({1.0 / z(1), dq_coeff_});
  }
  Vec out = a_ * z + g_;
  for (const auto& t : terms_) {
    double phase = 0.0;
    for (int i = 0; i < dim_; ++i) phase += t.k[static_cast<std::size_t>(i)] * z(i);
    phase *= kTwoPi;
    // d(c cos + s sin) = 2 pi k (-c sin + s cos)
    const double w = kTwoPi * (-t.cos_coeff * std::sin(phase) + t.sin_coeff * std::cos(phase));
    for (int i = 0; i < dim_; ++i) out(i) += w * t.k[static_cast<std::size_t>(i)];
  }
  return out;
}

double PrimitiveForm::norm(const Vec& z) const {
  if (model_ == CoverModel::HyperbolicHalfPlane) return z(1) * covector(z).norm();
  return covector(z).norm() / scale_;
}

double PrimitiveForm::trig_sup_bound() const {
  double bound = 0.0;
  for (const auto& t : terms_) {
    double k2 = 0.0;
    for (int v : t.k) k2 += static_cast<double>(v) * v;
    bound += kTwoPi * std::sqrt(k2) * (std::abs(t.cos_coeff) + std::abs(t.sin_coeff));
  }
  return bound;
}

double PrimitiveForm::norm_lipschitz(double q_max) const {
  if (model_ == CoverModel::HyperbolicHalfPlane) {
    // norm = sqrt(1 + c^2 q^2); hyperbolic gradient q |d/dq| <= |c| q.
    return std::abs(dq_coeff_) * q_max;
  }
  double lip = operator_norm(a_);
  for (const auto& t : terms_) {
    double k2 = 0.0;
    for (int v : t.k) k2 += static_cast<double>(v) * v;
    lip += kTwoPi * kTwoPi * k2 * (std::abs(t.cos_coeff) + std::abs(t.sin_coeff));
  }
  // |alpha|_rho = |alpha| / s and d_rho = s d_E.
  return lip / (scale_ * scale_);
}

// ---- Polyline ----------------------------------------------------------------

std::size_t Polyline::segment_count() const {
  if (vertices.size() < 2) return 0;
  return closed ? vertices.size() : vertices.size() - 1;
}

Vec Polyline::segment_end(std::size_t i) const { return vertices[(i + 1) % vertices.size()]; }

double Polyline::euclidean_length() const {
  double len = 0.0;
  for (std::size_t i = 0; i < segment_count(); ++i) len += (segment_end(i) - segment_start(i)).norm();
  return len;
}

void Polyline::check_steps(double max_step) const {
  for (std::size_t i = 0; i < segment_count(); ++i)
    if ((segment_end(i) - segment_start(i)).norm() > max_step)
      throw PreconditionError(fmt::format("polyline '{}': segment {} longer than {}", id, i, max_step));
}

Polyline circle_polyline(const Vec& center, double r, int vertices, int axis) {
  Polyline c;
  c.closed = true;
  c.id = fmt::format("circle_r{}_n{}", r, vertices);
  for (int i = 0; i < vertices; ++i) {
    const double th = kTwoPi * i / vertices;
    Vec v = center;
    v(axis) += r * std::cos(th);
    v(axis + 1) += r * std::sin(th);
    c.vertices.push_back(v);
  }
  return c;
}

Polyline segment_polyline(const Vec& from, const Vec& to) {
  Polyline c;
  c.vertices = {from, to};
  c.id = "segment";
  return c;
}

QuadResult line_integral(const PrimitiveForm& alpha, const Polyline& c, double tol) {
  QuadResult total;
  const std::size_t segs = c.segment_count();
  if (segs == 0) return total;
  if (alpha.model() == CoverModel::HyperbolicHalfPlane)
    for (const auto& v : c.vertices)
      if (!(v(1) > 0.0)) throw DomainError("line integral: hyperbolic polyline leaves q > 0");
  if (alpha.model() == CoverModel::HyperbolicHalfPlane) {
    // Exact per segment: int dp / q = dp (ln q1 - ln q0) / (q1 - q0) with q linear.
    for (std::size_t i = 0; i < segs; ++i) {
      const Vec a = c.segment_start(i);
      const Vec b = c.segment_end(i);
      const double q0 = a(1);
      const double q1 = b(1);
      const double inv_q = std::abs(q1 - q0) < 1e-14 * q0 ? 1.0 / q0 : (std::log(q1) - std::log(q0)) / (q1 - q0);
      total.value += (b(0) - a(0)) * inv_q + alpha.covector(a)(1) * (q1 - q0);
    }
    return total;
  }
  const double seg_tol = tol / static_cast<double>(segs);
  for (std::size_t i = 0; i < segs; ++i) {
    const Vec z0 = c.segment_start(i);
    const Vec dz = c.segment_end(i) - z0;
    const auto r = adaptive_simpson([&](double t) { return alpha.covector(z0 + t * dz).dot(dz); }, 0.0, 1.0, seg_tol);
    total.value += r.value;
    total.error += r.error;
    total.evaluations += r.evaluations;
  }
  return total;
}

double metric_length(const PrimitiveForm& alpha, const Polyline& c) {
  double len = 0.0;
  for (std::size_t i = 0; i < c.segment_count(); ++i) {
    const Vec a = c.segment_start(i);
    const Vec b = c.segment_end(i);
    const double e = (b - a).norm();
    if (alpha.model() == CoverModel::HyperbolicHalfPlane) {
      // int_0^1 |dz| / q(t) with q linear in t.
      const double q0 = a(1);
      const double q1 = b(1);
      if (!(q0 > 0.0 && q1 > 0.0)) throw DomainError("metric length: hyperbolic polyline leaves q > 0");
      len += std::abs(q1 - q0) < 1e-14 * q0 ? e / q0 : e * (std::log(q1) - std::log(q0)) / (q1 - q0);
    } else {
      len += e * alpha.metric_scale();
    }
  }
  return len;
}

}  // namespace symgrowth
