#include "symgrowth/filling.hpp"

#include "symgrowth/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace symgrowth {

std::string to_string(FillingModel model) {
  return model == FillingModel::TorusR2n ? "torus" : "hyperbolic";
}

FillingSetting FillingSetting::torus(int dim, double metric_scale, Vec base) {
  if (dim < 2 || dim % 2 != 0 || dim > kMaxDim) throw PreconditionError("filling: torus dimension must be even");
  if (!(metric_scale > 0.0)) throw PreconditionError("filling: metric scale must be positive");
  FillingSetting s;
  s.model = FillingModel::TorusR2n;
  s.dim = dim;
  s.metric_scale = metric_scale;
  s.base_point = base.size() == 0 ? Vec(Vec::Zero(dim)) : base;
  if (s.base_point.size() != dim) throw PreconditionError("filling: base point has wrong dimension");
  return s;
}

FillingSetting FillingSetting::hyperbolic(Vec base) {
  FillingSetting s;
  s.model = FillingModel::HyperbolicPlane;
  s.dim = 2;
  s.base_point = base.size() == 0 ? make_vec({0.0, 1.0}) : base;
  if (s.base_point.size() != 2 || !(s.base_point(1) > 0.0))
    throw PreconditionError("filling: hyperbolic base point must have q > 0");
  return s;
}

std::string FillingSetting::metric_id() const {
  if (model == FillingModel::HyperbolicPlane) return "hyperbolic";
  return metric_scale == 1.0 ? "euclidean" : fmt::format("euclidean_x{}", metric_scale);
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double model_distance(const FillingSetting& setting, const Vec& a, const Vec& b) {
  if (setting.model == FillingModel::HyperbolicPlane) {
    const double d2 = (a - b).squaredNorm();
    return std::acosh(1.0 + d2 / (2.0 * a(1) * b(1)));
  }
  return setting.metric_scale * (a - b).norm();
}

void require_model(const FillingSetting& setting, const PrimitiveForm& alpha) {
  const bool hyper = setting.model == FillingModel::HyperbolicPlane;
  if (hyper != (alpha.model() == CoverModel::HyperbolicHalfPlane) || alpha.dim() != setting.dim)
    throw PreconditionError(fmt::format("filling: candidate '{}' lives on a different cover", alpha.id()));
}

PrimitiveForm scaled(const FillingSetting& setting, const PrimitiveForm& alpha) {
  if (setting.model == FillingModel::HyperbolicPlane) return alpha;
  return alpha.with_metric_scale(setting.metric_scale);
}

// Flat dim 2: grid sup of |alpha| over the Euclidean disc of radius r about x0.
double flat_grid_sup(const PrimitiveForm& alpha, const Vec& x0, double r, int resolution) {
  const double step = 2.0 * r / resolution;
  double best = 0.0;
  for (int i = 0; i <= resolution; ++i) {
    for (int j = 0; j <= resolution; ++j) {
      Vec y = make_vec({-r + step * i, -r + step * j});
      const double len = y.norm();
      if (len > r) y *= r / len;
      best = std::max(best, alpha.norm(x0 + y));
    }
  }
  // Euclidean covering radius step / sqrt(2), measured in the scaled metric.
  const double cover = alpha.metric_scale() * step / std::sqrt(2.0);
  return best + alpha.norm_lipschitz() * cover;
}

Vec disc_to_half_plane(const Vec& base, double radius, double angle) {
  const std::complex<double> w = std::polar(std::tanh(0.5 * radius), angle);
  const std::complex<double> z = std::complex<double>(0.0, 1.0) * (1.0 + w) / (1.0 - w);
  return make_vec({base(0) + base(1) * z.real(), base(1) * z.imag()});
}

double hyperbolic_grid_sup(const PrimitiveForm& alpha, const Vec& base, double s, int resolution) {
  const int radial = std::max(2, resolution / 2);
  const int angular = std::max(8, resolution);
  double best = 0.0;
  for (int i = 0; i <= radial; ++i) {
    const double r = s * i / radial;
    for (int j = 0; j < (i == 0 ? 1 : angular); ++j) best = std::max(best, alpha.norm(disc_to_half_plane(base, r, kTwoPi * j / angular)));
  }
  const double cover = 0.5 * s / radial + 0.5 * std::sinh(s) * kTwoPi / angular;
  const double q_max = base(1) * std::exp(s);
  return best + alpha.norm_lipschitz(q_max) * cover;
}

}  // namespace

std::vector<PrimitiveForm> default_candidates(const FillingSetting& setting) {
  if (setting.model == FillingModel::HyperbolicPlane)
    return {PrimitiveForm::hyperbolic(0.0), PrimitiveForm::hyperbolic(0.1)};
  const int d = setting.dim;
  const Vec& x0 = setting.base_point;
  TrigTerm wiggle;
  wiggle.k.assign(static_cast<std::size_t>(d), 0);
  wiggle.k[0] = 1;
  wiggle.sin_coeff = 1.0;
  return {PrimitiveForm::standard(d).recentred(x0), PrimitiveForm::standard_dual(d).recentred(x0),
          PrimitiveForm::standard(d).recentred(x0).plus_exact(wiggle)};
}

double u_upper(const FillingSetting& setting, double s, const std::vector<PrimitiveForm>& candidates, int resolution) {
  if (candidates.empty()) throw PreconditionError("u_upper: empty candidate family");
  if (!(s > 0.0)) throw PreconditionError("u_upper: s must be positive");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& cand : candidates) {
    require_model(setting, cand);
    const PrimitiveForm alpha = scaled(setting, cand);
    double bound = 0.0;
    if (setting.model == FillingModel::HyperbolicPlane) {
      bound = hyperbolic_grid_sup(alpha, setting.base_point, s, resolution);
    } else if (setting.dim == 2) {
      bound = flat_grid_sup(alpha, setting.base_point, s / setting.metric_scale, resolution);
    } else {
      // |A (x0 + y) + g| <= |A x0 + g| + |A| |y| on the Euclidean ball |y| <= s / scale.
      const Vec& x0 = setting.base_point;
      const double r = s / setting.metric_scale;
      bound = ((alpha.linear() * x0 + alpha.constant()).norm() + operator_norm(alpha.linear()) * r +
               alpha.trig_sup_bound()) /
              setting.metric_scale;
    }
    best = std::min(best, bound);
  }
  return best;
}

std::vector<Polyline> default_cycles(const FillingSetting& setting, double s, int vertices) {
  if (setting.model == FillingModel::HyperbolicPlane) {
    const Vec& b = setting.base_point;
    const Vec center = make_vec({b(0), b(1) * std::cosh(s)});
    return {circle_polyline(center, b(1) * std::sinh(s), vertices)};
  }
  return {circle_polyline(setting.base_point, s / setting.metric_scale, vertices)};
}

double u_lower(const FillingSetting& setting, double s, const std::vector<Polyline>& cycles) {
  const PrimitiveForm alpha = setting.model == FillingModel::HyperbolicPlane
                                  ? PrimitiveForm::hyperbolic()
                                  : PrimitiveForm::standard(setting.dim).with_metric_scale(setting.metric_scale);
  double best = 0.0;
  for (const auto& c : cycles) {
    if (!c.closed) throw PreconditionError(fmt::format("u_lower: cycle '{}' is not closed", c.id));
    for (const auto& v : c.vertices)
      // Relative slack absorbs roundoff in the polygon vertices (q can be ~e^-s).
      if (model_distance(setting, setting.base_point, v) > s * (1.0 + 1e-9))
        throw PreconditionError(fmt::format("u_lower: cycle '{}' leaves B({})", c.id, s));
    const double area = std::abs(line_integral(alpha, c).value);
    best = std::max(best, area / metric_length(alpha, c));
  }
  return best;
}

FillingEstimate estimate_filling(const FillingSetting& setting, const std::vector<double>& s_grid, int resolution,
                                 int cycle_vertices) {
  if (!std::is_sorted(s_grid.begin(), s_grid.end()) || s_grid.empty() || !(s_grid.front() > 0.0))
    throw PreconditionError("estimate_filling: s grid must be positive and increasing");
  FillingEstimate est;
  est.model = setting.model;
  est.metric_id = setting.metric_id();
  est.base_point = setting.base_point;
  const auto candidates = default_candidates(setting);
  for (double s : s_grid) {
    est.s_grid.push_back(s);
    est.u_lo.push_back(u_lower(setting, s, default_cycles(setting, s, cycle_vertices)));
    est.u_hi.push_back(u_upper(setting, s, candidates, resolution));
  }
  return est;
}

FillingEstimate with_homogeneous_extension(FillingEstimate estimate) {
  if (estimate.model != FillingModel::TorusR2n)
    throw PreconditionError("homogeneous extension needs the flat cover");
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < estimate.s_grid.size(); ++i) {
    lo = std::max(lo, estimate.u_lo[i] / estimate.s_grid[i]);
    hi = std::min(hi, estimate.u_hi[i] / estimate.s_grid[i]);
  }
  estimate.u_lo_fn = [lo](double s) { return lo * s; };
  estimate.u_hi_fn = [hi](double s) { return hi * s; };
  return estimate;
}

FillingEstimate closed_form_estimate(FillingModel model, double lo, double hi) {
  if (!(lo > 0.0) || !(hi >= lo)) throw PreconditionError("closed-form estimate needs 0 < lo <= hi");
  FillingEstimate est;
  est.model = model;
  est.metric_id = "closed_form";
  if (model == FillingModel::TorusR2n) {
    est.u_lo_fn = [lo](double s) { return lo * s; };
    est.u_hi_fn = [hi](double s) { return hi * s; };
  } else {
    est.u_lo_fn = [lo](double) { return lo; };
    est.u_hi_fn = [hi](double) { return hi; };
  }
  return est;
}

namespace {

// Smallest s (returned as a bracket end) with w(s) >= t, w nondecreasing.
double invert_increasing(const std::function<double(double)>& w, double t, bool want_upper_end) {
  double lo = 0.0;
  double hi = 1.0;
  int grow = 0;
  while (w(hi) < t) {
    lo = hi;
    hi *= 2.0;
    if (++grow > 1100) throw RangeError(fmt::format("v_from_u: t = {} is out of reach", t));
  }
  for (int it = 0; it < 400 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (w(mid) >= t ? hi : lo) = mid;
  }
  return want_upper_end ? hi : lo;
}

}  // namespace

Interval v_from_u(const FillingEstimate& est, double t) {
  if (!(t > 0.0)) throw RangeError("v_from_u: t must be positive");
  if (est.closed_form()) {
    const auto w_hi = [&](double s) { return s * est.u_hi_fn(s); };
    const auto w_lo = [&](double s) { return s * est.u_lo_fn(s); };
    return {invert_increasing(w_hi, t, false), invert_increasing(w_lo, t, true)};
  }
  const std::size_t n = est.s_grid.size();
  if (n == 0) throw RangeError("v_from_u: empty estimate");
  // w(s) <= Whi(s_i) := min_{k >= i} w_hi(s_k) for s <= s_i, and w(s) >= Wlo(s_i) := max_{k <= i} w_lo(s_k) for s >= s_i.
  std::vector<double> whi(n), wlo(n);
  whi[n - 1] = est.w_hi(n - 1);
  for (std::size_t i = n - 1; i-- > 0;) whi[i] = std::min(whi[i + 1], est.w_hi(i));
  wlo[0] = est.w_lo(0);
  for (std::size_t i = 1; i < n; ++i) wlo[i] = std::max(wlo[i - 1], est.w_lo(i));
  if (t > whi[n - 1] || !(t < wlo[n - 1]))
    throw RangeError(fmt::format("v_from_u: t = {} outside the sampled range", t));
  // Both envelopes are monotone, so bisection over indices finds the first crossing.
  const auto first_hi = static_cast<std::size_t>(std::lower_bound(whi.begin(), whi.end(), t) - whi.begin());
  const auto first_lo = static_cast<std::size_t>(std::upper_bound(wlo.begin(), wlo.end(), t) - wlo.begin());
  Interval out;
  out.lo = first_hi == 0 ? 0.0 : est.s_grid[first_hi - 1];
  out.hi = est.s_grid[first_lo];
  return out;
}

bool estimate_consistent(const FillingEstimate& est) {
  double run = 0.0;
  for (std::size_t i = 0; i < est.s_grid.size(); ++i) {
    run = std::max(run, est.u_lo[i]);
    if (!(est.u_lo[i] <= est.u_hi[i]) || !(run <= est.u_hi[i])) return false;
  }
  return true;
}

bool w_intervals_ordered(const FillingEstimate& est) {
  for (std::size_t i = 0; i + 1 < est.s_grid.size(); ++i)
    if (!(est.w_hi(i) < est.w_lo(i + 1))) return false;
  return true;
}

EquivalenceReport equivalence_properties(const FillingEstimate& a, const FillingEstimate& b,
                                         const std::vector<double>& t_samples) {
  if (a.model != b.model) throw PreconditionError("equivalence_properties: estimates on different models");
  EquivalenceReport rep;
  rep.t_samples = t_samples;
  rep.constant = 1.0;
  for (double t : t_samples) {
    const Interval va = v_from_u(a, t);
    const Interval vb = v_from_u(b, t);
    for (const double r : {vb.lo / va.lo, vb.hi / va.hi}) rep.constant = std::max({rep.constant, r, 1.0 / r});
  }
  return rep;
}

bool scaling_property(const FillingEstimate& est, const std::vector<double>& t_samples,
                      const std::vector<double>& factors) {
  for (double t : t_samples)
    for (double c : factors)
      if (v_from_u(est, c * t).hi > c * v_from_u(est, t).lo * (1.0 + 1e-9)) return false;
  return true;
}

}  // namespace symgrowth
