#pragma once

#include "symgrowth/forms.hpp"

#include <functional>
#include <string>
#include <vector>

namespace symgrowth {

enum class FillingModel { TorusR2n, HyperbolicPlane };

std::string to_string(FillingModel model);

/// Where balls are centred and how distances are measured.
struct FillingSetting {
  FillingModel model = FillingModel::TorusR2n;
  int dim = 2;              // 2n for the torus cover, 2 for the hyperbolic plane
  Vec base_point;           // defaults to 0 (torus) or (0, 1) (hyperbolic)
  double metric_scale = 1;  // flat metric = scale^2 * Euclidean

  static FillingSetting torus(int dim, double metric_scale = 1.0, Vec base = {});
  static FillingSetting hyperbolic(Vec base = {});
  std::string metric_id() const;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x, double tol = 0.0) const { return x >= lo - tol && x <= hi + tol; }
};

/// Certified bounds on u(s) at sample radii, optionally extended to all s by
/// closed-form bound functions (e.g. by homogeneity of the flat cover).
struct FillingEstimate {
  FillingModel model = FillingModel::TorusR2n;
  std::string metric_id;
  Vec base_point;
  std::vector<double> s_grid;
  std::vector<double> u_lo;
  std::vector<double> u_hi;
  std::function<double(double)> u_lo_fn;  // empty when only samples are known
  std::function<double(double)> u_hi_fn;

  double w_lo(std::size_t i) const { return s_grid[i] * u_lo[i]; }
  double w_hi(std::size_t i) const { return s_grid[i] * u_hi[i]; }
  bool closed_form() const { return static_cast<bool>(u_lo_fn) && static_cast<bool>(u_hi_fn); }
};

/// Candidate primitives for the setting: the standard primitive recentred at
/// the base point, its dual, and (flat) a version with an exact trig term.
std::vector<PrimitiveForm> default_candidates(const FillingSetting& setting);

/// min over candidates of a certified upper bound for sup_{B(s)} |alpha|.
/// dim 2: grid sup over the ball plus Lipschitz error bar (resolution points
/// per diameter). Flat dim > 2: closed-form triangle-inequality bound.
double u_upper(const FillingSetting& setting, double s, const std::vector<PrimitiveForm>& candidates,
               int resolution = 512);

/// Closed cycles inside B(s): regular polygons on the circle of radius s
/// (flat: in the (p1, q1)-plane; hyperbolic: on the hyperbolic circle).
std::vector<Polyline> default_cycles(const FillingSetting& setting, double s, int vertices = 64);

/// max over cycles of |int_c alpha| / length(c): a lower bound for u(s).
/// Throws PreconditionError when a cycle leaves B(s).
double u_lower(const FillingSetting& setting, double s, const std::vector<Polyline>& cycles);

FillingEstimate estimate_filling(const FillingSetting& setting, const std::vector<double>& s_grid,
                                 int resolution = 512, int cycle_vertices = 64);

/// Flat cover only: u(s) = u(1) s exactly, so every sample bounds the slope.
/// Installs u_lo_fn(s) = s max_i u_lo_i / s_i and u_hi_fn(s) = s min_i u_hi_i / s_i.
FillingEstimate with_homogeneous_extension(FillingEstimate estimate);

/// Closed-form estimate with u in [lo_slope s, hi_slope s] (flat) or [lo, hi] (hyperbolic).
FillingEstimate closed_form_estimate(FillingModel model, double lo, double hi);

/// Interval for v(t) = w^{-1}(t). With closed-form bounds, bisection to 1e-13;
/// otherwise bisection over the monotone step envelopes of the samples.
/// Throws RangeError if t is outside the sampled range.
Interval v_from_u(const FillingEstimate& estimate, double t);

/// u_lo <= u_hi, and the running max of u_lo stays below every later u_hi.
bool estimate_consistent(const FillingEstimate& estimate);

/// w intervals strictly increasing in interval order: w_hi(s_i) < w_lo(s_{i+1}).
/// Holds only on grids coarse enough for the bounds to separate.
bool w_intervals_ordered(const FillingEstimate& estimate);

struct EquivalenceReport {
  double constant = 0.0;  // smallest c with c^-1 v1 <= v2 <= c v1 on the sampled t
  std::vector<double> t_samples;
  bool scaling_holds = true;  // v(c t) <= c v(t) for c in {2, 5, 10}, when checked
};

/// Sandwich constant between two estimates over t_samples (like-bound ratios).
EquivalenceReport equivalence_properties(const FillingEstimate& a, const FillingEstimate& b,
                                         const std::vector<double>& t_samples);

/// v_hi(c t) <= c v_lo(t) (relative slack 1e-9) for every t sample and c.
bool scaling_property(const FillingEstimate& estimate, const std::vector<double>& t_samples,
                      const std::vector<double>& factors = {2.0, 5.0, 10.0});

}  // namespace symgrowth
