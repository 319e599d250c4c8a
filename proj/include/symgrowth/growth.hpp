#pragma once

#include "symgrowth/grid.hpp"
#include "symgrowth/map_zoo.hpp"

#include <optional>
#include <string>
#include <vector>

namespace symgrowth {

/// Gamma_1 .. Gamma_N of a map, sampled on a grid. values[n - 1] = Gamma_n.
/// error_bars[n - 1] bounds the gap between the grid max and the true max,
/// so values + error_bars is a certified upper bound.
struct GrowthSeries {
  std::string map_id;
  int grid_resolution = 0;
  std::size_t grid_points = 0;
  double covering_radius = 0.0;
  std::vector<double> values;
  std::vector<double> error_bars;

  double gamma(long n) const { return values.at(static_cast<std::size_t>(n - 1)); }
  double upper(long n) const { return gamma(n) + error_bars.at(static_cast<std::size_t>(n - 1)); }
};

/// Gamma_n = max over the grid of max(|d f^n|, |d f^-n|). Axes along which the
/// map is translation-equivariant are collapsed (the Jacobian does not vary
/// along them). Throws RangeError if a Jacobian product overflows.
GrowthSeries growth_sequence(const SymplecticMap& map, int n_max, int grid_resolution, int jobs = 1);

// ---- lifts ------------------------------------------------------------------

/// A lift of a torus or cylinder map to the cover: f~(x) = lift(x) + deck_shift,
/// with deck action f~(x + v) = f~(x) + L v for integer v on periodic axes.
class LiftedMap {
 public:
  /// Throws PreconditionError if a listed fixed point moves by more than 1e-12.
  LiftedMap(SymplecticMap base, Vec deck_shift, std::vector<Vec> fixed_points, std::string id);

  const SymplecticMap& base() const { return base_; }
  const std::string& id() const { return id_; }
  const Vec& deck_shift() const { return shift_; }
  const std::vector<Vec>& fixed_points() const { return fixed_; }
  Mat deck_action() const { return base_.impl().deck_action(); }
  /// Fundamental domain [lo, hi] (periodic axes [0, 1], the momentum ball otherwise).
  const Domain& fundamental_domain() const { return base_.domain(); }

  Vec apply(const Vec& x) const;
  Vec apply_inverse(const Vec& x) const;
  Vec iterate(const Vec& x, long n) const;
  /// Jacobian of f~^n at x.
  Mat iterate_jacobian(const Vec& x, long n) const;

  /// max |f~(x + v) - f~(x) - L v| over `samples` random (x, v), |v_i| <= 3.
  double equivariance_defect(int samples, unsigned seed) const;

 private:
  SymplecticMap base_;
  Vec shift_;
  std::vector<Vec> fixed_;
  std::string id_;
};

/// The lifts used throughout: identity lift of an integer translation,
/// skew product, cat map, twist map, and the point-fixing lift gamma o f1.
std::vector<LiftedMap> standard_lifts();

LiftedMap skew_product_lift();
LiftedMap default_twist_lift();

/// Twist Hamiltonian used by the default twist model: core h0 (1 - s / eps^2)
/// (single interior max h0 at p = 0, plateau 0 near the boundary).
TwistHamiltonian default_twist_hamiltonian(int m = 1, double h0 = 0.1, double epsilon = 0.5);

struct PropagationSeries {
  std::string lift_id;
  Vec base_fixed_point;
  int grid_resolution = 0;
  std::vector<double> values;  // values[n - 1] = d_n
};

/// d_n = max over grid z in the fundamental domain of |x - f~^n z|.
PropagationSeries propagation(const LiftedMap& lift, int n_max, int grid_resolution, std::size_t fixed_index = 0);

// ---- classification ---------------------------------------------------------

enum class GrowthType { Elliptic, Parabolic, Hyperbolic, Inconclusive };

std::string to_string(GrowthType type);

struct GrowthClass {
  GrowthType type = GrowthType::Inconclusive;
  double rate = 0.0;          // hyperbolic: lim log Gamma_n / n
  double degree = 0.0;        // parabolic: slope of log Gamma_n against log n
  double residual_exp = 0.0;  // rms residual of the linear fit of log Gamma_n
  double residual_pow = 0.0;  // rms residual of the log-log fit
  bool heuristic = true;      // thresholds are fixed heuristics
};

/// Needs at least 16 terms.
GrowthClass classify_growth(const std::vector<double>& series);

enum class OrderRelation { Dominates, Dominated, Equivalent, Inconclusive };

std::string to_string(OrderRelation relation);

struct GrowthOrderVerdict {
  OrderRelation relation = OrderRelation::Inconclusive;
  double constant_witness = 0.0;  // c with a_n >= c b_n (or the weaker of the two for equivalent)
  std::size_t window_begin = 0;   // 1-based index range used for the fit
  std::size_t window_end = 0;
};

/// a_n >= c b_n is accepted when min a/b over the late window [N/2, N] is
/// positive and at least half the min over the early window [N/16, N/8].
GrowthOrderVerdict growth_order_compare(const std::vector<double>& a, const std::vector<double>& b);

/// B_n = max over an x grid of |sum_{k<n} psi'(x + k alpha)|, n = 1..n_max.
std::vector<double> birkhoff_growth(const FourierSeries& psi, double alpha, int n_max, int grid_points = 256);

}  // namespace symgrowth
