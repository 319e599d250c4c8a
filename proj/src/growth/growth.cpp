#include "symgrowth/growth.hpp"

#include "symgrowth/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <random>

namespace symgrowth {

namespace {
constexpr double kOverflow = 1e300;
}

GrowthSeries growth_sequence(const SymplecticMap& map, int n_max, int grid_resolution, int jobs) {
  if (n_max < 1) throw PreconditionError("growth_sequence: n_max must be >= 1");
  const auto& impl = map.impl();
  const Grid grid = make_grid(map.domain(), grid_resolution, impl.equivariant_axes());
  const auto n = static_cast<std::size_t>(n_max);
  const int d = map.dim();

  // Each chunk keeps its own running max; merging maxima is order-independent.
  std::vector<std::vector<double>> partial;
  std::mutex lock;
  parallel_chunks(grid.points.size(), jobs, [&](std::size_t begin, std::size_t end) {
    std::vector<double> best(n, 0.0);
    for (std::size_t g = begin; g < end; ++g) {
      for (int direction : {1, -1}) {
        Mat acc = Mat::Identity(d, d);
        Vec x = grid.points[g];
        for (std::size_t k = 0; k < n; ++k) {
          if (direction > 0) {
            acc = impl.jacobian(x) * acc;
            x = impl.lift(x);
          } else {
            acc = impl.inverse_jacobian(x) * acc;
            x = impl.lift_inverse(x);
          }
          if (!(max_abs_entry(acc) <= kOverflow))
            throw RangeError(fmt::format("growth_sequence: Jacobian overflow at n = {}", k + 1),
                             static_cast<long>(k));
          best[k] = std::max(best[k], operator_norm(acc));
        }
      }
    }
    std::lock_guard<std::mutex> guard(lock);
    partial.push_back(std::move(best));
  });

  GrowthSeries out;
  out.map_id = map.name();
  out.grid_resolution = grid_resolution;
  out.grid_points = grid.points.size();
  out.covering_radius = grid.covering_radius;
  out.values.assign(n, 0.0);
  for (const auto& p : partial)
    for (std::size_t k = 0; k < n; ++k) out.values[k] = std::max(out.values[k], p[k]);
  out.error_bars.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto steps = static_cast<long>(k + 1);
    const double lip = std::max(iterate_jacobian_lipschitz(map, steps), iterate_jacobian_lipschitz(map, -steps));
    out.error_bars[k] = grid.covering_radius == 0.0 ? 0.0 : grid.covering_radius * lip;
  }
  return out;
}

// ---- lifts ------------------------------------------------------------------

LiftedMap::LiftedMap(SymplecticMap base, Vec deck_shift, std::vector<Vec> fixed_points, std::string id)
    : base_(std::move(base)), shift_(std::move(deck_shift)), fixed_(std::move(fixed_points)), id_(std::move(id)) {
  if (shift_.size() != base_.dim()) throw PreconditionError("lift: deck shift has wrong dimension");
  for (Eigen::Index i = 0; i < shift_.size(); ++i)
    if (shift_(i) != std::round(shift_(i))) throw PreconditionError("lift: deck shift must be integral");
  for (const auto& x : fixed_) {
    const double moved = (apply(x) - x).norm();
    if (!(moved <= 1e-12))
      throw PreconditionError(fmt::format("lift '{}': listed fixed point moves by {:.3e}", id_, moved));
  }
}

Vec LiftedMap::apply(const Vec& x) const { return base_.impl().lift(x) + shift_; }

Vec LiftedMap::apply_inverse(const Vec& x) const { return base_.impl().lift_inverse(x - shift_); }

Vec LiftedMap::iterate(const Vec& x, long n) const {
  Vec y = x;
  for (long k = 0; k < std::labs(n); ++k) y = n > 0 ? apply(y) : apply_inverse(y);
  return y;
}

Mat LiftedMap::iterate_jacobian(const Vec& x, long n) const {
  const int d = base_.dim();
  Mat acc = Mat::Identity(d, d);
  Vec y = x;
  for (long k = 0; k < std::labs(n); ++k) {
    if (n > 0) {
      acc = base_.impl().jacobian(y) * acc;
      y = apply(y);
    } else {
      acc = base_.impl().inverse_jacobian(y) * acc;
      y = apply_inverse(y);
    }
  }
  return acc;
}

double LiftedMap::equivariance_defect(int samples, unsigned seed) const {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> shift(-3, 3);
  const Domain& dom = fundamental_domain();
  const Mat l = deck_action();
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    Vec x(dom.dim);
    Vec v = Vec::Zero(dom.dim);
    for (int a = 0; a < dom.dim; ++a) {
      x(a) = dom.lo(a) + (dom.hi(a) - dom.lo(a)) * unit(rng);
      if (dom.periodic[static_cast<std::size_t>(a)]) v(a) = shift(rng);
    }
    if (!dom.ball_axes.empty()) {
      // Rejection-free: shrink the momentum part into the ball.
      double r2 = 0.0;
      for (int a : dom.ball_axes) r2 += x(a) * x(a);
      if (std::sqrt(r2) > dom.ball_radius)
        for (int a : dom.ball_axes) x(a) *= dom.ball_radius / std::sqrt(r2);
    }
    worst = std::max(worst, (apply(x + v) - apply(x) - l * v).cwiseAbs().maxCoeff());
  }
  return worst;
}

TwistHamiltonian default_twist_hamiltonian(int m, double h0, double epsilon) {
  return TwistHamiltonian(m, epsilon, Polynomial({h0, -h0 / (epsilon * epsilon)}));
}

LiftedMap skew_product_lift() {
  return LiftedMap(skew_product_map(0.0, FourierSeries::standard_sine()), Vec::Zero(2),
                   {make_vec({0.0, 0.3}), make_vec({0.5, 0.3})}, "skew_product");
}

LiftedMap default_twist_lift() {
  const TwistHamiltonian h = default_twist_hamiltonian();
  return LiftedMap(twist_map(h), Vec::Zero(2), {make_vec({0.0, 0.0}), make_vec({0.95 * h.epsilon(), 0.0})},
                   "twist");
}

std::vector<LiftedMap> standard_lifts() {
  std::vector<LiftedMap> lifts;
  lifts.emplace_back(translation_map(make_vec({1.0, 0.0})), make_vec({-1.0, 0.0}),
                     std::vector<Vec>{make_vec({0.0, 0.0})}, "translation_identity");
  lifts.push_back(skew_product_lift());
  lifts.emplace_back(linear_torus_map(make_mat({{2.0, 1.0}, {1.0, 1.0}})), Vec::Zero(2),
                     std::vector<Vec>{make_vec({0.0, 0.0})}, "cat_map");
  lifts.push_back(default_twist_lift());
  lifts.emplace_back(appendix_gamma_flow(), make_vec({0.0, -1.0, 0.0, 1.0}),
                     std::vector<Vec>{make_vec({0.3, 0.6, 0.0, 0.5})}, "gamma_f1");
  return lifts;
}

PropagationSeries propagation(const LiftedMap& lift, int n_max, int grid_resolution, std::size_t fixed_index) {
  if (lift.fixed_points().size() <= fixed_index) throw PreconditionError("propagation: lift has no such fixed point");
  if (n_max < 1) throw PreconditionError("propagation: n_max must be >= 1");
  const Grid grid = make_grid(lift.fundamental_domain(), grid_resolution);
  const Vec& x = lift.fixed_points()[fixed_index];
  PropagationSeries out;
  out.lift_id = lift.id();
  out.base_fixed_point = x;
  out.grid_resolution = grid_resolution;
  out.values.assign(static_cast<std::size_t>(n_max), 0.0);
  for (const auto& z : grid.points) {
    Vec y = z;
    for (int k = 0; k < n_max; ++k) {
      y = lift.apply(y);
      out.values[static_cast<std::size_t>(k)] = std::max(out.values[static_cast<std::size_t>(k)], (y - x).norm());
    }
  }
  return out;
}

// ---- classification ---------------------------------------------------------

std::string to_string(GrowthType type) {
  switch (type) {
    case GrowthType::Elliptic: return "elliptic";
    case GrowthType::Parabolic: return "parabolic";
    case GrowthType::Hyperbolic: return "hyperbolic";
    case GrowthType::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string to_string(OrderRelation relation) {
  switch (relation) {
    case OrderRelation::Dominates: return "dominates";
    case OrderRelation::Dominated: return "dominated";
    case OrderRelation::Equivalent: return "equivalent";
    case OrderRelation::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  Eigen::MatrixXd design(static_cast<Eigen::Index>(xs.size()), 2);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    design(static_cast<Eigen::Index>(i), 0) = xs[i];
    design(static_cast<Eigen::Index>(i), 1) = 1.0;
    rhs(static_cast<Eigen::Index>(i)) = ys[i];
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
  const Eigen::VectorXd resid = design * coef - rhs;
  return {coef(0), coef(1), std::sqrt(resid.squaredNorm() / static_cast<double>(xs.size()))};
}

// Growth-classifier thresholds. Heuristics, reported as such.
constexpr double kEllipticSlack = 1e-6;
constexpr double kHyperbolicRatio = 10.0;
constexpr double kPowerResidualMax = 0.1;

}  // namespace

GrowthClass classify_growth(const std::vector<double>& series) {
  if (series.size() < 16) throw PreconditionError("classify_growth: need at least 16 terms");
  GrowthClass out;
  const double head = *std::max_element(series.begin(), series.begin() + 4);
  if (std::all_of(series.begin(), series.end(), [&](double g) { return g <= (1.0 + kEllipticSlack) * head; })) {
    out.type = GrowthType::Elliptic;
    return out;
  }
  const std::size_t n = series.size();
  std::vector<double> ns, logn, logg;
  for (std::size_t i = n / 4; i < n; ++i) {
    const double idx = static_cast<double>(i + 1);
    ns.push_back(idx);
    logn.push_back(std::log(idx));
    logg.push_back(std::log(series[i]));
  }
  const LineFit exp_fit = fit_line(ns, logg);
  const LineFit pow_fit = fit_line(logn, logg);
  out.rate = exp_fit.slope;
  out.degree = pow_fit.slope;
  out.residual_exp = exp_fit.rms;
  out.residual_pow = pow_fit.rms;
  if (exp_fit.slope > kHyperbolicRatio * exp_fit.rms && exp_fit.rms < pow_fit.rms)
    out.type = GrowthType::Hyperbolic;
  else if (pow_fit.rms > kPowerResidualMax)
    out.type = GrowthType::Inconclusive;
  else
    out.type = GrowthType::Parabolic;
  return out;
}

namespace {

struct Domination {
  bool holds = false;
  double constant = 0.0;
};

Domination dominates(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  auto window_min = [&](std::size_t lo, std::size_t hi) {  // 1-based, inclusive
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = lo; i <= hi; ++i) m = std::min(m, a[i - 1] / b[i - 1]);
    return m;
  };
  const double early = window_min(std::max<std::size_t>(1, n / 16), std::max<std::size_t>(1, n / 8 - 1));
  const double late = window_min(n / 2, n);
  Domination d;
  d.constant = late;
  d.holds = late > 0.0 && late >= 0.5 * early;
  return d;
}

}  // namespace

GrowthOrderVerdict growth_order_compare(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 16) throw PreconditionError("growth_order_compare: need equal lengths >= 16");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] > 0.0) || !(b[i] > 0.0)) throw PreconditionError("growth_order_compare: series must be positive");
  const Domination ab = dominates(a, b);
  const Domination ba = dominates(b, a);
  GrowthOrderVerdict v;
  v.window_begin = std::max<std::size_t>(1, a.size() / 16);
  v.window_end = a.size();
  if (ab.holds && ba.holds) {
    v.relation = OrderRelation::Equivalent;
    v.constant_witness = std::min(ab.constant, ba.constant);
  } else if (ab.holds) {
    v.relation = OrderRelation::Dominates;
    v.constant_witness = ab.constant;
  } else if (ba.holds) {
    v.relation = OrderRelation::Dominated;
    v.constant_witness = ba.constant;
  }
  return v;
}

std::vector<double> birkhoff_growth(const FourierSeries& psi, double alpha, int n_max, int grid_points) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw PreconditionError("birkhoff_growth: alpha must lie in [0, 1)");
  if (n_max < 1 || grid_points < 1) throw PreconditionError("birkhoff_growth: sizes must be positive");
  std::vector<double> sums(static_cast<std::size_t>(grid_points), 0.0);
  std::vector<double> out(static_cast<std::size_t>(n_max));
  for (int k = 0; k < n_max; ++k) {
    double best = 0.0;
    for (int j = 0; j < grid_points; ++j) {
      auto& s = sums[static_cast<std::size_t>(j)];
      s += psi.derivative(static_cast<double>(j) / grid_points + k * alpha, 1);
      best = std::max(best, std::abs(s));
    }
    out[static_cast<std::size_t>(k)] = best;
  }
  return out;
}

}  // namespace symgrowth
