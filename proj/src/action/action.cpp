#include "symgrowth/action.hpp"

#include "symgrowth/errors.hpp"
#include "symgrowth/grid.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace symgrowth {

namespace {

constexpr double kFixedTol = 1e-12;

void require_fixed(const LiftedMap& lift, const Vec& x, const char* name) {
  if (x.size() != lift.base().dim()) throw PreconditionError(fmt::format("action: {} has wrong dimension", name));
  const double moved = (lift.apply(x) - x).norm();
  if (moved > kFixedTol)
    throw PreconditionError(fmt::format("action: {} is not fixed by the lift (moves by {:.3g})", name, moved));
}

// f~^n(z) together with D f~^n(z).
std::pair<Vec, Mat> iterate_with_jacobian(const LiftedMap& lift, const Vec& z, long n) {
  const auto& impl = lift.base().impl();
  Mat acc = Mat::Identity(z.size(), z.size());
  Vec y = z;
  for (long k = 0; k < std::labs(n); ++k) {
    if (n > 0) {
      acc = impl.jacobian(y) * acc;
      y = lift.apply(y);
    } else {
      acc = impl.inverse_jacobian(y) * acc;
      y = lift.apply_inverse(y);
    }
  }
  return {y, acc};
}

// Composite 10-point Gauss-Legendre in t on [a, b]; never evaluates the endpoints.
double gauss_time(const std::function<double(double)>& f, double a, double b, int panels = 4) {
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + (b - a) * i / panels;
    const double hi = a + (b - a) * (i + 1) / panels;
    total += boost::math::quadrature::gauss<double, 10>::integrate(f, lo, hi);
  }
  return total;
}

}  // namespace

// ---- action difference ----------------------------------------------------------

ActionRecord action_difference(const LiftedMap& lift, const Vec& x, const Vec& y, const Polyline& gamma,
                               const PrimitiveForm& alpha, long n, double tol) {
  require_fixed(lift, x, "x");
  require_fixed(lift, y, "y");
  if (gamma.closed || gamma.vertices.size() < 2) throw PreconditionError("action: gamma must be an open polyline");
  if ((gamma.vertices.front() - x).norm() > kFixedTol || (gamma.vertices.back() - y).norm() > kFixedTol)
    throw PreconditionError("action: gamma must join x to y");
  if (alpha.model() != CoverModel::PlaneR2n || alpha.dim() != lift.base().dim())
    throw PreconditionError("action: primitive lives on a different cover");
  gamma.check_steps(lift.fundamental_domain().diameter());

  ActionRecord rec;
  rec.lift_id = lift.id();
  rec.primitive_id = alpha.id();
  rec.curve_id = gamma.id;
  rec.iterate = n;

  const QuadResult base = line_integral(alpha, gamma, 0.5 * tol);
  const double seg_tol = 0.5 * tol / static_cast<double>(gamma.segment_count());
  double image = 0.0;
  double err = base.error;
  for (std::size_t i = 0; i < gamma.segment_count(); ++i) {
    const Vec z0 = gamma.segment_start(i);
    const Vec dz = gamma.segment_end(i) - z0;
    const auto r = adaptive_simpson(
        [&](double t) {
          const auto [w, jac] = iterate_with_jacobian(lift, z0 + t * dz, n);
          return alpha.covector(w).dot(jac * dz);
        },
        0.0, 1.0, seg_tol);
    image += r.value;
    err += r.error;
  }
  rec.value = image - base.value;
  rec.error = err;
  return rec;
}

ActionRecord action_difference(const LiftedMap& lift, const Vec& x, const Vec& y, long n) {
  Polyline gamma = segment_polyline(x, y);
  return action_difference(lift, x, y, gamma, PrimitiveForm::standard(lift.base().dim()), n);
}

double verify_iterate_scaling(const LiftedMap& lift, const Vec& x, const Vec& y, long n_max) {
  if (n_max < 1) throw PreconditionError("verify_iterate_scaling: n_max must be >= 1");
  const double base = action_difference(lift, x, y, 1).value;
  if (std::abs(base) <= 1e-12) throw PreconditionError("verify_iterate_scaling: delta vanishes for this pair");
  double worst = 0.0;
  for (long n = 2; n <= n_max; ++n) {
    const double dn = action_difference(lift, x, y, n).value;
    worst = std::max(worst, std::abs(dn / (static_cast<double>(n) * base) - 1.0));
  }
  return worst;
}

// ---- symplectic paths -----------------------------------------------------------

namespace {

class ShearPath final : public SymplecticPath {
 public:
  explicit ShearPath(FourierSeries psi)
      : psi_(std::move(psi)), primitive_(psi_.antiderivative()), domain_(Domain::torus(2)) {}
  std::string id() const override { return "shear"; }
  const Domain& domain() const override { return domain_; }
  Vec field(double, const Vec& x) const override { return make_vec({0.0, psi_.value(x(0))}); }
  bool hamiltonian() const override { return psi_.mean() == 0.0; }
  double function(double, const Vec& x) const override {
    if (!hamiltonian()) throw PreconditionError("shear path: psi has nonzero mean, so the path is not Hamiltonian");
    return primitive_.value(x(0));
  }
  double field_bound(double) const override { return psi_.derivative_bound(0); }
  double field_lipschitz(double) const override { return psi_.derivative_bound(1); }

 private:
  FourierSeries psi_;
  FourierSeries primitive_;
  Domain domain_;
};

class TranslationPath final : public SymplecticPath {
 public:
  explicit TranslationPath(Vec e) : e_(std::move(e)), domain_(Domain::torus(static_cast<int>(e_.size()))) {}
  std::string id() const override { return "translation"; }
  const Domain& domain() const override { return domain_; }
  Vec field(double, const Vec&) const override { return e_; }
  bool hamiltonian() const override { return e_.isZero(0.0); }
  double function(double, const Vec&) const override {
    if (!hamiltonian()) throw PreconditionError("translation path with e != 0 is not Hamiltonian");
    return 0.0;
  }
  double field_bound(double) const override { return e_.norm(); }
  double field_lipschitz(double) const override { return 0.0; }

 private:
  Vec e_;
  Domain domain_;
};

class TwistPath final : public SymplecticPath {
 public:
  TwistPath(TwistHamiltonian h, double time)
      : h_(std::move(h)), time_(time), mean_(h_.disc_mean()), domain_(Domain::twist_cylinder(h_.m(), h_.epsilon())) {}
  std::string id() const override { return "twist"; }
  const Domain& domain() const override { return domain_; }
  Vec field(double, const Vec& x) const override {
    const Vec grad = h_.gradient(momenta(x));
    Vec xi = Vec::Zero(x.size());
    for (int k = 0; k < h_.m(); ++k) xi(2 * k + 1) = time_ * grad(k);
    return xi;
  }
  bool hamiltonian() const override { return true; }
  double function(double, const Vec& x) const override { return time_ * (h_.value(momenta(x)) - mean_); }
  double field_bound(double) const override { return std::abs(time_) * h_.gradient_norm_bound(); }
  double field_lipschitz(double) const override { return std::abs(time_) * h_.hessian_norm_bound(); }

 private:
  Vec momenta(const Vec& x) const {
    Vec p(h_.m());
    for (int k = 0; k < h_.m(); ++k) p(k) = x(2 * k);
    return p;
  }
  TwistHamiltonian h_;
  double time_;
  double mean_;
  Domain domain_;
};

class ConcatenatedPath final : public SymplecticPath {
 public:
  ConcatenatedPath(PathPtr a, PathPtr b) : a_(std::move(a)), b_(std::move(b)) {}
  std::string id() const override { return a_->id() + "+" + b_->id(); }
  const Domain& domain() const override { return a_->domain(); }
  Vec field(double t, const Vec& x) const override {
    return t <= 0.5 ? Vec(2.0 * a_->field(2.0 * t, x)) : Vec(2.0 * b_->field(2.0 * t - 1.0, x));
  }
  bool hamiltonian() const override { return a_->hamiltonian() && b_->hamiltonian(); }
  double function(double t, const Vec& x) const override {
    return t <= 0.5 ? 2.0 * a_->function(2.0 * t, x) : 2.0 * b_->function(2.0 * t - 1.0, x);
  }
  double field_bound(double t) const override {
    return t <= 0.5 ? 2.0 * a_->field_bound(2.0 * t) : 2.0 * b_->field_bound(2.0 * t - 1.0);
  }
  double field_lipschitz(double t) const override {
    return t <= 0.5 ? 2.0 * a_->field_lipschitz(2.0 * t) : 2.0 * b_->field_lipschitz(2.0 * t - 1.0);
  }
  std::vector<double> breakpoints() const override {
    std::vector<double> out;
    for (double t : a_->breakpoints()) out.push_back(0.5 * t);
    for (double t : b_->breakpoints()) out.push_back(0.5 + 0.5 * t);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  PathPtr a_;
  PathPtr b_;
};

}  // namespace

PathPtr shear_path(const FourierSeries& psi) { return std::make_shared<ShearPath>(psi); }

PathPtr translation_path(const Vec& e) {
  if (e.size() < 2 || e.size() % 2 != 0) throw PreconditionError("translation path: dimension must be even");
  return std::make_shared<TranslationPath>(e);
}

PathPtr twist_path(const TwistHamiltonian& h, double time) { return std::make_shared<TwistPath>(h, time); }

PathPtr concatenate(const PathPtr& first, const PathPtr& second) {
  const Domain& a = first->domain();
  const Domain& b = second->domain();
  if (a.dim != b.dim || a.periodic != b.periodic || a.ball_radius != b.ball_radius)
    throw PreconditionError("concatenate: paths live on different models");
  return std::make_shared<ConcatenatedPath>(first, second);
}

Vec flux_of_path(const PathPtr& path, double tol) {
  const Domain& dom = path->domain();
  for (bool p : dom.periodic)
    if (!p) throw PreconditionError("flux: defined here for torus paths only");
  const int d = dom.dim;
  const Mat j = symplectic_form(d);
  const auto cuts = path->breakpoints();
  Vec flux = Vec::Zero(d);
  for (int a = 0; a < d; ++a) {
    // lambda_t(v) = -omega(xi_t, v), i.e. lambda_t = J xi_t as a covector.
    const auto loop = [&](double t) {
      return adaptive_simpson(
                 [&](double s) {
                   Vec x = Vec::Zero(d);
                   x(a) = s;
                   return (j * path->field(t, x))(a);
                 },
                 0.0, 1.0, tol)
          .value;
    };
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) flux(a) += gauss_time(loop, cuts[k], cuts[k + 1]);
  }
  return flux;
}

PathFunctionals path_functionals(const PathPtr& path, int grid_resolution, bool with_hofer) {
  if (with_hofer && !path->hamiltonian())
    throw PreconditionError(fmt::format("path '{}' is not Hamiltonian: Lambda is undefined", path->id()));
  const Grid grid = make_grid(path->domain(), grid_resolution);
  const double h = grid.covering_radius;
  const auto cuts = path->breakpoints();

  const auto grid_max = [&](double t, bool hofer) {
    double best = 0.0;
    for (const auto& x : grid.points)
      best = std::max(best, hofer ? std::abs(path->function(t, x)) : path->field(t, x).norm());
    return best;
  };

  PathFunctionals out;
  out.has_hofer = with_hofer;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double t0 = cuts[k];
    const double t1 = cuts[k + 1];
    out.length_grid += gauss_time([&](double t) { return grid_max(t, false); }, t0, t1, 1);
    out.length += gauss_time([&](double t) { return path->field_lipschitz(t) * h; }, t0, t1, 1);
    if (with_hofer) {
      out.hofer_grid += gauss_time([&](double t) { return grid_max(t, true); }, t0, t1, 1);
      // |grad F| = |xi|, so F_t is field_bound(t)-Lipschitz.
      out.hofer += gauss_time([&](double t) { return path->field_bound(t) * h; }, t0, t1, 1);
    }
  }
  out.length += out.length_grid;
  out.hofer += out.hofer_grid;
  return out;
}

// ---- spectrum and width ---------------------------------------------------------

namespace {

bool is_zero_polynomial(const Polynomial& p) {
  return std::all_of(p.coeffs().begin(), p.coeffs().end(), [](double c) { return c == 0.0; });
}

// Roots of p in [lo, hi]: sign changes on a fine sample, refined by bisection.
std::vector<double> polynomial_roots(const Polynomial& p, double lo, double hi, int samples = 4096) {
  std::vector<double> roots;
  double prev_x = lo;
  double prev = p(lo);
  if (prev == 0.0) roots.push_back(lo);
  for (int i = 1; i <= samples; ++i) {
    const double x = lo + (hi - lo) * i / samples;
    const double v = p(x);
    if (v == 0.0) {
      roots.push_back(x);
    } else if (prev != 0.0 && (v > 0.0) != (prev > 0.0)) {
      double a = prev_x;
      double b = x;
      for (int it = 0; it < 200 && b - a > 1e-16 * std::max(1.0, b); ++it) {
        const double m = 0.5 * (a + b);
        ((p(m) > 0.0) == (prev > 0.0) ? a : b) = m;
      }
      roots.push_back(0.5 * (a + b));
    }
    prev_x = x;
    prev = v;
  }
  return roots;
}

std::vector<double> merge_sorted(std::vector<double> v, double tol) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v)
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  return out;
}

}  // namespace

SpectrumRecord hamiltonian_action_spectrum(const TwistHamiltonian& h, double time) {
  SpectrumRecord rec;
  rec.time = time;
  rec.mean = h.disc_mean();
  const double eps2 = h.epsilon() * h.epsilon();
  const double bounds[3][2] = {{0.0, h.s_inner()}, {h.s_inner(), h.s_outer()}, {h.s_outer(), eps2}};

  // p = 0 is critical for every radial H.
  rec.critical_sets.push_back({0.0, 0.0, h.profile(0.0)});
  for (int i = 0; i < 3; ++i) {
    const double lo = bounds[i][0];
    const double hi = std::min(bounds[i][1], eps2);
    if (!(hi > lo)) continue;
    const Polynomial dg = h.piece(i).derivative();
    if (is_zero_polynomial(dg)) {
      rec.critical_sets.push_back({lo, hi, h.piece(i)(lo)});
      continue;
    }
    // grad H = 2 G'(s) p vanishes away from p = 0 exactly where G'(s) = 0.
    for (double s : polynomial_roots(dg, lo, hi))
      if (s > 0.0) rec.critical_sets.push_back({s, s, h.piece(i)(s)});
  }
  std::vector<double> actions;
  for (const auto& c : rec.critical_sets) actions.push_back(time * (rec.mean - c.value));
  rec.actions = merge_sorted(actions, 1e-12);
  rec.width = rec.actions.back() - rec.actions.front();
  return rec;
}

WidthConjugationReport width_conjugation_check(const TwistHamiltonian& h, double time, const SymplecticMap& conjugator,
                                               int grid_resolution) {
  const Domain dom = Domain::twist_cylinder(h.m(), h.epsilon());
  const Domain& cd = conjugator.domain();
  if (conjugator.model() != ModelKind::TwistCylinder || cd.dim != dom.dim || cd.ball_radius != dom.ball_radius)
    throw PreconditionError("width_conjugation_check: conjugator must be a map of the same twist cylinder");

  WidthConjugationReport rep;
  const SpectrumRecord spec = hamiltonian_action_spectrum(h, time);
  rep.width = spec.width;

  const SymplecticMap g = conjugate(conjugator, twist_map(h, time));
  const Grid grid = make_grid(dom, grid_resolution);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& z : grid.points) {
    if ((g.lift(z) - z).norm() > 1e-11) continue;
    ++rep.fixed_points;
    const Vec w = conjugator.lift_inverse(z);
    Vec p(h.m());
    for (int k = 0; k < h.m(); ++k) p(k) = w(2 * k);
    const double action = time * (spec.mean - h.value(p));
    lo = std::min(lo, action);
    hi = std::max(hi, action);
  }
  if (rep.fixed_points == 0) throw PreconditionError("width_conjugation_check: no fixed points found on the grid");
  rep.conjugated_width = hi - lo;
  rep.equal = std::abs(rep.conjugated_width - rep.width) <= 1e-9;
  return rep;
}

GeometricInequalityReport geometric_inequality_check(const TwistHamiltonian& h, double time, int grid_resolution) {
  GeometricInequalityReport rep;
  rep.width = hamiltonian_action_spectrum(h, time).width;
  const PathFunctionals pf = path_functionals(twist_path(h, time), grid_resolution);
  rep.b_hat = pf.length + pf.hofer;
  const double eps = h.epsilon();
  rep.diameter = std::sqrt(h.m() / 4.0 + 4.0 * eps * eps);
  // sup over B(s) of |p dq| = |p| is at most min(s, eps) around p = 0.
  rep.u_hi = std::min(rep.diameter + rep.b_hat, eps);
  rep.rhs = 2.0 * (rep.b_hat + rep.b_hat * rep.u_hi);
  rep.slack = rep.rhs - rep.width;
  rep.holds = rep.width <= rep.rhs;
  return rep;
}

// ---- isoperimetric consistency --------------------------------------------------

int winding_number(const Polyline& beta, const Vec& pt) {
  if (!beta.closed) throw PreconditionError("winding number: polyline must be closed");
  int wn = 0;
  for (std::size_t i = 0; i < beta.segment_count(); ++i) {
    const Vec a = beta.segment_start(i);
    const Vec b = beta.segment_end(i);
    const double cross = (b(0) - a(0)) * (pt(1) - a(1)) - (pt(0) - a(0)) * (b(1) - a(1));
    if (cross == 0.0 && pt(0) >= std::min(a(0), b(0)) && pt(0) <= std::max(a(0), b(0)) &&
        pt(1) >= std::min(a(1), b(1)) && pt(1) <= std::max(a(1), b(1)))
      throw PreconditionError("winding number: point lies on the polyline");
    if (a(1) <= pt(1)) {
      if (b(1) > pt(1) && cross > 0.0) ++wn;
    } else if (b(1) <= pt(1) && cross < 0.0) {
      --wn;
    }
  }
  return wn;
}

IsoperimetricResult isoperimetric_consistency(const Lattice& lattice, const Polyline& beta, double kappa_est) {
  if (!beta.closed || beta.vertices.size() < 3) throw PreconditionError("isoperimetric: beta must be a closed polygon");
  if (!(kappa_est > 0.0)) throw PreconditionError("isoperimetric: kappa_est must be positive");
  Vec lo = beta.vertices.front();
  Vec hi = lo;
  for (const auto& v : beta.vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  // Lattice coefficients of the bounding-box corners bound the candidate points.
  const Mat inv = lattice.basis.inverse();
  Vec clo = Vec::Constant(2, std::numeric_limits<double>::infinity());
  Vec chi = -clo;
  for (int cx = 0; cx < 2; ++cx)
    for (int cy = 0; cy < 2; ++cy) {
      const Vec c = inv * make_vec({cx ? hi(0) : lo(0), cy ? hi(1) : lo(1)});
      clo = clo.cwiseMin(c);
      chi = chi.cwiseMax(c);
    }
  for (long i = static_cast<long>(std::floor(clo(0))); i <= static_cast<long>(std::ceil(chi(0))); ++i)
    for (long j = static_cast<long>(std::floor(clo(1))); j <= static_cast<long>(std::ceil(chi(1))); ++j) {
      const Vec pt = lattice.basis * make_vec({static_cast<double>(i), static_cast<double>(j)});
      if ((pt.array() < lo.array()).any() || (pt.array() > hi.array()).any()) continue;
      const int w = winding_number(beta, pt);
      if (w != 0)
        throw PreconditionError(fmt::format("isoperimetric: loop winds {} times around ({}, {})", w, pt(0), pt(1)));
    }
  IsoperimetricResult res;
  res.ratio = std::abs(line_integral(PrimitiveForm::standard(2), beta).value) / beta.euclidean_length();
  res.holds = res.ratio <= kappa_est;
  return res;
}

CorpusResult isoperimetric_corpus(const Lattice& lattice, const std::vector<Polyline>& corpus, double kappa_est) {
  CorpusResult out;
  for (const auto& beta : corpus) {
    try {
      const auto r = isoperimetric_consistency(lattice, beta, kappa_est);
      ++out.accepted;
      out.max_ratio = std::max(out.max_ratio, r.ratio);
      out.all_hold = out.all_hold && r.holds;
    } catch (const PreconditionError&) {
      ++out.rejected;
    }
  }
  return out;
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Star-shaped loop around c with radii in (rmin, rmax), angles from a0 through a0 + sweep.
std::vector<Vec> star_arc(std::mt19937_64& rng, const Vec& c, int k, double rmin, double rmax, double a0,
                          double sweep) {
  std::uniform_real_distribution<double> rad(rmin, rmax);
  std::vector<Vec> pts;
  for (int i = 0; i < k; ++i) {
    const double th = a0 + sweep * i / k;
    const double r = rad(rng);
    pts.push_back(make_vec({c(0) + r * std::cos(th), c(1) + r * std::sin(th)}));
  }
  return pts;
}

}  // namespace

std::vector<Polyline> generate_loop_corpus(unsigned seed, int contractible, int winding) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> cell(-3, 3);
  std::uniform_int_distribution<int> corners(3, 12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Polyline> out;
  for (int n = 0; n < contractible; ++n) {
    Polyline c;
    c.closed = true;
    const double ci = cell(rng);
    const double cj = cell(rng);
    switch (n % 3) {
      case 0: {  // inside one cell
        c.id = fmt::format("cell_{}", n);
        c.vertices = star_arc(rng, make_vec({ci + 0.5, cj + 0.5}), corners(rng), 0.05, 0.49, 0.0, kTwoPi);
        break;
      }
      case 1: {  // figure-eight through the midpoint of a vertical cell edge
        c.id = fmt::format("eight_{}", n);
        const Vec x = make_vec({ci + 1.0, cj + 0.5});
        const int k = corners(rng);
        c.vertices.push_back(x);
        // Left lobe counter-clockwise from x, right lobe clockwise back to x.
        for (const Vec& v : star_arc(rng, make_vec({ci + 0.5, cj + 0.5}), k, 0.1, 0.45, kTwoPi / k, kTwoPi - 2 * kTwoPi / k))
          c.vertices.push_back(v);
        c.vertices.push_back(x);
        for (const Vec& v : star_arc(rng, make_vec({ci + 1.5, cj + 0.5}), k, 0.1, 0.45, std::numbers::pi + kTwoPi / k,
                                     -(kTwoPi - 2 * kTwoPi / k)))
          c.vertices.push_back(v);
        break;
      }
      default: {  // long band between two lattice rows
        c.id = fmt::format("band_{}", n);
        const int len = 1 + static_cast<int>(unit(rng) * 4);
        const double y0 = cj + 0.05 + 0.2 * unit(rng);
        const double y1 = cj + 0.75 + 0.2 * unit(rng);
        c.vertices = {make_vec({ci - 0.3, y0}), make_vec({ci + len + 0.3, y0}), make_vec({ci + len + 0.3, y1}),
                      make_vec({ci - 0.3, y1})};
        break;
      }
    }
    out.push_back(std::move(c));
  }
  for (int n = 0; n < winding; ++n) {
    const Vec centre = make_vec({static_cast<double>(cell(rng)) + 0.1 * (unit(rng) - 0.5),
                                 static_cast<double>(cell(rng)) + 0.1 * (unit(rng) - 0.5)});
    Polyline c = circle_polyline(centre, 0.3 + 0.15 * unit(rng), corners(rng) + 3);
    c.id = fmt::format("winding_{}", n);
    if (n % 2 == 1) std::reverse(c.vertices.begin(), c.vertices.end());
    out.push_back(std::move(c));
  }
  return out;
}

Polyline unit_square_between_lattice_points() {
  const double r = 1.0 / std::sqrt(2.0);
  Polyline c;
  c.closed = true;
  c.id = "tilted_unit_square";
  c.vertices = {make_vec({0.5 + r, 0.5}), make_vec({0.5, 0.5 + r}), make_vec({0.5 - r, 0.5}), make_vec({0.5, 0.5 - r})};
  return c;
}

// ---- lower-bound certificate ----------------------------------------------------

double lower_bound_certificate(double c, double b, long n, const FillingEstimate& filling) {
  if (!(c > 0.0)) throw PreconditionError("certificate: |delta| must be positive");
  if (!(b > 0.0)) throw PreconditionError("certificate: curve length must be positive");
  if (n < 1) throw PreconditionError("certificate: n must be >= 1");
  return v_from_u(filling, 0.5 * static_cast<double>(n) * c).lo / b;
}

double lower_bound_certificate(const LiftedMap& lift, const Vec& x, const Vec& y, const Polyline& gamma, long n,
                               const FillingEstimate& filling) {
  if (n < 1) throw PreconditionError("certificate: n must be >= 1");
  const double c = std::abs(action_difference(lift, x, y, gamma, PrimitiveForm::standard(lift.base().dim())).value);
  return lower_bound_certificate(c, gamma.euclidean_length(), n, filling);
}

}  // namespace symgrowth
