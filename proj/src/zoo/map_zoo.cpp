#include "symgrowth/map_zoo.hpp"

#include "symgrowth/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace symgrowth {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Torus2: return "torus2";
    case ModelKind::Torus2n: return "torus2n";
    case ModelKind::TwistCylinder: return "twist_cylinder";
    case ModelKind::QuotientT4: return "quotient_t4";
  }
  return "unknown";
}

// ---- Domain -------------------------------------------------------------------

Domain Domain::torus(int dim) {
  Domain d;
  d.dim = dim;
  d.periodic.assign(static_cast<std::size_t>(dim), true);
  d.lo = Vec::Zero(dim);
  d.hi = Vec::Ones(dim);
  return d;
}

Domain Domain::twist_cylinder(int m, double epsilon) {
  Domain d;
  d.dim = 2 * m;
  d.periodic.assign(static_cast<std::size_t>(d.dim), true);
  d.lo = Vec::Zero(d.dim);
  d.hi = Vec::Ones(d.dim);
  for (int i = 0; i < m; ++i) {
    d.periodic[static_cast<std::size_t>(2 * i)] = false;
    d.lo(2 * i) = -epsilon;
    d.hi(2 * i) = epsilon;
    d.ball_axes.push_back(2 * i);
  }
  d.ball_radius = epsilon;
  return d;
}

bool Domain::contains(const Vec& x, double tol) const {
  if (x.size() != dim) return false;
  for (int a = 0; a < dim; ++a) {
    if (!std::isfinite(x(a))) return false;
    if (!periodic[static_cast<std::size_t>(a)] && (x(a) < lo(a) - tol || x(a) > hi(a) + tol)) return false;
  }
  if (!ball_axes.empty()) {
    double r2 = 0.0;
    for (int a : ball_axes) r2 += x(a) * x(a);
    if (std::sqrt(r2) > ball_radius * (1.0 + tol) + tol) return false;
  }
  return true;
}

Vec Domain::reduce(const Vec& x) const {
  Vec out = x;
  for (int a = 0; a < dim; ++a) {
    if (periodic[static_cast<std::size_t>(a)]) {
      out(a) = x(a) - std::floor(x(a));
      if (out(a) >= 1.0) out(a) = 0.0;
    }
  }
  return out;
}

double Domain::diameter() const { return (hi - lo).norm(); }

// ---- implementations ----------------------------------------------------------

namespace detail {
namespace {

nlohmann::json vec_json(const Vec& v) {
  std::vector<double> out(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = v(i);
  return out;
}

nlohmann::json mat_json(const Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vec_json(m.row(i).transpose()));
  return rows;
}

nlohmann::json fourier_json(const FourierSeries& psi) {
  return {{"a0", psi.mean()}, {"cos", psi.cos_coeffs()}, {"sin", psi.sin_coeffs()}};
}

class AffineImpl final : public MapImpl {
 public:
  AffineImpl(Mat l, Vec c) : l_(std::move(l)), c_(std::move(c)) {
    const Mat j = symplectic_form(static_cast<int>(l_.rows()));
    l_inv_ = -j * l_.transpose() * j;
  }

  int dim() const override { return static_cast<int>(l_.rows()); }
  Vec lift(const Vec& x) const override { return l_ * x + c_; }
  Vec lift_inverse(const Vec& x) const override { return l_inv_ * (x - c_); }
  Mat jacobian(const Vec&) const override { return l_; }
  Mat inverse_jacobian(const Vec&) const override { return l_inv_; }
  double jacobian_norm_bound() const override { return operator_norm(l_); }
  double inverse_jacobian_norm_bound() const override { return operator_norm(l_inv_); }
  double jacobian_lipschitz() const override { return 0.0; }
  double inverse_jacobian_lipschitz() const override { return 0.0; }
  double iterate_jacobian_lipschitz(long) const override { return 0.0; }
  std::vector<int> equivariant_axes() const override {
    std::vector<int> all(static_cast<std::size_t>(dim()));
    for (int a = 0; a < dim(); ++a) all[static_cast<std::size_t>(a)] = a;
    return all;
  }
  Mat deck_action() const override { return l_; }
  nlohmann::json describe() const override {
    return {{"affine", {{"L", mat_json(l_)}, {"c", vec_json(c_)}}}};
  }

 private:
  Mat l_;
  Mat l_inv_;
  Vec c_;
};

class SkewProductImpl final : public MapImpl {
 public:
  SkewProductImpl(double alpha, FourierSeries psi) : alpha_(alpha), psi_(std::move(psi)) {}

  int dim() const override { return 2; }
  Vec lift(const Vec& x) const override {
    return make_vec({x(0) + alpha_, x(1) + psi_.value(x(0))});
  }
  Vec lift_inverse(const Vec& x) const override {
    const double u = x(0) - alpha_;
    return make_vec({u, x(1) - psi_.value(u)});
  }
  Mat jacobian(const Vec& x) const override {
    return make_mat({{1.0, 0.0}, {psi_.derivative(x(0), 1), 1.0}});
  }
  Mat inverse_jacobian(const Vec& x) const override {
    return make_mat({{1.0, 0.0}, {-psi_.derivative(x(0) - alpha_, 1), 1.0}});
  }
  double jacobian_norm_bound() const override {
    return operator_norm_2x2(1.0, 0.0, psi_.derivative_bound(1), 1.0);
  }
  double inverse_jacobian_norm_bound() const override { return jacobian_norm_bound(); }
  double jacobian_lipschitz() const override { return psi_.derivative_bound(2); }
  double inverse_jacobian_lipschitz() const override { return psi_.derivative_bound(2); }
  // D f^n = [[1, 0], [sum_k psi'(x + k alpha), 1]]: Lipschitz <= |n| sup|psi''|.
  double iterate_jacobian_lipschitz(long n) const override {
    return static_cast<double>(std::labs(n)) * psi_.derivative_bound(2);
  }
  std::vector<int> equivariant_axes() const override { return {1}; }
  Mat deck_action() const override { return Mat::Identity(2, 2); }
  nlohmann::json describe() const override {
    return {{"skew_product", {{"alpha", alpha_}, {"psi", fourier_json(psi_)}}}};
  }

 private:
  double alpha_;
  FourierSeries psi_;
};

class TwistImpl final : public MapImpl {
 public:
  TwistImpl(TwistHamiltonian h, double time) : h_(std::move(h)), time_(time) {}

  int dim() const override { return 2 * h_.m(); }

  Vec momenta(const Vec& x) const {
    Vec p(h_.m());
    for (int i = 0; i < h_.m(); ++i) p(i) = x(2 * i);
    return p;
  }

  Vec lift(const Vec& x) const override { return shifted(x, time_); }
  Vec lift_inverse(const Vec& x) const override { return shifted(x, -time_); }
  Mat jacobian(const Vec& x) const override { return shear(x, time_); }
  Mat inverse_jacobian(const Vec& x) const override { return shear(x, -time_); }
  double jacobian_norm_bound() const override {
    return operator_norm_2x2(1.0, 0.0, std::abs(time_) * h_.hessian_norm_bound(), 1.0);
  }
  double inverse_jacobian_norm_bound() const override { return jacobian_norm_bound(); }
  double jacobian_lipschitz() const override { return std::abs(time_) * h_.third_derivative_bound(); }
  double inverse_jacobian_lipschitz() const override { return jacobian_lipschitz(); }
  // D f^n = [[I, 0], [n t Hess H(p), I]] because p is invariant.
  double iterate_jacobian_lipschitz(long n) const override {
    return static_cast<double>(std::labs(n)) * jacobian_lipschitz();
  }
  std::vector<int> equivariant_axes() const override {
    std::vector<int> axes;
    for (int i = 0; i < h_.m(); ++i) axes.push_back(2 * i + 1);
    return axes;
  }
  Mat deck_action() const override { return Mat::Identity(dim(), dim()); }
  nlohmann::json describe() const override {
    return {{"twist", {{"m", h_.m()}, {"epsilon", h_.epsilon()}, {"H", h_.core().coeffs()}, {"time", time_}}}};
  }

 private:
  Vec shifted(const Vec& x, double t) const {
    Vec out = x;
    const Vec grad = h_.gradient(momenta(x));
    for (int i = 0; i < h_.m(); ++i) out(2 * i + 1) += t * grad(i);
    return out;
  }

  Mat shear(const Vec& x, double t) const {
    Mat j = Mat::Identity(dim(), dim());
    const Mat hess = h_.hessian(momenta(x));
    for (int i = 0; i < h_.m(); ++i)
      for (int k = 0; k < h_.m(); ++k) j(2 * i + 1, 2 * k) = t * hess(i, k);
    return j;
  }

  TwistHamiltonian h_;
  double time_;
};

class ComposedImpl final : public MapImpl {
 public:
  ComposedImpl(std::shared_ptr<const MapImpl> outer, std::shared_ptr<const MapImpl> inner)
      : outer_(std::move(outer)), inner_(std::move(inner)) {}

  int dim() const override { return inner_->dim(); }
  Vec lift(const Vec& x) const override { return outer_->lift(inner_->lift(x)); }
  Vec lift_inverse(const Vec& x) const override {
    return inner_->lift_inverse(outer_->lift_inverse(x));
  }
  Mat jacobian(const Vec& x) const override {
    return outer_->jacobian(inner_->lift(x)) * inner_->jacobian(x);
  }
  Mat inverse_jacobian(const Vec& x) const override {
    return inner_->inverse_jacobian(outer_->lift_inverse(x)) * outer_->inverse_jacobian(x);
  }
  double jacobian_norm_bound() const override {
    return outer_->jacobian_norm_bound() * inner_->jacobian_norm_bound();
  }
  double inverse_jacobian_norm_bound() const override {
    return outer_->inverse_jacobian_norm_bound() * inner_->inverse_jacobian_norm_bound();
  }
  double jacobian_lipschitz() const override {
    const double ji = inner_->jacobian_norm_bound();
    return outer_->jacobian_lipschitz() * ji * ji + outer_->jacobian_norm_bound() * inner_->jacobian_lipschitz();
  }
  double inverse_jacobian_lipschitz() const override {
    const double jo = outer_->inverse_jacobian_norm_bound();
    return inner_->inverse_jacobian_lipschitz() * jo * jo +
           inner_->inverse_jacobian_norm_bound() * outer_->inverse_jacobian_lipschitz();
  }
  std::vector<int> equivariant_axes() const override {
    const auto a = outer_->equivariant_axes();
    const auto b = inner_->equivariant_axes();
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }
  Mat deck_action() const override { return outer_->deck_action() * inner_->deck_action(); }
  nlohmann::json describe() const override {
    return {{"compose", {outer_->describe(), inner_->describe()}}};
  }

 private:
  std::shared_ptr<const MapImpl> outer_;
  std::shared_ptr<const MapImpl> inner_;
};

class InverseImpl final : public MapImpl {
 public:
  explicit InverseImpl(std::shared_ptr<const MapImpl> base) : base_(std::move(base)) {}

  int dim() const override { return base_->dim(); }
  Vec lift(const Vec& x) const override { return base_->lift_inverse(x); }
  Vec lift_inverse(const Vec& x) const override { return base_->lift(x); }
  Mat jacobian(const Vec& x) const override { return base_->inverse_jacobian(x); }
  Mat inverse_jacobian(const Vec& x) const override { return base_->jacobian(x); }
  double jacobian_norm_bound() const override { return base_->inverse_jacobian_norm_bound(); }
  double inverse_jacobian_norm_bound() const override { return base_->jacobian_norm_bound(); }
  double jacobian_lipschitz() const override { return base_->inverse_jacobian_lipschitz(); }
  double inverse_jacobian_lipschitz() const override { return base_->jacobian_lipschitz(); }
  double iterate_jacobian_lipschitz(long n) const override { return base_->iterate_jacobian_lipschitz(-n); }
  std::vector<int> equivariant_axes() const override { return base_->equivariant_axes(); }
  Mat deck_action() const override {
    const Mat j = symplectic_form(dim());
    return -j * base_->deck_action().transpose() * j;
  }
  nlohmann::json describe() const override { return {{"inverse", base_->describe()}}; }

 private:
  std::shared_ptr<const MapImpl> base_;
};

}  // namespace
}  // namespace detail

// ---- SymplecticMap -----------------------------------------------------------

SymplecticMap::SymplecticMap(ModelKind model, Domain domain, std::string name,
                             std::shared_ptr<const detail::MapImpl> impl)
    : model_(model), domain_(std::move(domain)), name_(std::move(name)), impl_(std::move(impl)) {
  if (impl_->dim() != domain_.dim) throw PreconditionError("map dimension does not match its domain");
}

void SymplecticMap::check_domain(const Vec& x) const {
  if (!domain_.contains(x))
    throw DomainError(fmt::format("point outside the {} domain of '{}'", to_string(model_), name_));
}

Vec SymplecticMap::evaluate(const Vec& x) const {
  check_domain(x);
  return domain_.reduce(impl_->lift(x));
}

Vec SymplecticMap::evaluate_inverse(const Vec& x) const {
  check_domain(x);
  return domain_.reduce(impl_->lift_inverse(x));
}

Vec SymplecticMap::lift(const Vec& x) const {
  check_domain(domain_.reduce(x));
  return impl_->lift(x);
}

Vec SymplecticMap::lift_inverse(const Vec& x) const {
  check_domain(domain_.reduce(x));
  return impl_->lift_inverse(x);
}

Mat SymplecticMap::jacobian(const Vec& x) const {
  check_domain(domain_.reduce(x));
  return impl_->jacobian(x);
}

Mat SymplecticMap::inverse_jacobian(const Vec& x) const {
  check_domain(domain_.reduce(x));
  return impl_->inverse_jacobian(x);
}

nlohmann::json SymplecticMap::to_json() const {
  return {{"model", to_string(model_)}, {"name", name_}, {"impl", impl_->describe()}};
}

Mat iterate_jacobian(const SymplecticMap& map, const Vec& x, long n) {
  const auto& impl = map.impl();
  const int d = map.dim();
  Mat acc = Mat::Identity(d, d);
  Vec point = x;
  const long steps = std::labs(n);
  constexpr double kOverflow = 1e300;
  for (long k = 0; k < steps; ++k) {
    if (n > 0) {
      acc = impl.jacobian(point) * acc;
      point = impl.lift(point);
    } else {
      acc = impl.inverse_jacobian(point) * acc;
      point = impl.lift_inverse(point);
    }
    if (!(max_abs_entry(acc) <= kOverflow))
      throw RangeError(fmt::format("iterated Jacobian overflow after {} of {} steps", k, steps), k);
  }
  return acc;
}

double iterate_jacobian_lipschitz(const SymplecticMap& map, long n) {
  const auto& impl = map.impl();
  const double closed = impl.iterate_jacobian_lipschitz(n);
  if (closed >= 0.0) return closed;
  const double lip = n >= 0 ? impl.jacobian_lipschitz() : impl.inverse_jacobian_lipschitz();
  const double norm = n >= 0 ? impl.jacobian_norm_bound() : impl.inverse_jacobian_norm_bound();
  const long steps = std::labs(n);
  // d(D f^n) = sum_k [D f^{n-1-k}] DJ(f^k x)[D f^k v] [D f^k]
  double total = 0.0;
  for (long k = 0; k < steps; ++k)
    total += std::pow(norm, static_cast<double>(steps - 1 - k)) * std::pow(norm, 2.0 * static_cast<double>(k));
  return lip * total;
}

// ---- constructors -------------------------------------------------------------

namespace {

ModelKind torus_kind(int dim) { return dim == 2 ? ModelKind::Torus2 : ModelKind::Torus2n; }

void require_even_dim(int dim) {
  if (dim < 2 || dim % 2 != 0 || dim > kMaxDim)
    throw PreconditionError(fmt::format("torus dimension must be even and in [2, {}], got {}", kMaxDim, dim));
}

void require_integer_symplectic(const Mat& a) {
  if (a.rows() != a.cols()) throw PreconditionError("linear torus map: matrix must be square");
  require_even_dim(static_cast<int>(a.rows()));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != std::round(a(i, j))) throw PreconditionError("linear torus map: entries must be integers");
  const Mat j = symplectic_form(static_cast<int>(a.rows()));
  if ((a.transpose() * j * a - j).cwiseAbs().maxCoeff() != 0.0)
    throw PreconditionError("linear torus map: matrix is not symplectic (det A != 1 in dimension 2)");
}

}  // namespace

SymplecticMap affine_torus_map(ModelKind model, const Mat& l, const Vec& c, std::string name) {
  require_integer_symplectic(l);
  if (c.size() != l.rows()) throw PreconditionError("affine torus map: translation has wrong dimension");
  const int d = static_cast<int>(l.rows());
  return SymplecticMap(model, Domain::torus(d), std::move(name), std::make_shared<detail::AffineImpl>(l, c));
}

SymplecticMap translation_map(const Vec& e) {
  const int d = static_cast<int>(e.size());
  require_even_dim(d);
  return affine_torus_map(torus_kind(d), Mat::Identity(d, d), e, "translation");
}

SymplecticMap linear_torus_map(const Mat& a) {
  require_integer_symplectic(a);
  const int d = static_cast<int>(a.rows());
  return affine_torus_map(torus_kind(d), a, Vec::Zero(d), "linear");
}

SymplecticMap skew_product_map(double alpha, const FourierSeries& psi) {
  if (!std::isfinite(alpha)) throw PreconditionError("skew product: alpha must be finite");
  return SymplecticMap(ModelKind::Torus2, Domain::torus(2), "skew_product",
                       std::make_shared<detail::SkewProductImpl>(alpha, psi));
}

SymplecticMap twist_map(const TwistHamiltonian& h, double time) {
  return SymplecticMap(ModelKind::TwistCylinder, Domain::twist_cylinder(h.m(), h.epsilon()), "twist",
                       std::make_shared<detail::TwistImpl>(h, time));
}

SymplecticMap cylinder_translation(int m, double epsilon, const Vec& q_shift) {
  if (q_shift.size() != m) throw PreconditionError("cylinder translation: shift must have m entries");
  const Domain domain = Domain::twist_cylinder(m, epsilon);
  Vec c = Vec::Zero(2 * m);
  for (int k = 0; k < m; ++k) c(2 * k + 1) = q_shift(k);
  return SymplecticMap(ModelKind::TwistCylinder, domain, "cylinder_translation",
                       std::make_shared<detail::AffineImpl>(Mat::Identity(2 * m, 2 * m), c));
}

SymplecticMap compose(const SymplecticMap& outer, const SymplecticMap& inner) {
  if (outer.dim() != inner.dim() || outer.model() != inner.model())
    throw PreconditionError("compose: maps live on different models");
  return SymplecticMap(inner.model(), inner.domain(), outer.name() + "∘" + inner.name(),
                       std::make_shared<detail::ComposedImpl>(outer.impl_ptr(), inner.impl_ptr()));
}

SymplecticMap inverse(const SymplecticMap& map) {
  return SymplecticMap(map.model(), map.domain(), map.name() + "^-1",
                       std::make_shared<detail::InverseImpl>(map.impl_ptr()));
}

SymplecticMap conjugate(const SymplecticMap& h, const SymplecticMap& f) {
  return compose(h, compose(f, inverse(h)));
}

// ---- appendix -------------------------------------------------------------------

SymplecticMap appendix_gamma() {
  Mat l = Mat::Identity(4, 4);
  l(2, 2) = -1.0;
  l(3, 3) = -1.0;
  return affine_torus_map(ModelKind::QuotientT4, l, make_vec({0.0, 0.5, 0.0, 0.0}), "gamma");
}

SymplecticMap appendix_flow(double t) {
  return affine_torus_map(ModelKind::QuotientT4, Mat::Identity(4, 4), make_vec({0.0, 0.5 * t, 0.0, 0.0}),
                          "f1");
}

SymplecticMap appendix_gamma_flow() {
  SymplecticMap composed = compose(appendix_gamma(), appendix_flow(1.0));
  return SymplecticMap(ModelKind::QuotientT4, composed.domain(), "gamma∘f1", composed.impl_ptr());
}

namespace {

// Distance to the nearest integer.
double frac_distance(double x) { return std::abs(x - std::round(x)); }

bool equal_mod_one(const Vec& a, const Vec& b, double tol) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (frac_distance(a(i) - b(i)) > tol) return false;
  return true;
}

}  // namespace

bool appendix_is_fixed(const Vec& z, double tol) {
  static const SymplecticMap f1 = appendix_flow(1.0);
  static const SymplecticMap gamma = appendix_gamma();
  return equal_mod_one(f1.lift(z), gamma.lift(z), tol);
}

Vec AppendixFixedTorus::point(double p, double q) const {
  return make_vec({p, q, 0.5 * m1, 0.5 * m2});
}

std::vector<AppendixFixedTorus> appendix_fixed_point_set(int samples_per_axis) {
  std::vector<AppendixFixedTorus> out;
  for (int m1 = 0; m1 < 2; ++m1) {
    for (int m2 = 0; m2 < 2; ++m2) {
      AppendixFixedTorus torus;
      torus.m1 = m1;
      torus.m2 = m2;
      bool ok = true;
      for (int i = 0; i < samples_per_axis; ++i) {
        for (int j = 0; j < samples_per_axis; ++j) {
          const double p = (i + 0.5) / samples_per_axis;
          const double q = (j + 0.25) / samples_per_axis;
          ok = ok && appendix_is_fixed(torus.point(p, q));
          ++torus.samples_checked;
        }
      }
      torus.verified = ok;
      out.push_back(torus);
    }
  }
  return out;
}

Eigen::MatrixXi h1_action(const SymplecticMap& map) {
  const Domain& dom = map.domain();
  for (bool p : dom.periodic)
    if (!p) throw PreconditionError("h1_action: only defined for torus models");
  const int d = map.dim();
  Eigen::MatrixXi out(d, d);
  const Vec base = Vec::Constant(d, 0.125);
  const Vec image0 = map.lift(base);
  for (int k = 0; k < d; ++k) {
    // Lift the loop t -> base + t e_k continuously and read off its endpoint.
    constexpr int kSteps = 64;
    Vec previous = image0;
    Vec total = Vec::Zero(d);
    for (int s = 1; s <= kSteps; ++s) {
      Vec point = base;
      point(k) += static_cast<double>(s) / kSteps;
      const Vec image = map.lift(point);
      total += image - previous;
      previous = image;
    }
    for (int i = 0; i < d; ++i) {
      const double rounded = std::round(total(i));
      if (std::abs(total(i) - rounded) > 1e-9)
        throw PreconditionError("h1_action: lifted loop does not close up to a lattice vector");
      out(i, k) = static_cast<int>(rounded);
    }
  }
  return out;
}

ObstructionReport appendix_contractible_obstruction() {
  ObstructionReport report;
  const auto fixed_set = appendix_fixed_point_set(8);
  const SymplecticMap lifts[] = {appendix_flow(1.0), appendix_gamma_flow()};
  for (const auto& lift : lifts) {
    LiftObstruction entry;
    entry.lift = lift.name();
    for (const auto& torus : fixed_set) {
      for (int i = 0; i < 8 && !entry.fixes_fixed_set_point; ++i) {
        const Vec z = torus.point((i + 0.5) / 8.0, (i + 1.5) / 9.0);
        if (equal_mod_one(lift.lift(z), z, 1e-12)) {
          entry.fixes_fixed_set_point = true;
          entry.witness = z;
        }
      }
    }
    const Eigen::MatrixXi h1 = h1_action(lift);
    entry.h1_action = h1;
    entry.acts_as_identity = h1 == Eigen::MatrixXi::Identity(4, 4);
    report.lifts.push_back(entry);
  }
  report.no_contractible_witness = std::none_of(report.lifts.begin(), report.lifts.end(), [](const auto& l) {
    return l.fixes_fixed_set_point && l.acts_as_identity;
  });
  return report;
}

}  // namespace symgrowth
