#pragma once

#include "symgrowth/linalg.hpp"
#include "symgrowth/series.hpp"
#include "symgrowth/twist_hamiltonian.hpp"

#include <nlohmann/json.hpp>

#include <memory>
#include <string>
#include <vector>

namespace symgrowth {

enum class ModelKind { Torus2, Torus2n, TwistCylinder, QuotientT4 };

std::string to_string(ModelKind kind);

/// Coordinate domain of a model. Periodic axes have period 1; the remaining
/// axes are bounded intervals. For the twist cylinder the momentum axes are
/// additionally restricted to the ball |p| <= ball_radius.
struct Domain {
  int dim = 0;
  std::vector<bool> periodic;
  Vec lo;
  Vec hi;
  std::vector<int> ball_axes;
  double ball_radius = 0.0;

  bool contains(const Vec& x, double tol = 1e-12) const;
  /// Reduce periodic coordinates into [0, 1).
  Vec reduce(const Vec& x) const;
  /// Euclidean diameter of the box [lo, hi] (periodic axes span [0, 1]).
  double diameter() const;

  static Domain torus(int dim);
  static Domain twist_cylinder(int m, double epsilon);
};

namespace detail {

/// Backend of a zoo member. All maps act on the universal cover through a
/// standard lift; the torus map is the lift reduced mod 1.
class MapImpl {
 public:
  virtual ~MapImpl() = default;

  virtual int dim() const = 0;
  virtual Vec lift(const Vec& x) const = 0;
  virtual Vec lift_inverse(const Vec& x) const = 0;
  virtual Mat jacobian(const Vec& x) const = 0;
  /// Jacobian of the inverse map at x.
  virtual Mat inverse_jacobian(const Vec& x) const = 0;

  /// sup |J|, sup |J^-1| over the domain (operator norm, upper bounds).
  virtual double jacobian_norm_bound() const = 0;
  virtual double inverse_jacobian_norm_bound() const = 0;
  /// Lipschitz bound of x -> J(x) (resp. J^-1) in operator norm.
  virtual double jacobian_lipschitz() const = 0;
  virtual double inverse_jacobian_lipschitz() const = 0;

  /// Closed-form Lipschitz bound of x -> D f^n(x), when the family admits one.
  /// Negative n refers to the inverse. Returns a negative value if unavailable.
  virtual double iterate_jacobian_lipschitz(long /*n*/) const { return -1.0; }

  /// Axes a such that the map commutes with translations along e_a.
  virtual std::vector<int> equivariant_axes() const { return {}; }

  /// Linear action on deck translations: lift(x + v) = lift(x) + L v.
  virtual Mat deck_action() const = 0;

  virtual nlohmann::json describe() const = 0;
};

}  // namespace detail

/// An explicit symplectic map of a model manifold. Cheap to copy; immutable.
class SymplecticMap {
 public:
  SymplecticMap(ModelKind model, Domain domain, std::string name,
                std::shared_ptr<const detail::MapImpl> impl);

  ModelKind model() const { return model_; }
  const Domain& domain() const { return domain_; }
  const std::string& name() const { return name_; }
  int dim() const { return domain_.dim; }
  const detail::MapImpl& impl() const { return *impl_; }
  std::shared_ptr<const detail::MapImpl> impl_ptr() const { return impl_; }

  /// Image point reduced mod 1 in periodic coordinates. Throws DomainError.
  Vec evaluate(const Vec& x) const;
  Vec evaluate_inverse(const Vec& x) const;
  /// Standard lift to the cover (no reduction).
  Vec lift(const Vec& x) const;
  Vec lift_inverse(const Vec& x) const;
  Mat jacobian(const Vec& x) const;
  Mat inverse_jacobian(const Vec& x) const;

  nlohmann::json to_json() const;

 private:
  void check_domain(const Vec& x) const;

  ModelKind model_;
  Domain domain_;
  std::string name_;
  std::shared_ptr<const detail::MapImpl> impl_;
};

/// Product J(f^{n-1}x) ... J(x); negative n uses the closed-form inverse.
/// Throws RangeError (with the completed step count) if an entry exceeds 1e300.
Mat iterate_jacobian(const SymplecticMap& map, const Vec& x, long n);

/// Bound on the Lipschitz constant of x -> D f^n(x) over the domain.
/// Uses the family's closed form when available, otherwise the chain-rule
/// bound sum_k G_{n-1-k} L G_k^2 built from the one-step bounds.
double iterate_jacobian_lipschitz(const SymplecticMap& map, long n);

// ---- zoo constructors -------------------------------------------------------

/// x -> x + e on T^{2n} (Torus2 when e has two entries).
SymplecticMap translation_map(const Vec& e);
/// x -> A x on T^{2n}; A must be an integer symplectic matrix (det 1 in dim 2).
SymplecticMap linear_torus_map(const Mat& a);
/// (x, y) -> (x + alpha, y + psi(x)) on T^2.
SymplecticMap skew_product_map(double alpha, const FourierSeries& psi);
/// Time-t map of H(p) on T^m x D^m(eps): (p, q) -> (p, q + t dH/dp).
SymplecticMap twist_map(const TwistHamiltonian& h, double time = 1.0);
/// (p, q) -> (p, q + shift) on T^m x D^m(eps): a torus translation of the twist cylinder.
SymplecticMap cylinder_translation(int m, double epsilon, const Vec& q_shift);
/// Generic affine torus map x -> L x + c (L integer symplectic).
SymplecticMap affine_torus_map(ModelKind model, const Mat& l, const Vec& c, std::string name);

SymplecticMap compose(const SymplecticMap& outer, const SymplecticMap& inner);
SymplecticMap inverse(const SymplecticMap& map);
/// h o f o h^-1.
SymplecticMap conjugate(const SymplecticMap& h, const SymplecticMap& f);

// ---- the T^4 / Z_2 example --------------------------------------------------

/// Involution (p1, q1, p2, q2) -> (p1, q1 + 1/2, -p2, -q2) on T^4.
SymplecticMap appendix_gamma();
/// Flow (p1, q1, p2, q2) -> (p1, q1 + t/2, p2, q2) on T^4.
SymplecticMap appendix_flow(double t = 1.0);
/// gamma o f1: the second lift of the quotient map.
SymplecticMap appendix_gamma_flow();

/// True iff f1 z == gamma z mod Z^4, i.e. z projects to a fixed point of f.
bool appendix_is_fixed(const Vec& z, double tol = 1e-12);

struct AppendixFixedTorus {
  int m1 = 0;
  int m2 = 0;
  Vec point(double p, double q) const;
  int samples_checked = 0;
  bool verified = false;
};

/// The four 2-tori {(p, q, m1/2, m2/2)}, each verified on a sample grid.
std::vector<AppendixFixedTorus> appendix_fixed_point_set(int samples_per_axis = 16);

struct LiftObstruction {
  std::string lift;
  bool fixes_fixed_set_point = false;
  Vec witness;                 // a fixed-set point it fixes, when one exists
  Eigen::Matrix4i h1_action;   // induced map on H_1(T^4) = Z^4
  bool acts_as_identity = false;
};

struct ObstructionReport {
  std::vector<LiftObstruction> lifts;
  /// True iff no lift that fixes a fixed-set point acts trivially on H_1.
  bool no_contractible_witness = false;
};

ObstructionReport appendix_contractible_obstruction();

/// Induced integer matrix on H_1(T^d) of a torus map, from lifted basis loops.
Eigen::MatrixXi h1_action(const SymplecticMap& map);

// ---- JSON construction ------------------------------------------------------

/// Build a zoo member from {"model": ..., "params": {...}}. Throws
/// PreconditionError on unknown models, unknown keys or invalid parameters.
SymplecticMap map_from_json(const nlohmann::json& spec);

/// Schema of every model accepted by map_from_json.
nlohmann::json zoo_schema();

}  // namespace symgrowth
