#pragma once

#include "symgrowth/filling.hpp"
#include "symgrowth/forms.hpp"
#include "symgrowth/growth.hpp"

#include <memory>
#include <string>
#include <vector>

namespace symgrowth {

// ---- action difference ----------------------------------------------------------

struct ActionRecord {
  double value = 0.0;
  double error = 0.0;  // quadrature error estimate
  std::string lift_id;
  std::string primitive_id;
  std::string curve_id;
  long iterate = 1;
};

/// delta(f~^n; x, y) = int over f~^n(gamma) - gamma of alpha, a closed loop on
/// the simply connected cover. The image curve is integrated through the
/// Jacobian, alpha(f~^n z) . D f~^n(z) dz, so no image polyline is formed.
/// Throws PreconditionError unless x, y are fixed (1e-12) and gamma joins x to y.
ActionRecord action_difference(const LiftedMap& lift, const Vec& x, const Vec& y, const Polyline& gamma,
                               const PrimitiveForm& alpha, long n = 1, double tol = 1e-12);

/// Segment x -> y and the standard primitive.
ActionRecord action_difference(const LiftedMap& lift, const Vec& x, const Vec& y, long n = 1);

/// max over 1 <= n <= n_max of |delta(f~^n) / (n delta(f~)) - 1|.
/// Throws PreconditionError when delta(f~) vanishes (|delta| <= 1e-12).
double verify_iterate_scaling(const LiftedMap& lift, const Vec& x, const Vec& y, long n_max);

// ---- symplectic paths -----------------------------------------------------------

/// A path of symplectic maps f_t, t in [0, 1], given by its generating vector
/// field xi_t and, when Hamiltonian, the normalised function F_t with
/// -i_{xi_t} omega = dF_t.
class SymplecticPath {
 public:
  virtual ~SymplecticPath() = default;
  virtual std::string id() const = 0;
  virtual const Domain& domain() const = 0;
  virtual Vec field(double t, const Vec& x) const = 0;
  virtual bool hamiltonian() const = 0;
  /// Throws PreconditionError when the path is not Hamiltonian.
  virtual double function(double t, const Vec& x) const = 0;
  /// sup_x |xi_t| (upper bound); also the Lipschitz constant of F_t.
  virtual double field_bound(double t) const = 0;
  /// Lipschitz constant of x -> xi_t(x).
  virtual double field_lipschitz(double t) const = 0;
  /// Times where t -> xi_t may fail to be smooth; always contains 0 and 1.
  virtual std::vector<double> breakpoints() const { return {0.0, 1.0}; }
};

using PathPtr = std::shared_ptr<const SymplecticPath>;

/// (x, y) -> (x, y + t psi(x)) on T^2. Hamiltonian iff mean(psi) = 0, F = mean-zero antiderivative.
PathPtr shear_path(const FourierSeries& psi);
/// x -> x + t e on T^{2n}. Hamiltonian only for e = 0.
PathPtr translation_path(const Vec& e);
/// Time-(t * time) map of a twist Hamiltonian; F = time (H - mean H).
PathPtr twist_path(const TwistHamiltonian& h, double time = 1.0);
/// f then g, each run at double speed.
PathPtr concatenate(const PathPtr& first, const PathPtr& second);

/// Flux of a torus path as coefficients over the basis (dx_1, ..., dx_{2n}):
/// component a = int_0^1 int_0^1 lambda_t(s e_a)(e_a) ds dt, lambda_t = -i_{xi_t} omega.
Vec flux_of_path(const PathPtr& path, double tol = 1e-12);

struct PathFunctionals {
  double length = 0.0;          // L = int max |xi_t| dt (certified upper bound)
  double hofer = 0.0;           // Lambda = int max |F_t| dt (certified upper bound)
  double length_grid = 0.0;     // the same integrals with plain grid maxima
  double hofer_grid = 0.0;
  bool has_hofer = false;
};

/// Grid max plus Lipschitz times covering radius, integrated in t by adaptive
/// Simpson on each smooth piece. Lambda is computed only when with_hofer is set
/// and throws PreconditionError on a non-Hamiltonian path.
PathFunctionals path_functionals(const PathPtr& path, int grid_resolution = 256, bool with_hofer = true);

// ---- spectrum and width ---------------------------------------------------------

struct CriticalSet {
  double s_lo = 0.0;  // squared radius range |p|^2 in [s_lo, s_hi]
  double s_hi = 0.0;
  double value = 0.0;  // H on the set
  bool interval() const { return s_hi > s_lo; }
};

struct SpectrumRecord {
  std::vector<CriticalSet> critical_sets;
  std::vector<double> actions;  // sorted, duplicates (1e-12) merged
  double mean = 0.0;
  double time = 1.0;
  double width = 0.0;
};

/// Actions of the constant orbits of the time-`time` map of H: time (mean - H(p*))
/// over the critical points p*, where mean is the omega-volume mean of H.
SpectrumRecord hamiltonian_action_spectrum(const TwistHamiltonian& h, double time = 1.0);

struct WidthConjugationReport {
  double width = 0.0;             // from the critical points of H
  double conjugated_width = 0.0;  // recomputed from fixed points of h f h^-1 and H o h^-1
  std::size_t fixed_points = 0;   // grid points found fixed by the conjugated lift
  bool equal = false;             // |difference| <= 1e-9
};

/// Recomputes the width of h f^time h^-1 by scanning a grid for fixed points of
/// its standard lift (|g~z - z| <= 1e-11) and evaluating time (mean - H o h^-1)
/// there. The conjugator must be a twist-cylinder map of the same (m, eps), so
/// it preserves the momentum disc; otherwise PreconditionError.
WidthConjugationReport width_conjugation_check(const TwistHamiltonian& h, double time, const SymplecticMap& conjugator,
                                               int grid_resolution = 64);

struct GeometricInequalityReport {
  double width = 0.0;
  double b_hat = 0.0;     // L + Lambda of the generating path
  double diameter = 0.0;  // flat diameter of T^m x D^m
  double u_hi = 0.0;      // upper bound for u(d + b_hat)
  double rhs = 0.0;       // 2 (b + b u(d + b))
  double slack = 0.0;     // rhs - width
  bool holds = false;
};

/// width(f^time) <= 2 (b + b u(d + b)) with b = L + Lambda of the twist path and
/// u bounded on the cylinder cover by sup |p dq| over B(s), i.e. min(s, eps).
GeometricInequalityReport geometric_inequality_check(const TwistHamiltonian& h, double time = 1.0,
                                                     int grid_resolution = 256);

// ---- isoperimetric consistency --------------------------------------------------

/// Lattice {i b1 + j b2} in R^2.
struct Lattice {
  Mat basis = Mat::Identity(2, 2);  // columns b1, b2
  static Lattice integer() { return {}; }
};

/// Winding number of a closed polyline about a point, by signed crossings of
/// the rightward ray (exact for polylines). Throws PreconditionError if the
/// point lies on the polyline.
int winding_number(const Polyline& beta, const Vec& point);

struct IsoperimetricResult {
  double ratio = 0.0;  // |int x dy| / length
  bool holds = false;  // ratio <= kappa_est
};

/// Requires winding number 0 about every lattice point in the bounding box
/// (PreconditionError otherwise), then checks |int x dy| <= kappa_est length.
IsoperimetricResult isoperimetric_consistency(const Lattice& lattice, const Polyline& beta, double kappa_est);

struct CorpusResult {
  std::size_t accepted = 0;
  std::size_t rejected = 0;  // nonzero winding
  double max_ratio = 0.0;
  bool all_hold = true;
};

CorpusResult isoperimetric_corpus(const Lattice& lattice, const std::vector<Polyline>& corpus, double kappa_est);

/// Random closed polylines: `contractible` loops confined to lattice cells or
/// drawn as figure-eights, plus `winding` loops that encircle a lattice point.
std::vector<Polyline> generate_loop_corpus(unsigned seed, int contractible = 200, int winding = 20);

/// Tilted square of area 1 and side 1 centred between the points of Z^2.
Polyline unit_square_between_lattice_points();

// ---- lower-bound certificate ----------------------------------------------------

/// (1 / b) v_lo(n c / 2): a lower bound for Gamma_n. PreconditionError for c <= 0, b <= 0 or n < 1.
double lower_bound_certificate(double c, double b, long n, const FillingEstimate& filling);

/// c = |delta(f~; x, y)| along gamma, b = flat length of gamma.
double lower_bound_certificate(const LiftedMap& lift, const Vec& x, const Vec& y, const Polyline& gamma, long n,
                               const FillingEstimate& filling);

}  // namespace symgrowth
