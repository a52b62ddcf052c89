#ifndef ROCKLAND_KIRILLOV_HPP
#define ROCKLAND_KIRILLOV_HPP

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "rockland/algebra.hpp"

namespace rockland {

/// Kirillov form data at a covector xi on g_{-2}: the antisymmetric form
/// omega_xi(X,Y) = xi([X,Y]) on g_{-1}, its rank, |omega| = sqrt(-omega^2)
/// and the Pfaffian (when dim g_{-1} is even).
struct KirillovData {
  Eigen::VectorXd xi;
  Eigen::MatrixXd omega;
  int rank = 0;
  Eigen::MatrixXd abs_omega;
  std::optional<double> pfaffian;
  /// Positive singular-value pairs of omega (one value per pair, descending).
  std::vector<double> mu;
};

KirillovData kirillov_form(const StratifiedLieAlgebra& alg, const Eigen::VectorXd& xi,
                           double rank_rel_tol = 1e-9);

/// Pfaffian of a real antisymmetric matrix by Householder
/// skew-tridiagonalization with sign tracking. Throws on odd dimension or
/// asymmetry beyond tolerance.
double pfaffian(const Eigen::MatrixXd& omega, double asym_tol = 1e-10);

/// Flat-orbit test on a step-2 algebra with centre = g_{-2}: true iff
/// rank(omega_xi) = dim g_{-1}. Throws when the centre is larger than
/// g_{-2} (use the reduced variant then).
bool flat_orbit_test(const StratifiedLieAlgebra& alg, const Eigen::VectorXd& xi,
                     double rank_rel_tol = 1e-9);

/// Central directions of g_{-1}: the common kernel of all omega_xi
/// (orthonormal columns). Empty matrix when there are none.
Eigen::MatrixXd central_layer1_directions(const StratifiedLieAlgebra& alg);

/// Flat orbits in the general-centre sense for step-2 algebras: omega_xi
/// nondegenerate on g_{-1}/(central directions).
bool flat_orbit_reduced(const StratifiedLieAlgebra& alg, const Eigen::VectorXd& xi,
                        double rank_rel_tol = 1e-9);

/// Sphere scan result for flat-orbit existence.
struct FlatOrbitScan {
  bool exists = false;
  Eigen::VectorXd witness;  // some xi with a flat orbit, when found
  int reduced_dim = 0;      // dim g_{-1} minus central directions
};
FlatOrbitScan scan_flat_orbits(const StratifiedLieAlgebra& alg, int samples,
                               double rank_rel_tol = 1e-9);

/// Bottom of the harmonic ladder at xi: Tr|omega_xi|/2. Homogeneous of
/// degree 1; throws on xi = 0.
double harmonic_bottom(const StratifiedLieAlgebra& alg, const Eigen::VectorXd& xi);

/// Ladder values sum_j mu_j (2 n_j + 1) over multi-indices with
/// sum n_j <= kmax, sorted ascending with multiplicity. The mu_j are the
/// positive eigenvalue pairs of |omega_xi|.
std::vector<double> harmonic_spectrum(const StratifiedLieAlgebra& alg, const Eigen::VectorXd& xi,
                                      int kmax, double rank_rel_tol = 1e-9);

/// Deterministic low-discrepancy unit-sphere samples in R^m. m = 1 yields
/// {+1,-1}; m = 2 uniform angles; m = 3 a Fibonacci sphere; higher m a
/// Halton lattice through the inverse normal map.
std::vector<Eigen::VectorXd> sphere_samples(int m, int count);

/// Points near x on the unit sphere (for local refinement of scans).
std::vector<Eigen::VectorXd> sphere_neighborhood(const Eigen::VectorXd& x, double radius,
                                                 int count);

}  // namespace rockland

#endif  // ROCKLAND_KIRILLOV_HPP
