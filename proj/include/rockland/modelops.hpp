#ifndef ROCKLAND_MODELOPS_HPP
#define ROCKLAND_MODELOPS_HPP

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "rockland/symbol.hpp"

namespace rockland {

using SpMat = Eigen::SparseMatrix<cplx>;

enum class ModelKind { harmonic, engel_generic, engel_degenerate, n4_generic, htilde_flat };

std::string to_string(ModelKind k);

/// Discretization request. scheme "hermite_basis" uses `size` basis
/// functions (1-D kinds); "finite_difference" uses a Dirichlet box
/// [-box, box]^dim with `size` interior points per axis. box <= 0 asks for
/// automatic sizing from the classical turning points.
struct DiscSpec {
  std::string scheme = "hermite_basis";
  int size = 400;
  double box = 0.0;
  int refined_size() const { return 2 * size; }
};

/// A finite-dimensional model of a represented operator, stored at two
/// resolutions so refinement deltas are computable.
struct ModelOperator {
  ModelKind kind;
  std::vector<double> parameters;
  DiscSpec disc;
  int N = 1;
  double scale = 1.0;  // natural norm scale of the family (e.g. 2*pi*sqrt(-q))
  SpMat matrix;        // primary resolution
  SpMat matrix_fine;   // refined resolution (may be empty if not requested)
  int dim() const { return static_cast<int>(matrix.rows()); }
};

/// 1-D harmonic oscillator -d^2/dx^2 + x^2 in the Hermite basis (exact
/// low-lying spectrum 2k+1 up to truncation edge effects).
ModelOperator build_harmonic(int size);

/// Anharmonic family on the nondegenerate parameter stratum:
/// d^2/dx^2 - 4 pi^2 (p x^2 + q/(2p))^2 + 2 pi p gamma x, acting on
/// C^N-valued functions. p must be nonzero.
ModelOperator build_engel_generic(double p, double q, const Mat& gamma, const DiscSpec& disc,
                                  bool build_fine = true);

/// Degenerate stratum (q < 0): exact Hermite-diagonal blocks
/// -2 pi sqrt(-q) ((2k+1) I + sign * i gamma), k = 0..cutoff-1.
/// Injective iff no 2k+1 +- mu vanishes for mu in Spec(i gamma).
ModelOperator build_engel_degenerate(double q, int sign, const Mat& gamma, int cutoff = 64);

/// 2-D family: Laplacian minus 4 pi^2 (eta - alpha x y)^2 minus
/// 2 pi i alpha (gamma2 x - gamma1 y), 5-point Dirichlet box. alpha must be
/// nonzero; the box covers the zero set of (eta - alpha x y).
ModelOperator build_n4_generic(double alpha, double eta, const Mat& gamma1, const Mat& gamma2,
                               const DiscSpec& disc, bool build_fine = true);

/// 3-D flat-orbit family (m = 1): |h|(-L_B + d^2/dB^2) + i h (g0 B -
/// (g1 x + g2 y)/2) with L_B the Landau operator at field strength B,
/// finite differences on a Dirichlet box in (x, y, B).
ModelOperator build_htilde_flat(int m, double hbar, const std::vector<Mat>& gamma,
                                const DiscSpec& disc, bool build_fine = false);

enum class InjectivityVerdict { injective, kernel_detected, unresolved };

std::string to_string(InjectivityVerdict v);

struct InjectivityEstimate {
  double sigma_min = 0.0;        // primary resolution
  double sigma_min_fine = -1.0;  // refined resolution (-1 when unavailable)
  double delta_rel = 0.0;        // |sigma - sigma_fine| / max(sigma_fine, eps)
  InjectivityVerdict verdict = InjectivityVerdict::unresolved;
  std::optional<Eigen::VectorXcd> witness;
};

/// Smallest singular value via LU-based inverse iteration (dense SVD on
/// small problems), with the two-resolution verdict rule: injective needs
/// sigma above threshold*scale at both resolutions with < 10% delta;
/// kernel_detected needs sigma below threshold*scale at both and not
/// growing under refinement.
InjectivityEstimate min_singular(const ModelOperator& op, double threshold, bool refine);

/// Smallest singular value of one matrix (exposed for oracles and tests).
double smallest_singular_value(const SpMat& A, Eigen::VectorXcd* witness = nullptr);

/// Lowest k singular values (dense path; for refinement-delta diagnostics).
std::vector<double> lowest_singular_values(const SpMat& A, int k);

}  // namespace rockland

#endif  // ROCKLAND_MODELOPS_HPP
