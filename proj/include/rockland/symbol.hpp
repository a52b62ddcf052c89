#ifndef ROCKLAND_SYMBOL_HPP
#define ROCKLAND_SYMBOL_HPP

#include <complex>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "rockland/algebra.hpp"
#include "rockland/kirillov.hpp"

namespace rockland {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

/// The lower-order symbol of a sub-Laplacian: m complex N x N matrices
/// gamma_l against the orthonormal g_{-2} basis of a fixed algebra.
class SymbolGamma {
 public:
  SymbolGamma(std::shared_ptr<const StratifiedLieAlgebra> alg, std::vector<Mat> gammas);
  SymbolGamma(const StratifiedLieAlgebra& alg, std::vector<Mat> gammas);

  const StratifiedLieAlgebra& algebra() const { return *alg_; }
  std::shared_ptr<const StratifiedLieAlgebra> algebra_ptr() const { return alg_; }
  int N() const { return N_; }
  int m() const { return static_cast<int>(gammas_.size()); }
  const std::vector<Mat>& gammas() const { return gammas_; }
  const Mat& gamma(int l) const { return gammas_[l]; }

  /// Hermitean components: gamma = a + i b with a_l = (g_l + g_l*)/2.
  std::vector<Mat> re_part() const;
  std::vector<Mat> im_part() const;
  /// Total hermitean adjoint (gamma_l*), and scalar scaling.
  SymbolGamma adjoint() const;
  SymbolGamma scaled(cplx t) const;
  static SymbolGamma zero(const StratifiedLieAlgebra& alg, int N);

 private:
  std::shared_ptr<const StratifiedLieAlgebra> alg_;
  std::vector<Mat> gammas_;
  int N_ = 1;
};

/// The embedding of g_{-2} into antisymmetric forms on g_{-1}:
/// iota(Y)_{jk} = <Y, [X_j, X_k]>.
Eigen::MatrixXd iota(const StratifiedLieAlgebra& alg, const Eigen::VectorXd& y);
/// iota of each g_{-2} basis vector.
std::vector<Eigen::MatrixXd> iota_basis(const StratifiedLieAlgebra& alg);
/// (iota ⊗ id) of a tuple of N x N matrices, as an (nN) x (nN) matrix with
/// block (j,k) equal to sum_l iota_l(j,k) x_l.
Mat iota_big(const StratifiedLieAlgebra& alg, const std::vector<Mat>& tuple);

/// Relations among ordered brackets: the kernel of
/// so_n -> g_{-2}, s |-> sum_{l,k} s_{lk} [X_l, X_k], with a
/// Frobenius-orthonormal basis.
struct RelationSpace {
  std::vector<Eigen::MatrixXd> basis;
  int dim() const { return static_cast<int>(basis.size()); }
};
RelationSpace relation_space(const StratifiedLieAlgebra& alg);

/// Canonical (minimal Frobenius norm) representative of the coset delta(gamma):
/// sum_{k,l} delta(gamma)_{kl} [X_k, X_l] = sum_l gamma_l Y_l. Returned as a
/// tuple of N x N blocks indexed by the n x n antisymmetric pattern, i.e. an
/// (nN) x (nN) matrix as in iota_big.
Mat delta(const SymbolGamma& gamma);
/// Contraction dual to delta: given an (nN)x(nN) blocked antisymmetric matrix,
/// return the tuple sum_{k,l} s_{kl} [X_k, X_l] expressed on the g_{-2} basis.
std::vector<Mat> bracket_contract(const StratifiedLieAlgebra& alg, const Mat& blocked, int N);

/// Quotient norm of the tuple b modulo the real line through a and the
/// relation space: min over real t and hermitean-entry s in S ⊗ M_N of
/// ||iota⊗id(b + t a) + s||_op. Also reports the pure-subspace value
/// min_t ||iota⊗id(b + t a)||_op (no relation subtraction).
struct QuotientNormResult {
  double value = 0.0;
  double t_opt = 0.0;
  double subspace_value = 0.0;
  double subspace_t_opt = 0.0;
  bool exact_zero = false;  // b lay on the line R a
};
QuotientNormResult quotient_norm(const StratifiedLieAlgebra& alg, const std::vector<Mat>& b,
                                 const std::vector<Mat>& a);

/// gamma as a first-order polynomial on g_{-2}^*: gamma(xi) = i sum_l xi_l gamma_l.
Mat gamma_poly(const SymbolGamma& gamma, const Eigen::VectorXd& xi);

/// Forbidden-zone distance: dist(z, (-inf,-p] ∪ [p,inf)).
double dist_to_H(cplx z, double p);

struct SpectralTestResult {
  bool pass = true;
  double margin = std::numeric_limits<double>::infinity();
  Eigen::VectorXd witness_xi;
  cplx witness_eigenvalue = 0.0;
};
/// Checks Spec(gamma(xi)) ∩ H(p) = ∅ over sampled unit xi; margin is the
/// smallest distance seen, a failure carries the witness.
SpectralTestResult spectral_H_test(const SymbolGamma& gamma, double p,
                                   const std::vector<Eigen::VectorXd>& samples);

struct AlphaTestResult {
  bool pass = true;
  double max_value = 0.0;  // max over xi, unit v in Ker xi(a) of |<v, xi(b) v>|
  double margin = 1.0;     // 1 - max_value (1 when every kernel is empty)
  Eigen::VectorXd witness_xi;
  Eigen::VectorXcd witness_v;
  bool threshold_fragile = false;  // pass/fail flips under kernel-cut sweep x10, /10
};
/// Property-alpha test: for each sampled unit xi, compress xi(Im gamma) to
/// Ker(xi(Re gamma)) (relative singular cut kernel_rel_tol) and bound the
/// compressed spectral radius by 1.
AlphaTestResult property_alpha_test(const SymbolGamma& gamma,
                                    const std::vector<Eigen::VectorXd>& samples,
                                    double kernel_rel_tol = 1e-7);

/// Pushforward of a symbol along a graded homomorphism:
/// sum phi_*(gamma)_l Y'_l = sum gamma_l phi(Y_l).
SymbolGamma pushforward(const GradedHomomorphism& phi, const SymbolGamma& gamma);

}  // namespace rockland

#endif  // ROCKLAND_SYMBOL_HPP
