#ifndef ROCKLAND_ALGEBRA_HPP
#define ROCKLAND_ALGEBRA_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/rational.hpp>

namespace rockland {

using Rational = boost::rational<long long>;

/// One term of a bracket expansion: coefficient c on basis vector k.
struct BracketTerm {
  int k;
  Rational c;
};

/// A stratified (graded, g_{-1}-generated) nilpotent Lie algebra given by
/// structure constants on a fixed basis. Weight w_i means basis vector i
/// lies in the layer of degree -w_i. Immutable after construction.
class StratifiedLieAlgebra {
 public:
  StratifiedLieAlgebra(std::vector<std::string> basis_names,
                       std::vector<int> weights,
                       std::map<std::pair<int, int>, std::vector<BracketTerm>> brackets);

  int dim() const { return static_cast<int>(weights_.size()); }
  int step() const { return step_; }
  const std::vector<std::string>& basis_names() const { return basis_names_; }
  const std::vector<int>& weights() const { return weights_; }

  /// Basis indices of the layer of degree -w (w = 1..step).
  const std::vector<int>& layer(int w) const;
  int layer_dim(int w) const { return w <= step_ ? static_cast<int>(layer(w).size()) : 0; }
  int n1() const { return layer_dim(1); }
  int n2() const { return layer_dim(2); }

  /// [e_i, e_j] as a sparse term list (empty if the bracket vanishes).
  const std::vector<BracketTerm>& bracket(int i, int j) const;
  /// All stored nonzero bracket pairs (i, j).
  const std::map<std::pair<int, int>, std::vector<BracketTerm>>& bracket_table() const {
    return brackets_;
  }

  double structure_constant(int i, int j, int k) const;
  /// Bilinear extension of the bracket to coefficient vectors (float view).
  Eigen::VectorXd bracket_vec(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  /// Matrix of ad(e_i) acting on coefficient vectors.
  Eigen::MatrixXd ad_matrix(int i) const;

  /// Dimension of the centre, computed as the common kernel of all ad(e_i).
  int center_dim() const;
  /// True when the centre equals the span of the degree -step layer... used
  /// by callers needing the g_{-2}=z precondition on step-2 algebras.
  bool center_is_layer(int w) const;

  std::string name_hint;  ///< catalog tag when applicable ("heisenberg(2)", ...)

 private:
  std::vector<std::string> basis_names_;
  std::vector<int> weights_;
  std::map<std::pair<int, int>, std::vector<BracketTerm>> brackets_;
  int step_ = 1;
  std::vector<std::vector<int>> layers_;  // layers_[w-1]
  std::vector<BracketTerm> empty_;
};

/// Outcome of one structural check.
struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
  std::string summary() const;
};

/// Checks antisymmetry, Jacobi (exact over rationals), grading and
/// generation by g_{-1}; failures carry the first violating triple.
ValidationReport validate(const StratifiedLieAlgebra& alg);

/// Named algebras: heisenberg(m), engel, n4, heisenberg_plus_line(m),
/// free_step2(n), mohsen(m). Throws std::invalid_argument on unknown names
/// or nonpositive parameters.
StratifiedLieAlgebra catalog(const std::string& name, const std::vector<int>& params = {});
std::vector<std::string> catalog_names();

/// The extension of h_{2m+1} by its dual and a one-dimensional centre
/// (the function model: left-invariant fields plus coordinate
/// multiplications, constants spanning Z0). Requires a catalog Heisenberg
/// algebra as input.
StratifiedLieAlgebra mohsen_modify(const StratifiedLieAlgebra& h);

/// Degree-2 truncation: keep g_{-1} and g_{-2} with the g_{-1}^2 bracket,
/// declare g_{-2} central.
StratifiedLieAlgebra truncate_step2(const StratifiedLieAlgebra& alg);

/// A graded Lie algebra homomorphism given by its matrix on the chosen
/// bases (target dim x source dim).
struct GradedHomomorphism {
  std::shared_ptr<const StratifiedLieAlgebra> source;
  std::shared_ptr<const StratifiedLieAlgebra> target;
  Eigen::MatrixXd matrix;
};

/// Checks bracket compatibility, gradedness, surjectivity, and that the
/// induced map g_{-1}/(ker ∩ g_{-1}) -> g'_{-1} is an isometry.
ValidationReport validate(const GradedHomomorphism& phi);

}  // namespace rockland

#endif  // ROCKLAND_ALGEBRA_HPP
