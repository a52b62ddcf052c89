#include "rockland/algebra.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rockland {

namespace {

using TermMap = std::map<int, Rational>;

void accumulate(TermMap& acc, int k, const Rational& c) {
  auto it = acc.find(k);
  if (it == acc.end()) {
    if (c != Rational(0)) acc[k] = c;
  } else {
    it->second += c;
    if (it->second == Rational(0)) acc.erase(it);
  }
}

}  // namespace

StratifiedLieAlgebra::StratifiedLieAlgebra(
    std::vector<std::string> basis_names, std::vector<int> weights,
    std::map<std::pair<int, int>, std::vector<BracketTerm>> brackets)
    : basis_names_(std::move(basis_names)),
      weights_(std::move(weights)),
      brackets_(std::move(brackets)) {
  if (basis_names_.size() != weights_.size())
    throw std::invalid_argument("basis/weight length mismatch");
  const int d = dim();
  step_ = 1;
  for (int w : weights_) {
    if (w <= 0) throw std::invalid_argument("weights must be positive");
    step_ = std::max(step_, w);
  }
  layers_.assign(step_, {});
  for (int i = 0; i < d; ++i) layers_[weights_[i] - 1].push_back(i);
  for (auto& [ij, terms] : brackets_) {
    if (ij.first < 0 || ij.first >= d || ij.second < 0 || ij.second >= d)
      throw std::invalid_argument("bracket index out of range");
    for (auto& t : terms)
      if (t.k < 0 || t.k >= d) throw std::invalid_argument("bracket target out of range");
  }
}

const std::vector<int>& StratifiedLieAlgebra::layer(int w) const {
  static const std::vector<int> none;
  if (w < 1 || w > step_) return none;
  return layers_[w - 1];
}

const std::vector<BracketTerm>& StratifiedLieAlgebra::bracket(int i, int j) const {
  auto it = brackets_.find({i, j});
  return it == brackets_.end() ? empty_ : it->second;
}

double StratifiedLieAlgebra::structure_constant(int i, int j, int k) const {
  for (const auto& t : bracket(i, j))
    if (t.k == k) return boost::rational_cast<double>(t.c);
  return 0.0;
}

Eigen::VectorXd StratifiedLieAlgebra::bracket_vec(const Eigen::VectorXd& x,
                                                  const Eigen::VectorXd& y) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim());
  for (const auto& [ij, terms] : brackets_) {
    const double xy = x[ij.first] * y[ij.second];
    if (xy == 0.0) continue;
    for (const auto& t : terms) out[t.k] += xy * boost::rational_cast<double>(t.c);
  }
  return out;
}

Eigen::MatrixXd StratifiedLieAlgebra::ad_matrix(int i) const {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(dim(), dim());
  for (int j = 0; j < dim(); ++j)
    for (const auto& t : bracket(i, j)) A(t.k, j) += boost::rational_cast<double>(t.c);
  return A;
}

int StratifiedLieAlgebra::center_dim() const {
  const int d = dim();
  Eigen::MatrixXd stacked(d * d, d);
  for (int i = 0; i < d; ++i) stacked.middleRows(i * d, d) = ad_matrix(i);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(stacked);
  qr.setThreshold(1e-10);
  return d - static_cast<int>(qr.rank());
}

bool StratifiedLieAlgebra::center_is_layer(int w) const {
  // The centre contains the top layer by grading; equality is a dimension
  // count once we know every non-top basis vector of the candidate layer is
  // central and nothing outside is.
  const int d = dim();
  Eigen::MatrixXd stacked(d * d, d);
  for (int i = 0; i < d; ++i) stacked.middleRows(i * d, d) = ad_matrix(i);
  auto central = [&](int j) { return stacked.col(j).lpNorm<Eigen::Infinity>() < 1e-12; };
  for (int j = 0; j < d; ++j) {
    const bool in_layer = (weights_[j] == w);
    if (in_layer != central(j)) return false;
  }
  return true;
}

bool ValidationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& c : checks)
    os << (c.pass ? "[pass] " : "[FAIL] ") << c.name
       << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  return os.str();
}

namespace {

// Exact bracket of basis vectors as a term map.
TermMap exact_bracket(const StratifiedLieAlgebra& alg, int i, int j) {
  TermMap out;
  for (const auto& t : alg.bracket(i, j)) accumulate(out, t.k, t.c);
  return out;
}

// Exact bracket of e_i against a term map.
TermMap exact_bracket(const StratifiedLieAlgebra& alg, int i, const TermMap& v) {
  TermMap out;
  for (const auto& [j, c] : v)
    for (const auto& t : alg.bracket(i, j)) accumulate(out, t.k, c * t.c);
  return out;
}

}  // namespace

ValidationReport validate(const StratifiedLieAlgebra& alg) {
  ValidationReport rep;
  const int d = alg.dim();

  {  // antisymmetry: c_ij^k = -c_ji^k, exact
    CheckResult c{"antisymmetry"};
    for (int i = 0; i < d && c.pass; ++i)
      for (int j = 0; j < d && c.pass; ++j) {
        TermMap f = exact_bracket(alg, i, j);
        TermMap g = exact_bracket(alg, j, i);
        for (const auto& [k, q] : g) accumulate(f, k, q);
        if (!f.empty()) {
          c.pass = false;
          std::ostringstream os;
          os << "violated at (" << i << "," << j << "," << f.begin()->first << ")";
          c.detail = os.str();
        }
      }
    rep.checks.push_back(c);
  }

  {  // Jacobi identity, exact over rationals
    CheckResult c{"jacobi"};
    for (int i = 0; i < d && c.pass; ++i)
      for (int j = i + 1; j < d && c.pass; ++j)
        for (int k = j + 1; k < d && c.pass; ++k) {
          TermMap acc = exact_bracket(alg, k, exact_bracket(alg, i, j));
          for (const auto& [l, q] : exact_bracket(alg, i, exact_bracket(alg, j, k)))
            accumulate(acc, l, q);
          for (const auto& [l, q] : exact_bracket(alg, j, exact_bracket(alg, k, i)))
            accumulate(acc, l, q);
          if (!acc.empty()) {
            c.pass = false;
            std::ostringstream os;
            os << "violated at (" << i << "," << j << "," << k << ")";
            c.detail = os.str();
          }
        }
    rep.checks.push_back(c);
  }

  {  // grading: [g_{-a}, g_{-b}] subset of g_{-a-b}
    CheckResult c{"grading"};
    for (const auto& [ij, terms] : alg.bracket_table()) {
      const int w = alg.weights()[ij.first] + alg.weights()[ij.second];
      for (const auto& t : terms)
        if (t.c != Rational(0) && alg.weights()[t.k] != w) {
          c.pass = false;
          std::ostringstream os;
          os << "c(" << ij.first << "," << ij.second << ")^" << t.k << " breaks grading";
          c.detail = os.str();
          break;
        }
      if (!c.pass) break;
    }
    rep.checks.push_back(c);
  }

  {  // generation: iterated brackets of g_{-1} span every layer
    CheckResult c{"generation"};
    Eigen::MatrixXd span(d, 0);
    std::vector<Eigen::VectorXd> frontier;
    for (int i : alg.layer(1)) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
      e[i] = 1.0;
      frontier.push_back(e);
      span.conservativeResize(d, span.cols() + 1);
      span.col(span.cols() - 1) = e;
    }
    int rank = static_cast<int>(alg.layer(1).size());
    for (int depth = 2; depth <= alg.step(); ++depth) {
      std::vector<Eigen::VectorXd> next;
      for (int i : alg.layer(1))
        for (const auto& v : frontier) {
          Eigen::VectorXd w = alg.bracket_vec(Eigen::VectorXd::Unit(d, i), v);
          if (w.norm() < 1e-14) continue;
          Eigen::MatrixXd trial(d, span.cols() + 1);
          trial << span, w;
          Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(trial);
          qr.setThreshold(1e-10);
          if (static_cast<int>(qr.rank()) > rank) {
            span = trial;
            rank++;
            next.push_back(w);
          }
        }
      frontier = std::move(next);
      if (frontier.empty()) break;
    }
    if (rank != d) {
      c.pass = false;
      std::ostringstream os;
      os << "bracket closure of the degree -1 layer has rank " << rank << " < " << d;
      c.detail = os.str();
    }
    rep.checks.push_back(c);
  }

  return rep;
}

namespace {

using Table = std::map<std::pair<int, int>, std::vector<BracketTerm>>;

// Records [e_i, e_j] = sum_k c_k e_k together with the antisymmetric pair.
void set_bracket(Table& table, int i, int j, std::vector<BracketTerm> terms) {
  std::vector<BracketTerm> neg = terms;
  for (auto& t : neg) t.c = -t.c;
  table[{i, j}] = std::move(terms);
  table[{j, i}] = std::move(neg);
}

StratifiedLieAlgebra make_heisenberg(int m) {
  std::vector<std::string> names;
  std::vector<int> weights;
  for (int j = 1; j <= m; ++j) names.push_back("X" + std::to_string(j)), weights.push_back(1);
  for (int j = 1; j <= m; ++j) names.push_back("Y" + std::to_string(j)), weights.push_back(1);
  names.push_back("Z");
  weights.push_back(2);
  Table table;
  for (int j = 0; j < m; ++j) set_bracket(table, j, m + j, {{2 * m, Rational(1)}});
  StratifiedLieAlgebra alg(names, weights, table);
  alg.name_hint = "heisenberg(" + std::to_string(m) + ")";
  return alg;
}

}  // namespace

StratifiedLieAlgebra catalog(const std::string& name, const std::vector<int>& params) {
  auto want_param = [&](const char* what) -> int {
    if (params.empty() || params[0] <= 0)
      throw std::invalid_argument(std::string("catalog ") + what + " needs a positive parameter");
    return params[0];
  };

  if (name == "heisenberg") {
    return make_heisenberg(want_param("heisenberg(m)"));
  }
  if (name == "engel") {
    Table table;
    set_bracket(table, 0, 1, {{2, Rational(1)}});
    set_bracket(table, 0, 2, {{3, Rational(1)}});
    StratifiedLieAlgebra alg({"X1", "X2", "X3", "X4"}, {1, 1, 2, 3}, table);
    alg.name_hint = "engel";
    return alg;
  }
  if (name == "n4") {
    // Strictly upper triangular 4x4 matrices: X1,X2,X3 the superdiagonal.
    Table table;
    set_bracket(table, 0, 1, {{3, Rational(1)}});   // [X1,X2] = Y1
    set_bracket(table, 1, 2, {{4, Rational(1)}});   // [X2,X3] = Y2
    set_bracket(table, 0, 4, {{5, Rational(1)}});   // [X1,Y2] = Z
    set_bracket(table, 3, 2, {{5, Rational(1)}});   // [Y1,X3] = Z
    StratifiedLieAlgebra alg({"X1", "X2", "X3", "Y1", "Y2", "Z"}, {1, 1, 1, 2, 2, 3}, table);
    alg.name_hint = "n4";
    return alg;
  }
  if (name == "heisenberg_plus_line") {
    const int m = want_param("heisenberg_plus_line(m)");
    StratifiedLieAlgebra h = make_heisenberg(m);
    std::vector<std::string> names = h.basis_names();
    std::vector<int> weights = h.weights();
    names.push_back("W");
    weights.push_back(1);
    StratifiedLieAlgebra alg(names, weights, h.bracket_table());
    alg.name_hint = "heisenberg_plus_line(" + std::to_string(m) + ")";
    return alg;
  }
  if (name == "free_step2") {
    const int n = want_param("free_step2(n)");
    if (n < 2) throw std::invalid_argument("free_step2 needs n >= 2");
    std::vector<std::string> names;
    std::vector<int> weights;
    for (int i = 1; i <= n; ++i) names.push_back("X" + std::to_string(i)), weights.push_back(1);
    Table table;
    int idx = n;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        names.push_back("Y" + std::to_string(i + 1) + std::to_string(j + 1));
        weights.push_back(2);
        set_bracket(table, i, j, {{idx, Rational(1)}});
        ++idx;
      }
    StratifiedLieAlgebra alg(names, weights, table);
    alg.name_hint = "free_step2(" + std::to_string(n) + ")";
    return alg;
  }
  if (name == "mohsen") {
    return mohsen_modify(make_heisenberg(want_param("mohsen(m)")));
  }
  throw std::invalid_argument("unknown catalog name: " + name);
}

std::vector<std::string> catalog_names() {
  return {"heisenberg(m)", "engel", "n4", "heisenberg_plus_line(m)", "free_step2(n)", "mohsen(m)"};
}

StratifiedLieAlgebra mohsen_modify(const StratifiedLieAlgebra& h) {
  // Recognize heisenberg(m) in catalog form.
  const int d = h.dim();
  const int m = (d - 1) / 2;
  bool ok = (d == 2 * m + 1) && m >= 1 && h.step() == 2 && h.n1() == 2 * m && h.n2() == 1;
  if (ok) {
    for (int i = 0; i < 2 * m && ok; ++i)
      for (int j = i + 1; j < 2 * m && ok; ++j) {
        const double c = h.structure_constant(i, j, 2 * m);
        ok = (j == i + m) ? (c == 1.0) : (c == 0.0);
      }
  }
  if (!ok) throw std::invalid_argument("mohsen_modify expects catalog heisenberg(m)");

  // Layout: Xt_1..Xt_m, Yt_1..Yt_m, eZ | Zt, eX_1..eX_m, eY_1..eY_m | Z0.
  std::vector<std::string> names;
  std::vector<int> weights;
  auto add = [&](const std::string& s, int w) {
    names.push_back(s);
    weights.push_back(w);
  };
  for (int j = 1; j <= m; ++j) add("Xt" + std::to_string(j), 1);
  for (int j = 1; j <= m; ++j) add("Yt" + std::to_string(j), 1);
  add("eZ", 1);
  add("Zt", 2);
  for (int j = 1; j <= m; ++j) add("eX" + std::to_string(j), 2);
  for (int j = 1; j <= m; ++j) add("eY" + std::to_string(j), 2);
  add("Z0", 3);

  const int Xt = 0, Yt = m, eZ = 2 * m, Zt = 2 * m + 1, eX = 2 * m + 2, eY = 3 * m + 2,
            Z0 = 4 * m + 2;
  const Rational half(1, 2);
  Table table;
  for (int j = 0; j < m; ++j) {
    set_bracket(table, Xt + j, Yt + j, {{Zt, Rational(1)}});
    set_bracket(table, Xt + j, eZ, {{eY + j, half}});
    set_bracket(table, Yt + j, eZ, {{eX + j, -half}});
    set_bracket(table, Xt + j, eX + j, {{Z0, Rational(-1)}});
    set_bracket(table, Yt + j, eY + j, {{Z0, Rational(-1)}});
  }
  set_bracket(table, Zt, eZ, {{Z0, Rational(1)}});
  StratifiedLieAlgebra out(names, weights, table);
  out.name_hint = "mohsen(" + std::to_string(m) + ")";
  return out;
}

StratifiedLieAlgebra truncate_step2(const StratifiedLieAlgebra& alg) {
  std::vector<int> keep;
  for (int w = 1; w <= std::min(alg.step(), 2); ++w)
    for (int i : alg.layer(w)) keep.push_back(i);
  std::sort(keep.begin(), keep.end());
  std::vector<int> pos(alg.dim(), -1);
  for (size_t p = 0; p < keep.size(); ++p) pos[keep[p]] = static_cast<int>(p);

  std::vector<std::string> names;
  std::vector<int> weights;
  for (int i : keep) {
    names.push_back(alg.basis_names()[i]);
    weights.push_back(alg.weights()[i]);
  }
  Table table;
  for (const auto& [ij, terms] : alg.bracket_table()) {
    if (pos[ij.first] < 0 || pos[ij.second] < 0) continue;
    if (alg.weights()[ij.first] != 1 || alg.weights()[ij.second] != 1) continue;
    std::vector<BracketTerm> kept;
    for (const auto& t : terms)
      if (pos[t.k] >= 0) kept.push_back({pos[t.k], t.c});
    if (!kept.empty()) table[{pos[ij.first], pos[ij.second]}] = kept;
  }
  StratifiedLieAlgebra out(names, weights, table);
  out.name_hint = alg.name_hint.empty() ? "" : alg.name_hint + ".trunc2";
  return out;
}

ValidationReport validate(const GradedHomomorphism& phi) {
  ValidationReport rep;
  const auto& S = *phi.source;
  const auto& T = *phi.target;
  const Eigen::MatrixXd& M = phi.matrix;

  if (M.rows() != T.dim() || M.cols() != S.dim()) {
    rep.checks.push_back({"shape", false, "matrix must be dim(target) x dim(source)"});
    return rep;
  }

  {  // graded: basis vectors of weight w map into the target layer of weight w
    CheckResult c{"graded"};
    for (int j = 0; j < S.dim() && c.pass; ++j)
      for (int i = 0; i < T.dim() && c.pass; ++i)
        if (std::abs(M(i, j)) > 1e-12 && T.weights()[i] != S.weights()[j]) {
          c.pass = false;
          c.detail = "entry (" + std::to_string(i) + "," + std::to_string(j) + ") mixes weights";
        }
    rep.checks.push_back(c);
  }

  {  // respects brackets on all basis pairs
    CheckResult c{"bracket_compatibility"};
    for (int i = 0; i < S.dim() && c.pass; ++i)
      for (int j = 0; j < S.dim() && c.pass; ++j) {
        Eigen::VectorXd lhs = Eigen::VectorXd::Zero(T.dim());
        for (const auto& t : S.bracket(i, j))
          lhs += boost::rational_cast<double>(t.c) * M.col(t.k);
        Eigen::VectorXd rhs = T.bracket_vec(M.col(i), M.col(j));
        if ((lhs - rhs).lpNorm<Eigen::Infinity>() > 1e-10) {
          c.pass = false;
          c.detail = "fails at pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
        }
      }
    rep.checks.push_back(c);
  }

  {  // surjective
    CheckResult c{"surjective"};
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
    qr.setThreshold(1e-10);
    if (static_cast<int>(qr.rank()) != T.dim()) {
      c.pass = false;
      c.detail = "rank " + std::to_string(qr.rank()) + " < " + std::to_string(T.dim());
    }
    rep.checks.push_back(c);
  }

  {  // induced isometry on the degree -1 layer: nonzero singular values all 1
    CheckResult c{"isometry_on_layer1"};
    Eigen::MatrixXd M1(T.layer(1).size(), S.layer(1).size());
    for (size_t a = 0; a < T.layer(1).size(); ++a)
      for (size_t b = 0; b < S.layer(1).size(); ++b) M1(a, b) = M(T.layer(1)[a], S.layer(1)[b]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M1);
    for (int i = 0; i < svd.singularValues().size(); ++i) {
      const double s = svd.singularValues()[i];
      if (s > 1e-10 && std::abs(s - 1.0) > 1e-10) {
        c.pass = false;
        c.detail = "singular value " + std::to_string(s);
        break;
      }
    }
    rep.checks.push_back(c);
  }

  return rep;
}

}  // namespace rockland
