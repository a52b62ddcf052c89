#include "rockland/kirillov.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rockland {

namespace {

// Eigenvalues of the symmetric PSD matrix -omega^2, clamped at zero.
Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> neg_omega_sq_eig(const Eigen::MatrixXd& omega) {
  Eigen::MatrixXd s = -omega * omega;
  s = 0.5 * (s + s.transpose());
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(s);
}

}  // namespace

KirillovData kirillov_form(const StratifiedLieAlgebra& alg, const Eigen::VectorXd& xi,
                           double rank_rel_tol) {
  const auto& l1 = alg.layer(1);
  const auto& l2 = alg.layer(2);
  if (xi.size() != static_cast<Eigen::Index>(l2.size()))
    throw std::invalid_argument("xi must have length dim g_{-2}");

  const int n = static_cast<int>(l1.size());
  KirillovData out;
  out.xi = xi;
  out.omega = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (const auto& t : alg.bracket(l1[a], l1[b]))
        for (size_t l = 0; l < l2.size(); ++l)
          if (t.k == l2[l]) out.omega(a, b) += xi[l] * boost::rational_cast<double>(t.c);

  auto eig = neg_omega_sq_eig(out.omega);
  Eigen::VectorXd lam = eig.eigenvalues().cwiseMax(0.0);
  Eigen::VectorXd sv = lam.cwiseSqrt();  // singular values of omega
  out.abs_omega = eig.eigenvectors() * sv.asDiagonal() * eig.eigenvectors().transpose();

  const double smax = sv.size() ? sv.maxCoeff() : 0.0;
  const double cut = rank_rel_tol * (smax > 0 ? smax : 1.0);
  out.rank = static_cast<int>((sv.array() > cut).count());
  out.rank -= out.rank % 2;  // antisymmetric, rank is even

  std::vector<double> svs(sv.data(), sv.data() + sv.size());
  std::sort(svs.begin(), svs.end(), std::greater<>());
  for (int j = 0; j + 1 < static_cast<int>(svs.size()) && svs[j] > cut; j += 2)
    out.mu.push_back(0.5 * (svs[j] + svs[j + 1]));

  if (n % 2 == 0) out.pfaffian = pfaffian(out.omega);
  return out;
}

double pfaffian(const Eigen::MatrixXd& omega, double asym_tol) {
  const int n = static_cast<int>(omega.rows());
  if (omega.cols() != n) throw std::invalid_argument("pfaffian: square matrix required");
  if (n % 2 != 0) throw std::invalid_argument("pfaffian: even dimension required");
  const double scale = std::max(1.0, omega.cwiseAbs().maxCoeff());
  if ((omega + omega.transpose()).cwiseAbs().maxCoeff() > asym_tol * scale)
    throw std::invalid_argument("pfaffian: matrix not antisymmetric");
  if (n == 0) return 1.0;

  // Householder reduction to skew-tridiagonal form; each reflector has
  // determinant -1, so the Pfaffian picks up the product of the signs.
  Eigen::MatrixXd A = 0.5 * (omega - omega.transpose());
  double sign = 1.0;
  for (int k = 0; k < n - 2; ++k) {
    Eigen::VectorXd x = A.col(k).segment(k + 1, n - k - 1);
    const double alpha = x.norm();
    if (alpha < 1e-300) continue;
    Eigen::VectorXd v = x;
    v[0] += (x[0] >= 0 ? alpha : -alpha);
    const double vn2 = v.squaredNorm();
    if (vn2 < 1e-300) continue;
    // Apply P = I - 2 v v^T / |v|^2 on rows/cols k+1..n-1.
    auto block = A.block(k + 1, 0, n - k - 1, n);
    block -= (2.0 / vn2) * v * (v.transpose() * block);
    auto cblock = A.block(0, k + 1, n, n - k - 1);
    cblock -= (2.0 / vn2) * (cblock * v) * v.transpose();
    sign = -sign;
    A = 0.5 * (A - A.transpose());
  }
  double pf = sign;
  for (int k = 0; k < n - 1; k += 2) pf *= A(k, k + 1);
  return pf;
}

bool flat_orbit_test(const StratifiedLieAlgebra& alg, const Eigen::VectorXd& xi,
                     double rank_rel_tol) {
  if (alg.step() != 2 && !(alg.step() == 1 && alg.n2() == 0))
    throw std::invalid_argument("flat_orbit_test: step-2 algebra required (truncate first)");
  if (!alg.center_is_layer(2))
    throw std::invalid_argument(
        "flat_orbit_test: centre exceeds g_{-2}; use flat_orbit_reduced for the general centre");
  KirillovData kd = kirillov_form(alg, xi, rank_rel_tol);
  return kd.rank == alg.n1();
}

Eigen::MatrixXd central_layer1_directions(const StratifiedLieAlgebra& alg) {
  const int n = alg.n1();
  const int m = alg.n2();
  Eigen::MatrixXd stacked(n * std::max(m, 1), n);
  stacked.setZero();
  for (int l = 0; l < m; ++l) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
    e[l] = 1.0;
    stacked.middleRows(l * n, n) = kirillov_form(alg, e).omega;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = 1e-10 * std::max(1.0, sv.size() ? sv[0] : 0.0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > cut) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

bool flat_orbit_reduced(const StratifiedLieAlgebra& alg, const Eigen::VectorXd& xi,
                        double rank_rel_tol) {
  KirillovData kd = kirillov_form(alg, xi, rank_rel_tol);
  Eigen::MatrixXd kerdirs = central_layer1_directions(alg);
  const int reduced = alg.n1() - static_cast<int>(kerdirs.cols());
  return kd.rank == reduced;
}

FlatOrbitScan scan_flat_orbits(const StratifiedLieAlgebra& alg, int samples,
                               double rank_rel_tol) {
  FlatOrbitScan scan;
  scan.reduced_dim = alg.n1() - static_cast<int>(central_layer1_directions(alg).cols());
  if (alg.n2() == 0 || scan.reduced_dim % 2 != 0) return scan;
  for (const auto& xi : sphere_samples(alg.n2(), samples)) {
    if (kirillov_form(alg, xi, rank_rel_tol).rank == scan.reduced_dim) {
      scan.exists = true;
      scan.witness = xi;
      return scan;
    }
  }
  return scan;
}

double harmonic_bottom(const StratifiedLieAlgebra& alg, const Eigen::VectorXd& xi) {
  if (xi.norm() == 0.0) throw std::invalid_argument("harmonic_bottom: xi must be nonzero");
  return 0.5 * kirillov_form(alg, xi).abs_omega.trace();
}

std::vector<double> harmonic_spectrum(const StratifiedLieAlgebra& alg, const Eigen::VectorXd& xi,
                                      int kmax, double rank_rel_tol) {
  if (kmax < 0) throw std::invalid_argument("harmonic_spectrum: kmax must be >= 0");
  KirillovData kd = kirillov_form(alg, xi, rank_rel_tol);
  const double bottom = 0.5 * kd.abs_omega.trace();
  const auto& mu = kd.mu;
  if (mu.empty()) return {bottom};  // fully degenerate xi: ladder collapses
  // Ladder values bottom + 2 sum_j n_j mu_j over multi-indices |n| <= kmax.
  std::vector<double> values;
  auto rec = [&](auto&& self, size_t j, int budget, double acc) -> void {
    if (j + 1 == mu.size()) {
      for (int q = 0; q <= budget; ++q) values.push_back(acc + 2.0 * q * mu[j]);
      return;
    }
    for (int q = 0; q <= budget; ++q) self(self, j + 1, budget - q, acc + 2.0 * q * mu[j]);
  };
  rec(rec, 0, kmax, bottom);
  std::sort(values.begin(), values.end());
  return values;
}

std::vector<Eigen::VectorXd> sphere_samples(int m, int count) {
  std::vector<Eigen::VectorXd> out;
  if (m < 1 || count < 1) return out;
  if (m == 1) {
    out.push_back(Eigen::VectorXd::Constant(1, 1.0));
    out.push_back(Eigen::VectorXd::Constant(1, -1.0));
    return out;
  }
  if (m == 2) {
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
      const double th = 2.0 * std::numbers::pi * i / count;
      Eigen::VectorXd v(2);
      v << std::cos(th), std::sin(th);
      out.push_back(v);
    }
    return out;
  }
  if (m == 3) {
    // Fibonacci sphere.
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double th = 2.0 * std::numbers::pi * i / golden;
      Eigen::VectorXd v(3);
      v << r * std::cos(th), r * std::sin(th), z;
      out.push_back(v);
    }
    return out;
  }
  // Halton lattice through the inverse normal map, then normalized.
  auto halton = [](int index, int base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
      f /= base;
      r += f * (index % base);
      index /= base;
    }
    return r;
  };
  auto inv_normal = [](double p) {
    // Acklam-style rational approximation, adequate for sampling.
    p = std::min(std::max(p, 1e-12), 1.0 - 1e-12);
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double dd[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1 - plow;
    double q, r;
    if (p < plow) {
      q = std::sqrt(-2 * std::log(p));
      return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
             ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1);
    }
    if (p > phigh) {
      q = std::sqrt(-2 * std::log(1 - p));
      return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
             ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1);
    }
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  };
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    Eigen::VectorXd v(m);
    for (int dmn = 0; dmn < m; ++dmn) v[dmn] = inv_normal(halton(i + 1, primes[dmn % 12]));
    const double nrm = v.norm();
    if (nrm > 1e-12) out.push_back(v / nrm);
  }
  return out;
}

std::vector<Eigen::VectorXd> sphere_neighborhood(const Eigen::VectorXd& x, double radius,
                                                 int count) {
  std::vector<Eigen::VectorXd> out;
  const int m = static_cast<int>(x.size());
  if (m == 1) return {x};
  // Deterministic offsets along coordinate directions projected to the
  // tangent space, at a few radii.
  for (int axis = 0; axis < m; ++axis)
    for (int s = -count; s <= count; ++s) {
      if (s == 0) continue;
      Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
      e[axis] = 1.0;
      Eigen::VectorXd t = e - e.dot(x) * x;
      if (t.norm() < 1e-12) continue;
      Eigen::VectorXd y = x + radius * (static_cast<double>(s) / count) * t.normalized();
      out.push_back(y.normalized());
    }
  return out;
}

}  // namespace rockland
