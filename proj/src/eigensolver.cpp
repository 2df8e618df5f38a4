#include "magprop/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "magprop/errors.hpp"

namespace magprop {

namespace {

Eigen::MatrixXcd random_block(std::size_t dim, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Eigen::MatrixXcd X(dim, cols);
  for (int j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < dim; ++i) X(Eigen::Index(i), j) = cplx(nd(rng), nd(rng));
  return X;
}

Eigen::MatrixXcd orthonormalize(const Eigen::MatrixXcd& X) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(X);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(X.rows(), X.cols());
}

EigenResult dense_solve(const SparseOperator& H, int k) {
  const auto n = Eigen::Index(H.dim());
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& t : H.triplets()) A(Eigen::Index(t.row), Eigen::Index(t.col)) = t.value;
  // Symmetrise away rounding so the solver sees an exactly Hermitian matrix.
  const Eigen::MatrixXcd As = 0.5 * (A + A.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(As);
  if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed", 0, 0.0);
  EigenResult r;
  r.method = "dense";
  r.vectors = es.eigenvectors().leftCols(k);
  const Eigen::MatrixXcd R = A * r.vectors - r.vectors * es.eigenvalues().head(k).asDiagonal();
  for (int j = 0; j < k; ++j) {
    r.values.push_back(es.eigenvalues()(j));
    r.residuals.push_back(R.col(j).norm());
  }
  return r;
}

}  // namespace

void apply_block(const SparseOperator& H, const Eigen::MatrixXcd& X, Eigen::MatrixXcd& Y, bool parallel) {
  Y.resize(X.rows(), X.cols());
  const auto dim = H.dim();
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    std::span<const cplx> x(X.col(j).data(), dim);
    std::span<cplx> y(Y.col(j).data(), dim);
    if (parallel)
      H.apply(x, y);
    else
      H.apply_serial(x, y);
  }
}

double lanczos_upper_bound(const SparseOperator& H, int steps, std::uint64_t seed) {
  const auto n = Eigen::Index(H.dim());
  steps = std::max(1, std::min<int>(steps, int(n)));
  Eigen::VectorXcd v = random_block(H.dim(), 1, seed).col(0);
  v.normalize();
  Eigen::VectorXcd v_prev = Eigen::VectorXcd::Zero(n), w(n);
  std::vector<double> alpha, beta;
  double b = 0.0;
  for (int j = 0; j < steps; ++j) {
    H.apply(std::span<const cplx>(v.data(), H.dim()), std::span<cplx>(w.data(), H.dim()));
    const double a = v.dot(w).real();
    w -= a * v + b * v_prev;
    alpha.push_back(a);
    b = w.norm();
    beta.push_back(b);
    if (b < 1e-12) break;
    v_prev = v;
    v = w / b;
  }
  const int m = int(alpha.size());
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    T(i, i) = alpha[i];
    if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T, Eigen::EigenvaluesOnly);
  const double bound = es.eigenvalues()(m - 1) + beta.back();
  return std::min(bound, H.gershgorin_bounds().second);
}

EigenResult lowest_eigenpairs(const SparseOperator& H, int k, const EigenOptions& opts) {
  const auto dim = H.dim();
  if (k < 1 || std::size_t(k) > dim) throw DomainError("lowest_eigenpairs: need 1 <= k <= dim");
  if (dim <= opts.dense_limit) return dense_solve(H, k);

  const int guard = opts.guard_vectors >= 0 ? opts.guard_vectors : std::max(12, k / 2);
  const int p = int(std::min<std::size_t>(dim, std::size_t(k + guard)));
  const double upper = lanczos_upper_bound(H, 30, opts.seed ^ 0x9e37);

  Eigen::MatrixXcd X = orthonormalize(random_block(dim, p, opts.seed));
  Eigen::MatrixXcd HX, Y, Ynew, HY;
  Eigen::VectorXd theta;
  double worst = 0.0;

  auto rayleigh_ritz = [&]() {
    apply_block(H, X, HX, opts.parallel);
    Eigen::MatrixXcd G = X.adjoint() * HX;
    G = 0.5 * (G + G.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
    theta = es.eigenvalues();
    X = (X * es.eigenvectors()).eval();
    HX = (HX * es.eigenvectors()).eval();
  };

  rayleigh_ritz();
  for (int it = 1; it <= opts.max_iterations; ++it) {
    // Chebyshev filter on [theta_max, upper], scaled at theta_min (Zhou–Saad).
    const double lo = theta(p - 1), a0 = theta(0);
    const double e = 0.5 * (upper - lo), c = 0.5 * (upper + lo);
    if (!(e > 0.0)) throw ConvergenceError("lowest_eigenpairs: filter interval collapsed", it, worst);
    double sigma = e / (a0 - c);
    const double tau = 2.0 / sigma;
    Y = (HX - c * X) * (sigma / e);
    for (int d = 2; d <= opts.filter_degree; ++d) {
      const double sigma_new = 1.0 / (tau - sigma);
      apply_block(H, Y, HY, opts.parallel);
      Ynew = (HY - c * Y) * (2.0 * sigma_new / e) - (sigma * sigma_new) * X;
      X = std::move(Y);
      Y = std::move(Ynew);
      sigma = sigma_new;
    }
    X = orthonormalize(Y);
    rayleigh_ritz();

    worst = 0.0;
    std::vector<double> res(k);
    for (int j = 0; j < k; ++j) {
      res[j] = (HX.col(j) - theta(j) * X.col(j)).norm();
      worst = std::max(worst, res[j]);
    }
    if (worst <= opts.tol) {
      EigenResult r;
      r.method = "chebyshev-subspace";
      r.iterations = it;
      r.values.assign(theta.data(), theta.data() + k);
      r.vectors = X.leftCols(k);
      r.residuals = std::move(res);
      return r;
    }
  }
  throw ConvergenceError("lowest_eigenpairs: residual tolerance not reached", opts.max_iterations, worst);
}

std::vector<double> lowest_eigenvalues(const SparseOperator& H, int k, const EigenOptions& opts) {
  return lowest_eigenpairs(H, k, opts).values;
}

}  // namespace magprop
