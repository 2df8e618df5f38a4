#include "magprop/evolution.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>

#include "magprop/errors.hpp"

namespace magprop {

namespace {

double spectral_radius_bound(const SparseOperator& H) {
  const auto [lo, hi] = H.gershgorin_bounds();
  return std::max(std::abs(lo), std::abs(hi));
}

}  // namespace

int crank_nicolson_min_steps(const SparseOperator& H, double tau, double hbar,
                             const CrankNicolsonOptions& opts) {
  if (!(tau > 0.0)) throw DomainError("crank_nicolson_min_steps: tau must be positive");
  const double need = tau * spectral_radius_bound(H) / (hbar * opts.max_phase_per_step);
  return std::max(1, int(std::floor(need)) + 1);
}

WaveFunction evolve_crank_nicolson(const SparseOperator& H, const WaveFunction& psi0, double tau,
                                   int steps, double hbar, const CrankNicolsonOptions& opts) {
  if (!(tau > 0.0)) throw DomainError("evolve_crank_nicolson: tau must be positive");
  if (steps < 1) throw DomainError("evolve_crank_nicolson: steps must be >= 1");
  if (!(hbar > 0.0)) throw DomainError("evolve_crank_nicolson: hbar must be positive");
  if (H.dim() != psi0.grid.interior_size())
    throw DomainError("evolve_crank_nicolson: operator and grid sizes differ");
  const double dt = tau / steps;
  const double phase = dt * spectral_radius_bound(H) / hbar;
  if (!(phase < opts.max_phase_per_step))
    throw DomainError("evolve_crank_nicolson: time step too coarse, dt*E_max/hbar = " +
                      std::to_string(phase));

  using SpMat = Eigen::SparseMatrix<cplx>;
  const auto n = Eigen::Index(H.dim());
  const cplx half(0.0, 0.5 * dt / hbar);
  std::vector<Eigen::Triplet<cplx>> lt, rt;
  lt.reserve(H.nnz() + H.dim());
  rt.reserve(H.nnz() + H.dim());
  for (Eigen::Index i = 0; i < n; ++i) {
    lt.emplace_back(i, i, 1.0);
    rt.emplace_back(i, i, 1.0);
  }
  for (const auto& t : H.triplets()) {
    lt.emplace_back(Eigen::Index(t.row), Eigen::Index(t.col), half * t.value);
    rt.emplace_back(Eigen::Index(t.row), Eigen::Index(t.col), -half * t.value);
  }
  SpMat A(n, n), Bm(n, n);
  A.setFromTriplets(lt.begin(), lt.end());
  Bm.setFromTriplets(rt.begin(), rt.end());
  A.makeCompressed();

  Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(A);
  if (lu.info() != Eigen::Success) throw LinearSolveError("evolve_crank_nicolson: LU failed: " + lu.lastErrorMessage());

  const auto v0 = to_interior(psi0);
  Eigen::VectorXcd x = Eigen::Map<const Eigen::VectorXcd>(v0.data(), n);
  for (int s = 0; s < steps; ++s) {
    const Eigen::VectorXcd rhs = Bm * x;
    x = lu.solve(rhs);
    if (lu.info() != Eigen::Success) throw LinearSolveError("evolve_crank_nicolson: solve failed");
  }
  return from_interior(psi0.grid, std::span<const cplx>(x.data(), std::size_t(n)));
}

}  // namespace magprop
