#pragma once

// Lowest eigenpairs of a Hermitian SparseOperator.
//
// Small problems go to a dense Hermitian solver. Larger ones use
// Chebyshev-filtered block subspace iteration: a short Lanczos run bounds the
// top of the spectrum, a Chebyshev polynomial damps everything above the
// current block's largest Ritz value, and Rayleigh–Ritz on the filtered block
// extracts the approximations. A block method is used because Landau levels on
// a grid come in tight clusters that a single Krylov vector resolves poorly.

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "magprop/grid.hpp"

namespace magprop {

struct EigenOptions {
  /// Absolute residual ||H v - lambda v|| required for every returned pair (||v|| = 1).
  double tol = 1e-8;
  int max_iterations = 400;
  /// Extra block vectors beyond the k requested; < 0 picks max(12, k/2).
  int guard_vectors = -1;
  int filter_degree = 16;
  /// Dimension at or below which the dense solver is used.
  std::size_t dense_limit = 1500;
  std::uint64_t seed = 0x5eed;
  bool parallel = true;
};

struct EigenResult {
  std::vector<double> values;
  /// dim x k, columns orthonormal.
  Eigen::MatrixXcd vectors;
  std::vector<double> residuals;
  int iterations = 0;
  std::string method;
};

/// Throws ConvergenceError (with the worst residual) when max_iterations is exhausted,
/// DomainError for k < 1 or k > dim.
EigenResult lowest_eigenpairs(const SparseOperator& H, int k, const EigenOptions& opts = {});
std::vector<double> lowest_eigenvalues(const SparseOperator& H, int k, const EigenOptions& opts = {});

/// Y = H X column by column.
void apply_block(const SparseOperator& H, const Eigen::MatrixXcd& X, Eigen::MatrixXcd& Y,
                 bool parallel = true);

/// Upper bound on the spectrum from `steps` Lanczos iterations (largest Ritz value
/// plus the last off-diagonal), capped by the Gershgorin bound.
double lanczos_upper_bound(const SparseOperator& H, int steps, std::uint64_t seed);

}  // namespace magprop
