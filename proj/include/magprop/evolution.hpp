#pragma once

// Crank–Nicolson time stepping on the grid Hamiltonian:
//   (1 + i dt H / 2 hbar) psi_{k+1} = (1 - i dt H / 2 hbar) psi_k.
// The left-hand matrix is factored once (sparse LU) and reused for every step.

#include "magprop/grid.hpp"

namespace magprop {

struct CrankNicolsonOptions {
  /// Require dt * E_max / hbar below this, E_max being the Gershgorin bound on |spectrum|.
  double max_phase_per_step = 0.5;
};

/// Minimal step count that satisfies the resolution precondition for `tau`.
int crank_nicolson_min_steps(const SparseOperator& H, double tau, double hbar,
                             const CrankNicolsonOptions& opts = {});

/// Evolves psi0 (boundary values ignored, Dirichlet walls) by real time tau in `steps` steps.
/// DomainError when tau <= 0, steps < 1 or the step is too coarse; LinearSolveError when
/// the factorisation fails.
WaveFunction evolve_crank_nicolson(const SparseOperator& H, const WaveFunction& psi0, double tau,
                                   int steps, double hbar = 1.0,
                                   const CrankNicolsonOptions& opts = {});

}  // namespace magprop
