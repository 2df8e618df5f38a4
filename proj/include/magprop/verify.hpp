#pragma once

// Self-check suites behind `magprop verify`. Every check reports the measured
// quantity, the tolerance it is held to and the verdict; nothing here decides
// what is "close enough" after the fact.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "magprop/grid.hpp"

namespace magprop {

enum class Suite { algebra, gauge, pde, compose, delta, spectrum, all };

std::string_view to_string(Suite s);
std::optional<Suite> parse_suite(std::string_view text);

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool all_pass() const;
};

struct VerifyConfig {
  std::uint64_t seed = 20240617;
  /// Grid for the eigenvalue and Crank–Nicolson checks.
  GridSpec grid{12.0, 96};
  /// Source grid points per axis for the short-time kernel_apply check.
  int delta_source_n = 897;
};

std::vector<SuiteReport> run_verify(Suite suite, const VerifyConfig& cfg = {});
SuiteReport run_suite(Suite suite, const VerifyConfig& cfg);

/// Grid Landau-level analysis shared by the spectrum suite and the CLI oracle column.
struct LandauGridSummary {
  std::vector<double> eigenvalues;
  std::vector<double> frame_mass;
  /// Mean of frame-filtered eigenvalues (<= 1% mass in the outer 10% frame) within
  /// +-0.2 hbar wc of (n + 1/2) hbar wc, for n = 0 .. levels-1. NaN when no state qualifies.
  std::vector<double> cluster_means;
  std::vector<int> cluster_bulk_states;
  /// Unfiltered eigenvalue count within +-0.2 hbar wc of hbar wc / 2.
  int lowest_window_count = 0;
  /// |eB| / (2 pi hbar) * (0.8 L)^2.
  double expected_window_count = 0.0;
};

/// Eigenvalue count needed to reach energy e on `grid` (Weyl estimate plus margin).
int weyl_count(const PhysParams& p, const GridSpec& grid, double e);

/// Diagonalises the Landau grid Hamiltonian. k <= 0 picks the Weyl count for the top
/// window; DomainError when the computed states do not reach past it.
LandauGridSummary landau_grid_summary(const PhysParams& p, const GaugeField& g, const GridSpec& grid,
                                      int levels = 2, int k = 0);

}  // namespace magprop
