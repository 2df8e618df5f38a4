#pragma once

// Spectral data read off the kernels: Euclidean traces, Landau levels with
// their degeneracy per area, the oscillator-in-field levels
//
//   E_nl = (l + n + 1) hbar W + (l - n) hbar w,   l, n = 0, 1, ...
//
// and the energy Green function G(E) = sum_{l,n} 1/(E - E_nl).

#include <optional>
#include <vector>

#include "magprop/core_algebra.hpp"
#include "magprop/geometry.hpp"

namespace magprop {

struct SpectrumEntry {
  /// {n} for Landau levels, {l, n} for the oscillator in a field.
  std::vector<int> labels;
  double energy = 0.0;
  std::optional<double> degeneracy_per_area;
};

struct SpectrumTable {
  std::vector<SpectrumEntry> entries;

  void sort_by_energy();
  std::vector<double> energies() const;
};

/// m|w| / (2 pi hbar sinh(hbar beta |w|)) for tau = -i hbar beta. DomainError for
/// beta <= 0 or B = 0.
double partition_function_per_area(double beta, const PhysParams& p);

/// Geometric-series form (|eB|/2 pi hbar) e^{-beta hbar wc/2} / (1 - e^{-beta hbar wc}).
double partition_function_per_area_geometric(double beta, const PhysParams& p);

/// E_n = (n + 1/2) hbar |wc|, g_n/A = |eB|/(2 pi hbar), n = 0..n_max.
SpectrumTable landau_levels(int n_max, const PhysParams& p);

/// One entry per (l, n) with l <= l_max, n <= n_max, ordered l-major. DomainError for Omega = 0.
SpectrumTable energy_levels_osc_b(int l_max, int n_max, const PhysParams& p);

/// The `count` lowest E_nl in ascending order.
std::vector<double> lowest_levels_osc_b(int count, const PhysParams& p);

/// Tr K_transverse = 1 / (2 [cos(W t) - cos(w t)]). DegenerateTraceError when
/// omega0 = 0 or the denominator vanishes.
cplx trace_transverse_osc_b(cplx tau, const PhysParams& p);

/// Same trace written with cos(Wt) - cos(wt) = -2 sin((W+w)t/2) sin((W-w)t/2).
cplx trace_transverse_osc_b_product(cplx tau, const PhysParams& p);

/// sum_{l,n} e^{-beta E_nl}, summed level by level until the remaining tail
/// falls below 1e-14 of the accumulated value.
double spectral_partition_sum_osc_b(double beta, const PhysParams& p);

/// Spectral weight at E - i eps restricted to levels below e_cut:
/// Im G(E - i eps) = sum eps / ((E - E_nl)^2 + eps^2).
double green_spectral_weight(double energy, double epsilon, const std::vector<double>& levels);

/// G(E - i eps) over the same truncated level list.
cplx green_function(double energy, double epsilon, const std::vector<double>& levels);

struct PoleEstimate {
  double energy;
  double height;
};

struct PoleScanOptions {
  int prescan_points = 2000;
  /// Bound on the peak shift caused by truncating the level sum, relative to epsilon.
  double shift_tolerance = 1e-3;
  /// Upper limit on retained levels before TruncationError.
  std::size_t max_levels = 5'000'000;
  bool parallel = true;
};

/// Locates local maxima of Im G(E - i eps) on [e_min, e_max]: uniform pre-scan, then
/// golden-section refinement. TruncationError when the level tail cannot be bounded
/// (omega0 = 0 gives infinitely degenerate levels).
std::vector<PoleEstimate> green_function_pole_scan(double e_min, double e_max, double epsilon,
                                                   const PhysParams& p,
                                                   const PoleScanOptions& opts = {});

/// Levels E_nl <= e_cut in ascending order.
std::vector<double> levels_below_osc_b(double e_cut, const PhysParams& p, std::size_t max_levels);

}  // namespace magprop
