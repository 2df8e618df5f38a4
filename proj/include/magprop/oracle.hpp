#pragma once

// Quadrature oracles built on the closed-form kernels:
//   kernel_apply                   psi(tau) = Int K(r, r'; tau) psi0(r') d^2r'
//   chapman_kolmogorov_residual    Int K(tau2) K(tau1) against K(tau1 + tau2)
//   schrodinger_residual           i hbar dK/dtau against H_r K by finite differences

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "magprop/grid.hpp"
#include "magprop/propagator.hpp"

namespace magprop {

/// Trapezoid weight of node i on an n-point axis (1/2 at the two ends).
inline double trapezoid_weight(int i, int n) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; }

/// out(r) = sum_{r'} w(r') K(r, r') psi0(r') h^2 over the source grid, evaluated at the
/// nodes of `target` (which may differ from psi0's grid). K is any callable
/// (const Vec2&, const Vec2&) -> cplx. Nodes where psi0 vanishes are skipped.
template <class Kernel>
WaveFunction kernel_apply_serial(const Kernel& K, const WaveFunction& psi0, const GridSpec& target) {
  const GridSpec& src = psi0.grid;
  const double h2 = src.spacing() * src.spacing();
  WaveFunction out{target, std::vector<cplx>(target.size(), cplx(0.0))};
  for (int ti = 0; ti < target.n; ++ti) {
    for (int tj = 0; tj < target.n; ++tj) {
      const Vec2 r = target.point(ti, tj);
      cplx acc = 0.0;
      for (int i = 0; i < src.n; ++i) {
        for (int j = 0; j < src.n; ++j) {
          const cplx v = psi0.at(i, j);
          if (v == cplx(0.0)) continue;
          acc += trapezoid_weight(i, src.n) * trapezoid_weight(j, src.n) * K(r, src.point(i, j)) * v;
        }
      }
      out.at(ti, tj) = h2 * acc;
    }
  }
  return out;
}

/// OpenMP version of kernel_apply_serial, parallel over target nodes; bit-identical
/// because each target value is accumulated in the same order.
template <class Kernel>
WaveFunction kernel_apply(const Kernel& K, const WaveFunction& psi0, const GridSpec& target) {
  const GridSpec& src = psi0.grid;
  const double h2 = src.spacing() * src.spacing();
  WaveFunction out{target, std::vector<cplx>(target.size(), cplx(0.0))};
  const long total = long(target.n) * target.n;
#pragma omp parallel for schedule(dynamic, 4)
  for (long t = 0; t < total; ++t) {
    const int ti = int(t / target.n), tj = int(t % target.n);
    const Vec2 r = target.point(ti, tj);
    cplx acc = 0.0;
    for (int i = 0; i < src.n; ++i) {
      for (int j = 0; j < src.n; ++j) {
        const cplx v = psi0.at(i, j);
        if (v == cplx(0.0)) continue;
        acc += trapezoid_weight(i, src.n) * trapezoid_weight(j, src.n) * K(r, src.point(i, j)) * v;
      }
    }
    out.at(ti, tj) = h2 * acc;
  }
  return out;
}

struct ApplyOptions {
  /// tau -> tau (1 - i eps) when Re(tau) > 0, so the oscillatory quadrature converges.
  double damping = 1e-3;
  bool parallel = true;
};

/// Convenience wrapper: builds the transverse kernel for `system` at the damped time and
/// applies it on psi0's own grid or on `target`.
WaveFunction kernel_apply(System system, const PhysParams& p, const GaugeField& g,
                          const WaveFunction& psi0, cplx tau, const ApplyOptions& opts = {});
WaveFunction kernel_apply(System system, const PhysParams& p, const GaugeField& g,
                          const WaveFunction& psi0, cplx tau, const GridSpec& target,
                          const ApplyOptions& opts = {});

/// tau (1 - i eps) if Re(tau) > 0, else tau.
cplx damped_time(cplx tau, double eps);

/// Frequency whose sine sets the caustics of `system` (0 for free).
double kernel_frequency(System system, const PhysParams& p);
/// Length scale: magnetic length (landau), sqrt(hbar/(m Omega)) (osc_b), sqrt(hbar tau/m) (free).
double kernel_length(System system, const PhysParams& p, double tau);

struct CompositionOptions {
  double damping = 1e-3;
  /// Half-width of the square box in units of kernel_length.
  double box_lengths = 8.0;
  int nodes = 241;
  /// The intermediate point runs over e^{i angle} s, s in the real box. The
  /// integrand is entire in r'' and decays along this ray, so the rotation leaves
  /// the integral unchanged while removing the oscillation.
  double contour_angle = 0.7853981633974483;
  bool parallel = true;
};

/// |Int K(r, r''; tau2) K(r'', r'; tau1) d^2r'' - K(r, r'; tau1 + tau2)| / |K(r, r'; tau1 + tau2)|
/// at damped times. DomainError unless tau1, tau2 > 0 and f (tau1 + tau2) < pi, and for
/// custom gauges (the contour needs complex coordinates).
double chapman_kolmogorov_residual(System system, const PhysParams& p, const GaugeField& g,
                                   const Vec2& r, const Vec2& r_prime, double tau1, double tau2,
                                   const CompositionOptions& opts = {});

struct ResidualQuery {
  Vec2 r;
  Vec2 r_prime;
  double tau;
};

struct ResidualOptions {
  /// Spatial step relative to kernel_length.
  double hx_rel = 1e-3;
  /// Time step relative to 1/f (or tau for the free system).
  double htau_rel = 1e-4;
  double min_abs_sin = 0.05;
};

/// |i hbar dK/dtau - H K| / (|i hbar dK/dtau| + |H K|) with H acting on r, by central
/// differences. DomainError when |sin(f tau)| < min_abs_sin.
double schrodinger_residual(System system, const PhysParams& p, const GaugeField& g,
                            const ResidualQuery& q, const ResidualOptions& opts = {});
/// Maximum over the query set.
double schrodinger_residual(System system, const PhysParams& p, const GaugeField& g,
                            std::span<const ResidualQuery> queries, const ResidualOptions& opts = {});

/// Random queries with r, r' uniform in [-span, span]^2 and f tau uniform in
/// [0.2, 2.9] (tau in [0.2, 2.9] for free), rejecting |sin| < 0.05. Deterministic in seed.
std::vector<ResidualQuery> random_residual_queries(System system, const PhysParams& p, int count,
                                                   std::uint64_t seed, double span = 1.5);

}  // namespace magprop
