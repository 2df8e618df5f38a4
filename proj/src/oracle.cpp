#include "magprop/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "magprop/errors.hpp"

namespace magprop {

namespace {

constexpr cplx kI{0.0, 1.0};

}  // namespace

cplx damped_time(cplx tau, double eps) { return tau.real() > 0.0 ? tau * cplx(1.0, -eps) : tau; }

double kernel_frequency(System system, const PhysParams& p) {
  switch (system) {
    case System::free: return 0.0;
    case System::landau: return std::abs(p.omega());
    case System::osc_b: return p.Omega();
  }
  return 0.0;
}

double kernel_length(System system, const PhysParams& p, double tau) {
  switch (system) {
    case System::free: return std::sqrt(p.hbar * std::abs(tau) / p.m);
    case System::landau: return p.magnetic_length();
    case System::osc_b: return std::sqrt(p.hbar / (p.m * p.Omega()));
  }
  return 1.0;
}

WaveFunction kernel_apply(System system, const PhysParams& p, const GaugeField& g,
                          const WaveFunction& psi0, cplx tau, const GridSpec& target,
                          const ApplyOptions& opts) {
  psi0.grid.validate();
  target.validate();
  if (psi0.values.size() != psi0.grid.size()) throw DomainError("kernel_apply: psi0 size mismatch");
  const TransverseKernel K(system, p, g, damped_time(tau, opts.damping));
  return opts.parallel ? kernel_apply(K, psi0, target) : kernel_apply_serial(K, psi0, target);
}

WaveFunction kernel_apply(System system, const PhysParams& p, const GaugeField& g,
                          const WaveFunction& psi0, cplx tau, const ApplyOptions& opts) {
  return kernel_apply(system, p, g, psi0, tau, psi0.grid, opts);
}

double chapman_kolmogorov_residual(System system, const PhysParams& p, const GaugeField& g,
                                   const Vec2& r, const Vec2& r_prime, double tau1, double tau2,
                                   const CompositionOptions& opts) {
  p.validate();
  if (!(tau1 > 0.0) || !(tau2 > 0.0))
    throw DomainError("chapman_kolmogorov_residual: both times must be positive");
  const double f = kernel_frequency(system, p);
  if (f > 0.0 && !(f * (tau1 + tau2) < std::numbers::pi))
    throw DomainError("chapman_kolmogorov_residual: tau1 + tau2 leaves the first caustic window");
  if (system != System::free && !g.is_builtin())
    throw DomainError("chapman_kolmogorov_residual: custom gauges cannot be continued off the real plane");
  if (opts.nodes < 3) throw DomainError("chapman_kolmogorov_residual: need at least 3 nodes");

  const TransverseKernel k1(system, p, g, damped_time(tau1, opts.damping));
  const TransverseKernel k2(system, p, g, damped_time(tau2, opts.damping));
  const TransverseKernel k12(system, p, g, damped_time(tau1 + tau2, opts.damping));

  // Along r'' = e^{i theta} s the r''^2 term becomes i (a1 + a2) e^{2 i theta} |s|^2.
  const cplx rot = std::exp(kI * opts.contour_angle);
  const cplx quad = kI * (k1.quadratic_coefficient() + k2.quadratic_coefficient()) * rot * rot;
  const double decay = -quad.real();
  if (!(decay > 0.0))
    throw DomainError("chapman_kolmogorov_residual: integrand does not decay along the contour");
  const double ell = kernel_length(system, p, tau1 + tau2);
  const double base = 0.5 * opts.box_lengths * ell;
  const double half = std::max(base, std::sqrt(40.0 / decay) + std::max(norm(r), norm(r_prime)));
  const int nodes = std::max(opts.nodes, int(std::ceil(opts.nodes * half / base)) | 1);
  const double h = 2.0 * half / (nodes - 1);

  const CVec2 rc = complexify(r), rpc = complexify(r_prime);
  std::vector<cplx> rows(nodes);
#pragma omp parallel for schedule(static) if (opts.parallel)
  for (int i = 0; i < nodes; ++i) {
    const double s1 = -half + i * h;
    cplx acc = 0.0;
    for (int j = 0; j < nodes; ++j) {
      const double s2 = -half + j * h;
      const CVec2 mid{rot * s1, rot * s2};
      acc += trapezoid_weight(j, nodes) * k2(rc, mid) * k1(mid, rpc);
    }
    rows[i] = trapezoid_weight(i, nodes) * acc;
  }
  cplx total = 0.0;
  for (const cplx& v : rows) total += v;
  total *= h * h * rot * rot;
  const cplx exact = k12(r, r_prime);
  return std::abs(total - exact) / std::abs(exact);
}

double schrodinger_residual(System system, const PhysParams& p, const GaugeField& g,
                            const ResidualQuery& q, const ResidualOptions& opts) {
  p.validate();
  if (!(q.tau > 0.0)) throw DomainError("schrodinger_residual: tau must be positive");
  const double f = kernel_frequency(system, p);
  if (f > 0.0 && std::abs(std::sin(f * q.tau)) < opts.min_abs_sin)
    throw DomainError("schrodinger_residual: query too close to a caustic");
  const double hx = opts.hx_rel * kernel_length(system, p, q.tau);
  const double ht = f > 0.0 ? opts.htau_rel / f : opts.htau_rel * q.tau;

  const TransverseKernel K(system, p, g, q.tau);
  const TransverseKernel Kp(system, p, g, q.tau + ht);
  const TransverseKernel Km(system, p, g, q.tau - ht);
  const Vec2 r = q.r, rp = q.r_prime;
  const Vec2 e1{hx, 0.0}, e2{0.0, hx};

  const cplx k0 = K(r, rp);
  const cplx kx1p = K(r + e1, rp), kx1m = K(r - e1, rp);
  const cplx kx2p = K(r + e2, rp), kx2m = K(r - e2, rp);
  const cplx d1 = (kx1p - kx1m) / (2.0 * hx), d2 = (kx2p - kx2m) / (2.0 * hx);
  const cplx lap = (kx1p + kx1m + kx2p + kx2m - 4.0 * k0) / (hx * hx);
  const cplx dt = (Kp(r, rp) - Km(r, rp)) / (2.0 * ht);

  // Kernels for the free system carry no gauge factor, so A = 0 there.
  Vec2 a{0.0, 0.0};
  double div_a = 0.0;
  if (system != System::free) {
    a = g.potential(r);
    if (!g.is_builtin()) {
      div_a = (g.potential(r + e1).x1 - g.potential(r - e1).x1 + g.potential(r + e2).x2 -
               g.potential(r - e2).x2) /
              (2.0 * hx);
    }
  }
  const double hb = p.hbar, e = p.e, m = p.m;
  const cplx hk = (-hb * hb * lap + 2.0 * kI * hb * e * (a.x1 * d1 + a.x2 * d2) + kI * hb * e * div_a * k0 +
                   e * e * norm2(a) * k0) /
                      (2.0 * m) +
                  scalar_potential(system, p, r) * k0;
  const cplx lhs = kI * hb * dt;
  const double denom = std::abs(lhs) + std::abs(hk);
  return denom > 0.0 ? std::abs(lhs - hk) / denom : 0.0;
}

double schrodinger_residual(System system, const PhysParams& p, const GaugeField& g,
                            std::span<const ResidualQuery> queries, const ResidualOptions& opts) {
  double worst = 0.0;
  for (const auto& q : queries) worst = std::max(worst, schrodinger_residual(system, p, g, q, opts));
  return worst;
}

std::vector<ResidualQuery> random_residual_queries(System system, const PhysParams& p, int count,
                                                   std::uint64_t seed, double span) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(-span, span), phase(0.2, 2.9);
  const double f = kernel_frequency(system, p);
  std::vector<ResidualQuery> out;
  out.reserve(std::size_t(std::max(count, 0)));
  while (int(out.size()) < count) {
    ResidualQuery q;
    q.r = {pos(rng), pos(rng)};
    q.r_prime = {pos(rng), pos(rng)};
    const double ph = phase(rng);
    q.tau = f > 0.0 ? ph / f : ph;
    if (f > 0.0 && std::abs(std::sin(ph)) < 0.05) continue;
    out.push_back(q);
  }
  return out;
}

}  // namespace magprop
