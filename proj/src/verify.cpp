#include "magprop/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "magprop/eigensolver.hpp"
#include "magprop/errors.hpp"
#include "magprop/evolution.hpp"
#include "magprop/oracle.hpp"
#include "magprop/propagator.hpp"
#include "magprop/quadrature.hpp"
#include "magprop/spectrum.hpp"

namespace magprop {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

class Checks {
 public:
  explicit Checks(std::string suite) { report_.suite = std::move(suite); }

  void at_most(std::string name, double value, double tol, std::string detail = {}) {
    report_.checks.push_back({std::move(name), value, tol, std::isfinite(value) && value <= tol, std::move(detail)});
  }
  /// Records a failure when fn throws, so one broken check does not hide the rest.
  void guarded(const std::string& name, double tol, const std::function<double()>& fn) {
    try {
      at_most(name, fn(), tol);
    } catch (const std::exception& ex) {
      report_.checks.push_back({name, std::nan(""), tol, false, ex.what()});
    }
  }
  SuiteReport finish(double seconds) {
    report_.seconds = seconds;
    return std::move(report_);
  }

 private:
  SuiteReport report_;
};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); }
  Vec2 point(double span) { return {uniform(-span, span), uniform(-span, span)}; }
};

// ---------------------------------------------------------------- algebra

void algebra_suite(Checks& c, std::uint64_t seed) {
  const Mat2 C = c_matrix();
  c.at_most("C*C = -I", max_abs_diff(C * C, -Mat2::identity()), 0.0);
  c.at_most("C^T = -C", max_abs_diff(C.transpose(), -C), 0.0);

  // exp(0.3 C) by its Taylor series.
  Mat2 series = Mat2::identity(), term = Mat2::identity();
  for (int k = 1; k < 12; ++k) {
    term = (0.3 / k) * (term * C);
    series = series + term;
  }
  c.at_most("c_exp(0.3) vs 12-term series", max_abs_diff(c_exp(0.3), series), 1e-12);

  Rng rng(seed);
  double group = 0.0, rotation = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double a = rng.uniform(-10, 10), b = rng.uniform(-10, 10);
    group = std::max(group, max_abs_diff(c_exp(a) * c_exp(b), c_exp(a + b)));
    rotation = std::max(rotation, max_abs_diff(c_exp(a) * c_exp(a).transpose(), Mat2::identity()));
  }
  c.at_most("c_exp group law", group, 1e-12);
  c.at_most("c_exp orthogonal", rotation, 1e-14);

  double uv = 0.0, trace = 0.0, det = 0.0, comm = 0.0, deriv = 0.0;
  int samples = 0;
  while (samples < 100) {
    PhysParams p{rng.uniform(0.5, 2.0), rng.uniform(-1.5, 1.5), 1.0, rng.uniform(-2.0, 2.0), rng.uniform(0.1, 2.0)};
    const double tau = rng.uniform(0.05, 5.0);
    const double W = p.Omega(), w = p.omega();
    const double s = std::sin(W * tau);
    if (std::abs(s) < 1e-3) continue;
    ++samples;
    const Mat2 mm = mat_m(tau, p, MSign::minus), mp = mat_m(tau, p, MSign::plus);
    const auto [U, V] = u_v_scalars(tau, p);
    uv = std::max(uv, max_abs_diff(mm, U * Mat2::identity() + V * C));
    const Mat2 n = mat_n(tau, p);
    trace = std::max(trace, std::abs((n * mm.transpose()).trace() - std::sin(2.0 * W * tau) / (p.m * W)));
    const double d_exp = std::pow(std::cos(W * tau), 2) + std::pow(w / W * s, 2);
    det = std::max(det, std::max(std::abs(mm.det() - d_exp), std::abs(mp.det() - d_exp)));
    comm = std::max(comm, max_abs_diff(n * C, C * n));
    // Fourth-order differences of cos(wt)/sin(Wt) and sin(wt)/sin(Wt), scaled by W/sin^2.
    const double h = 1e-3 * std::min(1.0, std::abs(s)) / W;
    auto fd = [&](auto f) { return (-f(tau + 2 * h) + 8 * f(tau + h) - 8 * f(tau - h) + f(tau - 2 * h)) / (12 * h); };
    const double scale = W / (s * s);
    const double dc = fd([&](double t) { return std::cos(w * t) / std::sin(W * t); });
    const double ds = fd([&](double t) { return std::sin(w * t) / std::sin(W * t); });
    deriv = std::max(deriv, std::max(std::abs(dc + scale * U), std::abs(ds + scale * V)) / scale);
  }
  c.at_most("M- = U I + V C", uv, 1e-14);
  c.at_most("Tr[N M-^T] = sin(2 W t)/(m W)", trace, 1e-12);
  c.at_most("det M+- = cos^2 + (w/W)^2 sin^2", det, 1e-13);
  c.at_most("N commutes with C", comm, 1e-15);
  c.at_most("d/dt identities for U, V (finite differences)", deriv, 1e-8);

  const PhysParams p0 = PhysParams::natural(1.3, 0.0);
  double reduce = 0.0;
  for (double tau : {0.2, 0.9, 2.5}) {
    const auto [U, V] = u_v_scalars(tau, p0);
    reduce = std::max({reduce, std::abs(U - 1.0), std::abs(V), max_abs_diff(mat_m(tau, p0, MSign::minus), Mat2::identity())});
  }
  c.at_most("omega0 = 0: M- = I, (U, V) = (1, 0)", reduce, 1e-15);
}

// ---------------------------------------------------------------- gauge

double gauge_covariance_deviation(System system, const PhysParams& p, GaugeKind kind, double lambda_sign,
                                  std::uint64_t seed, int count) {
  Rng rng(seed);
  const GaugeField gs = GaugeField::symmetric(p.B), gk = GaugeField::builtin(kind, p.B);
  const auto lambda = [&](const Vec2& x) { return lambda_sign * 0.5 * p.B * x.x1 * x.x2; };
  const double f = kernel_frequency(system, p);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const Vec2 r = rng.point(2.0), rp = rng.point(2.0);
    const double tau = rng.uniform(0.2, 2.9) / f;
    const TransverseKernel ks(system, p, gs, tau), kk(system, p, gk, tau);
    const auto [left, right] = gauge_phase(lambda, r, rp, p);
    worst = std::max(worst, rel(kk(r, rp), left * ks(r, rp) * right));
  }
  return worst;
}

void gauge_suite(Checks& c, std::uint64_t seed) {
  Rng rng(seed);
  double curl = 0.0, quad = 0.0, relation = 0.0;
  for (GaugeKind kind : {GaugeKind::symmetric, GaugeKind::landau_x, GaugeKind::landau_y}) {
    const double B = 1.7;
    const GaugeField g = GaugeField::builtin(kind, B);
    for (int i = 0; i < 50; ++i) {
      const Vec2 x = rng.point(5.0), y = rng.point(5.0);
      const double h = 1e-4;
      const double dA2 = (g.potential(x + Vec2{h, 0}).x2 - g.potential(x - Vec2{h, 0}).x2) / (2 * h);
      const double dA1 = (g.potential(x + Vec2{0, h}).x1 - g.potential(x - Vec2{0, h}).x1) / (2 * h);
      curl = std::max(curl, std::abs(dA2 - dA1 - B));
      const double cf = line_integral_closed_form(g, x, y);
      quad = std::max({quad, std::abs(line_integral_straight(g, x, y, 2) - cf),
                       std::abs(line_integral_straight(g, x, y, 16) - cf)});
      const Vec2 diff = GaugeField::landau_x(B).potential(x) - GaugeField::symmetric(B).potential(x);
      relation = std::max(relation, norm(diff - Vec2{-0.5 * B * x.x2, -0.5 * B * x.x1}));
    }
  }
  c.at_most("curl A = B (finite differences)", curl, 1e-8);
  c.at_most("straight-line quadrature vs closed form", quad, 1e-12);
  c.at_most("A_landau_x - A_sym = grad(-(B/2) x1 x2)", relation, 1e-14);

  double resid = 0.0, path = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double B = rng.uniform(-3, 3);
    const Vec2 a = rng.point(5.0), b = rng.point(5.0);
    resid = std::max(resid, std::abs(residual_integral_bxi(B, a, b)));
    const GaugeField g = GaugeField::builtin(GaugeKind(i % 3), B);
    const double straight = line_integral_straight(g, a, b);
    std::vector<Vec2> poly{a};
    for (int k = 0; k < 1 + i % 4; ++k) poly.push_back(rng.point(5.0));
    poly.push_back(b);
    path = std::max(path, std::abs(corrected_line_integral_polyline(g, poly) - straight));
  }
  c.at_most("straight-line B x (xi - r') integral vanishes", resid, 1e-13);
  c.at_most("corrected integrand is path independent", path, 1e-10);

  // Arc diagnostic against the shoelace area of a dense polygon.
  const Vec2 a{0.3, -0.2}, b{1.9, 0.8};
  const double sweep = 1.1, B = 1.0;
  const double d = norm(b - a), half = 0.5 * sweep, radius = 0.5 * d / std::sin(half);
  const Vec2 left{-(b - a).x2 / d, (b - a).x1 / d};
  const Vec2 centre = 0.5 * (a + b) + (radius * std::cos(half)) * left;
  const double phi0 = std::atan2(a.x2 - centre.x2, a.x1 - centre.x1);
  const int np = 20000;
  double area = 0.0;
  Vec2 prev = a;
  for (int k = 1; k <= np; ++k) {
    const double phi = phi0 + sweep * k / np;
    const Vec2 cur = centre + radius * Vec2{std::cos(phi), std::sin(phi)};
    area += 0.5 * dot_c(prev, cur);
    prev = cur;
  }
  area += 0.5 * dot_c(prev, a);
  c.at_most("arc residual = B * signed area", std::abs(residual_integral_bxi_arc(B, a, b, sweep) - B * area), 1e-6);

  const PhysParams pl = PhysParams::natural(1.0), po = PhysParams::natural(1.0, 1.0);
  c.at_most("gauge covariance landau: symmetric -> landau_x",
            gauge_covariance_deviation(System::landau, pl, GaugeKind::landau_x, -1.0, seed + 1, 50), 1e-12);
  c.at_most("gauge covariance landau: symmetric -> landau_y",
            gauge_covariance_deviation(System::landau, pl, GaugeKind::landau_y, +1.0, seed + 2, 50), 1e-12);
  c.at_most("gauge covariance osc_b: symmetric -> landau_x",
            gauge_covariance_deviation(System::osc_b, po, GaugeKind::landau_x, -1.0, seed + 3, 50), 1e-12);
  c.at_most("gauge covariance osc_b: symmetric -> landau_y",
            gauge_covariance_deviation(System::osc_b, po, GaugeKind::landau_y, +1.0, seed + 4, 50), 1e-12);
}

// ---------------------------------------------------------------- pde

void pde_suite(Checks& c, std::uint64_t seed) {
  const PhysParams pf = PhysParams::natural(0.0), pl = PhysParams::natural(1.0), po = PhysParams::natural(1.0, 1.0);
  struct Case {
    System system;
    const PhysParams* p;
  };
  int salt = 0;
  for (Case cs : {Case{System::free, &pf}, Case{System::landau, &pl}, Case{System::osc_b, &po}}) {
    for (GaugeKind kind : {GaugeKind::symmetric, GaugeKind::landau_x, GaugeKind::landau_y}) {
      const auto queries = random_residual_queries(cs.system, *cs.p, 50, seed + (++salt));
      const double tol = cs.system == System::free ? 1e-6 : 1e-4;
      c.guarded("Schrodinger residual " + std::string(to_string(cs.system)) + "/" + std::string(to_string(kind)), tol,
                [&] { return schrodinger_residual(cs.system, *cs.p, GaugeField::builtin(kind, cs.p->B), queries); });
    }
  }

  Rng rng(seed + 100);
  double to_landau = 0.0, to_mehler = 0.0, reversal = 0.0, mirror = 0.0;
  const PhysParams tiny_w0 = PhysParams::natural(1.0, 1e-8), tiny_b = PhysParams::natural(1e-8, 1.0);
  KernelOptions acausal;
  acausal.enforce_causal = false;
  for (int i = 0; i < 20; ++i) {
    const Vec2 r = rng.point(1.5), rp = rng.point(1.5);
    const double t = rng.uniform(0.2, 2.9);
    const GaugeField g1 = GaugeField::symmetric(1.0);
    to_landau = std::max(to_landau, rel(oscillator_b_transverse(r, rp, t / 0.5, tiny_w0, g1),
                                        landau_transverse(r, rp, t / 0.5, pl, g1)));
    const cplx mehler = harmonic_1d(r.x1, rp.x1, t, tiny_b) * harmonic_1d(r.x2, rp.x2, t, tiny_b);
    to_mehler = std::max(to_mehler, rel(oscillator_b_transverse(r, rp, t, tiny_b, GaugeField::symmetric(1e-8)), mehler));
    for (GaugeKind kind : {GaugeKind::symmetric, GaugeKind::landau_x}) {
      const GaugeField g = GaugeField::builtin(kind, 1.0);
      const TransverseKernel fwd(System::osc_b, po, g, t), back(System::osc_b, po, g, -t, acausal);
      reversal = std::max(reversal, rel(std::conj(fwd(r, rp)), back(rp, r)));
    }
    PhysParams neg = po;
    neg.B = -po.B;
    mirror = std::max(mirror, std::abs(std::abs(oscillator_b_transverse(r, rp, t, po, GaugeField::symmetric(1.0))) -
                                       std::abs(oscillator_b_transverse(rp, r, t, neg, GaugeField::symmetric(-1.0)))));
  }
  c.at_most("omega0 = 1e-8: osc_b -> landau", to_landau, 1e-6);
  c.at_most("B = 1e-8: osc_b -> 2D Mehler product", to_mehler, 1e-6);
  c.at_most("time reversal K(r,r';t)* = K(r',r;-t)", reversal, 1e-12);
  c.at_most("|K| invariant under r <-> r', B -> -B", mirror, 1e-13);

  const PhysParams p1{1.0, 1.0, 1.0, 0.0, 1e-4};
  c.at_most("harmonic_1d at omega0 = 1e-4 -> free_1d", rel(harmonic_1d(0.4, -0.3, 0.8, p1), free_1d(0.4, -0.3, 0.8, p1)), 1e-6);
  c.at_most("free_1d(0, 0; 1) = e^{-i pi/4}/sqrt(2 pi)",
            std::abs(free_1d(0.0, 0.0, 1.0, pf) - std::exp(-kI * kPi / 4.0) / std::sqrt(2 * kPi)), 1e-15);
}

// ---------------------------------------------------------------- compose

double harmonic_composition(const PhysParams& p, double x, double xp, double tau, double eps) {
  // 1D analogue of the rotated-contour quadrature in chapman_kolmogorov_residual.
  const cplx t1 = damped_time(0.5 * tau, eps), t12 = damped_time(tau, eps);
  const cplx rot = std::exp(kI * kPi / 4.0);
  const int n = 801;
  const double half = 10.0, h = 2 * half / (n - 1);
  cplx acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const cplx y = rot * (-half + i * h);
    acc += trapezoid_weight(i, n) * harmonic_1d(cplx(x), y, t1, p) * harmonic_1d(y, cplx(xp), t1, p);
  }
  return rel(h * rot * acc, harmonic_1d(x, xp, t12, p));
}

void compose_suite(Checks& c, std::uint64_t seed) {
  Rng rng(seed);
  const Vec2 r = rng.point(1.0), rp = rng.point(1.0);
  const PhysParams pf = PhysParams::natural(0.0), pl = PhysParams::natural(1.0), po = PhysParams::natural(1.0, 1.0);
  c.guarded("composition free", 1e-6, [&] {
    return chapman_kolmogorov_residual(System::free, pf, GaugeField::symmetric(0.0), r, rp, 0.4, 0.7);
  });
  for (GaugeKind kind : {GaugeKind::symmetric, GaugeKind::landau_x, GaugeKind::landau_y}) {
    const std::string k(to_string(kind));
    c.guarded("composition landau/" + k + " wt = 0.3 + 0.3", 1e-3, [&] {
      return chapman_kolmogorov_residual(System::landau, pl, GaugeField::builtin(kind, 1.0), r, rp, 0.6, 0.6);
    });
    c.guarded("composition osc_b/" + k + " Wt = 0.4 + 0.9", 1e-3, [&] {
      return chapman_kolmogorov_residual(System::osc_b, po, GaugeField::builtin(kind, 1.0), r, rp,
                                         0.4 / po.Omega(), 0.9 / po.Omega());
    });
  }
  const PhysParams ph{1.0, 1.0, 1.0, 0.0, 1.0};
  c.guarded("harmonic_1d composition t/2 + t/2", 1e-6, [&] { return harmonic_composition(ph, 0.7, -0.4, 1.6, 1e-3); });
  double rejected = 0.0;
  try {
    chapman_kolmogorov_residual(System::landau, pl, GaugeField::symmetric(1.0), r, rp, 0.6, 0.0);
    rejected = 1.0;
  } catch (const DomainError&) {
  }
  c.at_most("tau2 = 0 split rejected", rejected, 0.0);
}

// ---------------------------------------------------------------- delta / evolution

WaveFunction zero_boundary(WaveFunction psi) {
  const int n = psi.grid.n;
  for (int i = 0; i < n; ++i) psi.at(i, 0) = psi.at(i, n - 1) = psi.at(0, i) = psi.at(n - 1, i) = 0.0;
  return psi;
}

void delta_suite(Checks& c, const VerifyConfig& cfg) {
  const PhysParams p = PhysParams::natural(1.0);
  const GaugeField g = GaugeField::symmetric(1.0);
  const auto lll = [](const Vec2& x) { return gaussian_packet(x, {0.0, 0.0}, 1.0); };

  // w tau = 1e-2 on the lowest-Landau-level Gaussian; the error cannot fall below
  // 2 sin(E0 tau / 2 hbar) for any normalised state, so both numbers are reported.
  const GridSpec src{12.0, cfg.delta_source_n}, tgt{8.0, 25};
  const double tau = 0.01 / p.omega();
  const WaveFunction psi0 = sample(src, lll), ref = sample(tgt, lll);
  const WaveFunction out = kernel_apply(System::landau, p, g, psi0, tau, tgt);
  const double floor = 2.0 * std::sin(0.5 * 0.5 * std::abs(p.omega_c()) * tau);
  c.at_most("short-time kernel_apply returns psi0 (L2)", l2_distance(out, ref), 1e-3,
            "lower bound 2 sin(E0 tau/2 hbar) = " + std::to_string(floor));
  c.at_most("short-time kernel_apply returns psi0 up to global phase (L2)", l2_distance_mod_phase(out, ref), 1e-3);

  // Linearity and serial/parallel agreement on a small grid.
  const GridSpec small{8.0, 40};
  const auto f1 = sample(small, [](const Vec2& x) { return gaussian_packet(x, {0.5, 0.2}, 0.9, {0.3, -0.2}); });
  const auto f2 = sample(small, [](const Vec2& x) { return gaussian_packet(x, {-0.4, 0.1}, 1.2); });
  const cplx a(0.7, -0.3), b(-1.1, 0.4);
  WaveFunction mix = f1;
  for (std::size_t k = 0; k < mix.values.size(); ++k) mix.values[k] = a * f1.values[k] + b * f2.values[k];
  const auto k1 = kernel_apply(System::landau, p, g, f1, 1.0), k2 = kernel_apply(System::landau, p, g, f2, 1.0);
  const auto km = kernel_apply(System::landau, p, g, mix, 1.0);
  double lin = 0.0, scale = 0.0;
  for (std::size_t k = 0; k < km.values.size(); ++k) {
    lin = std::max(lin, std::abs(km.values[k] - (a * k1.values[k] + b * k2.values[k])));
    scale = std::max(scale, std::abs(km.values[k]));
  }
  c.at_most("kernel_apply linearity", lin / scale, 1e-12);
  ApplyOptions serial;
  serial.parallel = false;
  const auto ks = kernel_apply(System::landau, p, g, f1, 1.0, serial);
  double sp = 0.0;
  for (std::size_t k = 0; k < ks.values.size(); ++k) sp = std::max(sp, std::abs(ks.values[k] - k1.values[k]));
  c.at_most("kernel_apply serial == parallel", sp, 0.0);

  // Two independent routes to psi(tau) at w tau = 0.5.
  const GridSpec& gs = cfg.grid;
  const WaveFunction packet = zero_boundary(sample(gs, [](const Vec2& x) { return gaussian_packet(x, {0.5, -0.3}, 1.0, {0.5, 0.0}); }));
  const SparseOperator H = build_hamiltonian_grid(p, g, gs);
  const double t = 0.5 / p.omega();
  c.guarded("Crank-Nicolson vs kernel_apply at w tau = 0.5 (L2)", 1e-2, [&] {
    const auto cn = evolve_crank_nicolson(H, packet, t, crank_nicolson_min_steps(H, t, p.hbar));
    return l2_distance(cn, kernel_apply(System::landau, p, g, packet, t));
  });

  // Norm at eps -> 0 by quadratic extrapolation through eps = 4e-3, 2e-3, 1e-3.
  c.guarded("kernel_apply norm drift, eps -> 0 extrapolated", 1e-3, [&] {
    double nrm[3];
    const double eps[3] = {4e-3, 2e-3, 1e-3};
    for (int k = 0; k < 3; ++k) {
      ApplyOptions o;
      o.damping = eps[k];
      nrm[k] = l2_norm(kernel_apply(System::landau, p, g, packet, t, o));
    }
    return std::abs(nrm[0] / 3.0 - 2.0 * nrm[1] + 8.0 * nrm[2] / 3.0 - l2_norm(packet));
  });

  // Eigenvector phase rotation and per-step unitarity on a coarse grid.
  const GridSpec coarse{10.0, 34};
  const SparseOperator Hc = build_hamiltonian_grid(p, g, coarse);
  c.guarded("Crank-Nicolson eigenvector fidelity defect", 1e-8, [&] {
    const auto ep = lowest_eigenpairs(Hc, 1);
    std::vector<cplx> v(ep.vectors.col(0).data(), ep.vectors.col(0).data() + Hc.dim());
    WaveFunction psi = from_interior(coarse, v);
    normalize(psi);
    const double tt = 0.3;
    const auto out = evolve_crank_nicolson(Hc, psi, tt, crank_nicolson_min_steps(Hc, tt, 1.0));
    WaveFunction expect = psi;
    for (auto& z : expect.values) z *= std::exp(-kI * ep.values[0] * tt);
    // Phase-sensitive: 1 - Re<expected|out>.
    return 1.0 - inner(expect, out).real();
  });
  c.guarded("Crank-Nicolson norm drift per step", 1e-10, [&] {
    const auto psi = zero_boundary(sample(coarse, [](const Vec2& x) { return gaussian_packet(x, {0.3, 0.0}, 0.8, {1.0, 0.5}); }));
    const int steps = crank_nicolson_min_steps(Hc, 0.5, 1.0);
    const auto out = evolve_crank_nicolson(Hc, psi, 0.5, steps);
    return std::abs(l2_norm(out) - l2_norm(psi)) / steps;
  });
}

// ---------------------------------------------------------------- spectrum

void spectrum_suite(Checks& c, const VerifyConfig& cfg) {
  const PhysParams pl = PhysParams::natural(1.0), po = PhysParams::natural(1.0, 1.0);

  double ident = 0.0;
  for (int i = 0; i <= 60; ++i) {
    const double x = 0.1 * std::pow(500.0, i / 60.0);  // beta hbar wc from 0.1 to 50
    ident = std::max(ident, std::abs(partition_function_per_area(x, pl) / partition_function_per_area_geometric(x, pl) - 1.0));
  }
  c.at_most("partition function closed form vs series", ident, 1e-12);
  double sum = 0.0;
  for (int n = 0; n < 200; ++n) sum += std::exp(-2.0 * (n + 0.5)) / (2 * kPi);
  c.at_most("partition function at beta = 2 vs 200-term level sum", std::abs(partition_function_per_area(2.0, pl) - sum), 1e-12);
  c.at_most("ground-level dominance at beta hbar wc = 50",
            std::abs(partition_function_per_area(50.0, pl) / (std::exp(-25.0) / (2 * kPi)) - 1.0), 1e-10);

  const double beta = 2.0;
  c.at_most("Euclidean trace vs sum exp(-beta E_nl)",
            rel(trace_transverse_osc_b(cplx(0.0, -beta), po), spectral_partition_sum_osc_b(beta, po)), 1e-10);
  Rng rng(cfg.seed);
  double prod = 0.0;
  for (int i = 0; i < 50; ++i) {
    const cplx t(rng.uniform(0.1, 5.0), -rng.uniform(0.0, 2.0));
    prod = std::max(prod, rel(trace_transverse_osc_b_product(t, po), trace_transverse_osc_b(t, po)));
  }
  c.at_most("cos - cos = -2 sin sin trace identity", prod, 1e-14);

  // Diagonal Euclidean kernels integrated by quadrature.
  {
    const auto rule = gauss_legendre(64);
    const PhysParams ph{1.0, 1.0, 1.0, 0.0, 1.0};
    const double b1 = 1.5;
    double tr1 = 0.0;
    for (int k = 0; k < 8; ++k)
      tr1 += integrate_gl([&](double x) { return harmonic_1d(x, x, cplx(0.0, -b1), ph).real(); }, -12.0 + 3 * k, -9.0 + 3 * k, rule);
    c.at_most("harmonic_1d Euclidean trace", std::abs(tr1 * 2.0 * std::sinh(0.5 * b1) - 1.0), 1e-8);

    const TransverseKernel kd(System::osc_b, po, GaugeField::symmetric(1.0), cplx(0.0, -beta));
    const int n = 161;
    const double half = 10.0, h = 2 * half / (n - 1);
    cplx tr2 = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Vec2 x{-half + i * h, -half + j * h};
        tr2 += trapezoid_weight(i, n) * trapezoid_weight(j, n) * kd(x, x);
      }
    c.at_most("osc_b trace vs 2D quadrature of the diagonal", rel(h * h * tr2, trace_transverse_osc_b(cplx(0.0, -beta), po)), 1e-6);

    const double L = 7.0;
    const cplx diag = landau_transverse({0.3, -1.2}, {0.3, -1.2}, cplx(0.0, -beta), pl, GaugeField::landau_x(1.0));
    c.at_most("landau diagonal over area L^2", rel(diag * L * L, L * L * partition_function_per_area(beta, pl)), 1e-8);
  }

  // Grid oracles.
  c.guarded("grid Landau n = 0 cluster mean (relative)", 0.02, [&] {
    const auto s = landau_grid_summary(pl, GaugeField::symmetric(1.0), cfg.grid);
    c.at_most("grid Landau n = 1 cluster mean (relative)", std::abs(s.cluster_means[1] / 1.5 - 1.0), 0.02);
    c.at_most("grid Landau degeneracy count vs |eB|/(2 pi hbar) L_eff^2 (relative)",
              std::abs(s.lowest_window_count / s.expected_window_count - 1.0), 0.2,
              std::to_string(s.lowest_window_count) + " vs " + std::to_string(s.expected_window_count));
    return std::abs(s.cluster_means[0] / 0.5 - 1.0);
  });
  const auto analytic = lowest_levels_osc_b(4, po);
  std::vector<double> sym, lx;
  for (GaugeKind kind : {GaugeKind::symmetric, GaugeKind::landau_x}) {
    c.guarded("grid osc_b four lowest, " + std::string(to_string(kind)) + " (max relative)", 0.01, [&] {
      const auto ev = lowest_eigenvalues(build_hamiltonian_grid(po, GaugeField::builtin(kind, 1.0), cfg.grid), 6);
      (kind == GaugeKind::symmetric ? sym : lx) = ev;
      double worst = 0.0;
      for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(ev[i] / analytic[i] - 1.0));
      return worst;
    });
  }
  if (sym.size() >= 4 && lx.size() >= 4) {
    double d = 0.0;
    for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(sym[i] / lx[i] - 1.0));
    c.at_most("grid spectrum symmetric vs landau_x gauge", d, 0.005);
  }
  c.guarded("grid free box ground mode (relative)", 0.005, [&] {
    const PhysParams p0 = PhysParams::natural(0.0);
    const double ev = lowest_eigenvalues(build_hamiltonian_grid(p0, GaugeField::symmetric(0.0), cfg.grid), 1)[0];
    return std::abs(ev / (kPi * kPi / (cfg.grid.L * cfg.grid.L)) - 1.0);
  });
  c.guarded("grid 2D oscillator ground state (relative)", 0.01, [&] {
    const PhysParams p0 = PhysParams::natural(0.0, 1.0);
    return std::abs(lowest_eigenvalues(build_hamiltonian_grid(p0, GaugeField::symmetric(0.0), cfg.grid), 1)[0] - 1.0);
  });
  c.at_most("grid Hamiltonian Hermitian defect",
            build_hamiltonian_grid(po, GaugeField::landau_y(1.0), GridSpec{6.0, 24}).max_hermitian_defect(), 0.0);

  c.guarded("Green-function poles vs E_nl (max abs)", 2e-3, [&] {
    const auto poles = green_function_pole_scan(0.5, 3.0, 1e-3, po);
    const auto levels = levels_below_osc_b(3.0, po, 1000);
    double worst = 0.0;
    for (double e : levels) {
      double best = 1e300;
      for (const auto& pe : poles) best = std::min(best, std::abs(pe.energy - e));
      worst = std::max(worst, best);
    }
    if (poles.size() != levels.size()) throw DomainError("pole count differs from level count");
    return worst;
  });
}

}  // namespace

std::string_view to_string(Suite s) {
  switch (s) {
    case Suite::algebra: return "algebra";
    case Suite::gauge: return "gauge";
    case Suite::pde: return "pde";
    case Suite::compose: return "compose";
    case Suite::delta: return "delta";
    case Suite::spectrum: return "spectrum";
    case Suite::all: return "all";
  }
  return "unknown";
}

std::optional<Suite> parse_suite(std::string_view text) {
  for (Suite s : {Suite::algebra, Suite::gauge, Suite::pde, Suite::compose, Suite::delta, Suite::spectrum, Suite::all})
    if (text == to_string(s)) return s;
  return std::nullopt;
}

bool SuiteReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

int weyl_count(const PhysParams& p, const GridSpec& grid, double e) {
  return int(std::ceil(grid.L * grid.L * p.m * e / (2.0 * kPi * p.hbar * p.hbar))) + 12;
}

LandauGridSummary landau_grid_summary(const PhysParams& p, const GaugeField& g, const GridSpec& grid,
                                      int levels, int k) {
  if (levels < 1) throw DomainError("landau_grid_summary: need at least one level");
  const double hw = p.hbar * std::abs(p.omega_c());
  const double top = (levels - 0.5 + 0.2) * hw;
  if (k <= 0) k = weyl_count(p, grid, top);
  const SparseOperator H = build_hamiltonian_grid(p, g, grid);
  const auto ep = lowest_eigenpairs(H, k);
  if (ep.values.back() < top) throw DomainError("landau_grid_summary: k too small to cover the top window");
  LandauGridSummary s;
  s.eigenvalues = ep.values;
  std::vector<double> sums(levels, 0.0);
  s.cluster_bulk_states.assign(levels, 0);
  for (int i = 0; i < k; ++i) {
    std::vector<cplx> v(ep.vectors.col(i).data(), ep.vectors.col(i).data() + H.dim());
    const double fm = frame_mass_fraction(grid, v);
    s.frame_mass.push_back(fm);
    const double e = ep.values[i];
    if (std::abs(e - 0.5 * hw) <= 0.2 * hw) ++s.lowest_window_count;
    for (int n = 0; n < levels; ++n) {
      if (std::abs(e - (n + 0.5) * hw) <= 0.2 * hw && fm <= 0.01) {
        sums[n] += e;
        ++s.cluster_bulk_states[n];
      }
    }
  }
  for (int n = 0; n < levels; ++n)
    s.cluster_means.push_back(s.cluster_bulk_states[n] ? sums[n] / s.cluster_bulk_states[n] : std::nan(""));
  const double l_eff = 0.8 * grid.L;
  s.expected_window_count = std::abs(p.e * p.B) / (2.0 * kPi * p.hbar) * l_eff * l_eff;
  return s;
}

SuiteReport run_suite(Suite suite, const VerifyConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  Checks c{std::string(to_string(suite))};
  switch (suite) {
    case Suite::algebra: algebra_suite(c, cfg.seed); break;
    case Suite::gauge: gauge_suite(c, cfg.seed); break;
    case Suite::pde: pde_suite(c, cfg.seed); break;
    case Suite::compose: compose_suite(c, cfg.seed); break;
    case Suite::delta: delta_suite(c, cfg); break;
    case Suite::spectrum: spectrum_suite(c, cfg); break;
    case Suite::all: throw DomainError("run_suite: expand 'all' with run_verify");
  }
  return c.finish(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

std::vector<SuiteReport> run_verify(Suite suite, const VerifyConfig& cfg) {
  if (suite != Suite::all) return {run_suite(suite, cfg)};
  std::vector<SuiteReport> out;
  for (Suite s : {Suite::algebra, Suite::gauge, Suite::pde, Suite::compose, Suite::delta, Suite::spectrum})
    out.push_back(run_suite(s, cfg));
  return out;
}

}  // namespace magprop
