#include <doctest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "magprop/errors.hpp"
#include "magprop/propagator.hpp"

using namespace magprop;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

// Oscillator-in-field kernel in the symmetric gauge, written in its textbook
// form with the gauge factor already folded into the r.Cr' term.
cplx osc_b_symmetric(const Vec2& r, const Vec2& rp, cplx tau, const PhysParams& p) {
  const double w = p.omega(), W = p.Omega();
  const cplx s = std::sin(W * tau);
  const cplx k = p.m * W / (p.hbar * s);
  const cplx bracket = std::cos(W * tau) * (norm2(r) + norm2(rp)) - 2.0 * std::cos(w * tau) * dot(r, rp) -
                       2.0 * std::sin(w * tau) * (r.x1 * rp.x2 - r.x2 * rp.x1);
  return k / (2.0 * kPi * kI) * std::exp(0.5 * kI * k * bracket);
}

cplx mehler(double x, double xp, cplx tau, double m, double w0, double hbar) {
  const cplx s = std::sin(w0 * tau);
  return std::sqrt(m * w0 / (2.0 * kPi * kI * hbar * s)) *
         std::exp(kI * m * w0 / (2.0 * hbar * s) * ((x * x + xp * xp) * std::cos(w0 * tau) - 2.0 * x * xp));
}

}  // namespace

TEST_CASE("free 1D kernel at the origin") {
  const PhysParams p = PhysParams::natural(0.0);
  const cplx k = free_1d(0.0, 0.0, 1.0, p);
  // (2 pi i)^{-1/2} = (2 pi)^{-1/2} e^{-i pi/4}
  CHECK(std::abs(k - cplx(0.28209479177387814, -0.28209479177387814)) < 1e-15);
}

TEST_CASE("free 1D kernel in imaginary time is the heat kernel") {
  const PhysParams p{2.0, 1.0, 0.5, 0.0, 0.0};
  for (double d : {0.0, 0.3, 1.7}) {
    const double beta = 0.8;
    const double heat = std::sqrt(p.m / (2 * kPi * p.hbar * beta)) * std::exp(-p.m * d * d / (2 * p.hbar * beta));
    const cplx k = free_1d(d, 0.0, cplx(0.0, -beta), p);
    CHECK(std::abs(k.imag()) < 1e-15);
    CHECK(k.real() == doctest::Approx(heat).epsilon(1e-14));
  }
}

TEST_CASE("time domain is enforced") {
  const PhysParams p = PhysParams::natural(1.0, 0.5);
  const GaugeField g = GaugeField::symmetric(1.0);
  CHECK_THROWS_AS(free_1d(0.0, 0.0, 0.0, p), DomainError);
  CHECK_THROWS_AS(free_1d(0.0, 0.0, cplx(1.0, 0.1), p), DomainError);
  CHECK_THROWS_AS(free_1d(0.0, 0.0, cplx(0.0, 1.0), p), DomainError);
  CHECK_THROWS_AS(free_1d(0.0, 0.0, -1.0, p), DomainError);
  CHECK_THROWS_AS(landau_transverse({0, 0}, {0, 0}, 0.0, p, g), DomainError);
  CHECK_NOTHROW(free_1d(0.0, 0.0, cplx(1.0, -0.1), p));
}

TEST_CASE("caustics raise with the measured distance") {
  const PhysParams p = PhysParams::natural(2.0);  // w = 1
  const GaugeField g = GaugeField::symmetric(2.0);
  try {
    landau_transverse({0, 0}, {1, 0}, kPi, p, g);
    FAIL("expected CausticError");
  } catch (const CausticError& e) {
    CHECK(e.abs_sin() < 1e-9);
  }
  const PhysParams q = PhysParams::natural(1.0, 1.0);
  CHECK_THROWS_AS(harmonic_1d(0.1, 0.2, kPi, q), CausticError);
  // Past the first caustic the Maslov phase is not tracked.
  CHECK_THROWS_AS(harmonic_1d(0.1, 0.2, 4.0, q), CausticError);
  CHECK_THROWS_AS(oscillator_b_transverse({0, 0}, {0, 0}, kPi / q.Omega(), q, GaugeField::symmetric(1.0)),
                  CausticError);
}

TEST_CASE("degenerate parameters are rejected") {
  const PhysParams p = PhysParams::natural(0.0);
  CHECK_THROWS_AS(landau_transverse({0, 0}, {0, 0}, 1.0, p, GaugeField::symmetric(0.0)), DomainError);
  CHECK_THROWS_AS(oscillator_b_transverse({0, 0}, {0, 0}, 1.0, p, GaugeField::symmetric(0.0)), DomainError);
  CHECK_THROWS_AS(harmonic_1d(0.0, 0.0, 1.0, p), DomainError);
  // Gauge field and parameters must describe the same B.
  CHECK_THROWS_AS(TransverseKernel(System::landau, PhysParams::natural(1.0), GaugeField::symmetric(2.0), 1.0),
                  DomainError);
}

TEST_CASE("Landau diagonal is gauge independent and closed form") {
  const PhysParams p = PhysParams::natural(1.0);  // w = 0.5
  for (double tau : {0.5, 1.0, 4.0}) {
    const cplx expect = 0.5 / (2.0 * kPi * kI * std::sin(0.5 * tau));
    for (GaugeKind k : {GaugeKind::symmetric, GaugeKind::landau_x, GaugeKind::landau_y}) {
      const GaugeField g = GaugeField::builtin(k, 1.0);
      CAPTURE(tau);
      CHECK(rel(landau_transverse({0.7, -1.2}, {0.7, -1.2}, tau, p, g), expect) < 1e-14);
    }
  }
}

TEST_CASE("Landau kernel in imaginary time gives the per-area partition function") {
  const PhysParams p{1.5, -1.0, 0.7, 2.0, 0.0};
  const double beta = 1.3, w = std::abs(p.omega());
  const cplx k = landau_transverse({0.2, 0.1}, {0.2, 0.1}, cplx(0.0, -p.hbar * beta), p, GaugeField::landau_y(2.0));
  const double expect = p.m * w / (2 * kPi * p.hbar * std::sinh(p.hbar * beta * w));
  CHECK(k.real() == doctest::Approx(expect).epsilon(1e-13));
  CHECK(std::abs(k.imag()) < 1e-13 * expect);
}

TEST_CASE("property: oscillator kernel matches the textbook symmetric-gauge form") {
  gen::forall(200, 31, [](gen::Gen& g, int i) {
    const PhysParams p = g.params(true);
    const double tau = g.tau_for(p.Omega());
    const Vec2 r = g.point(2.0), rp = g.point(2.0);
    CAPTURE(i);
    CHECK(rel(oscillator_b_transverse(r, rp, tau, p, GaugeField::symmetric(p.B)), osc_b_symmetric(r, rp, tau, p)) <
          1e-12);
  });
}

TEST_CASE("property: Landau kernel is the oscillator form at w0 = 0") {
  gen::forall(100, 32, [](gen::Gen& g, int i) {
    PhysParams p = g.params(false);
    const double tau = g.tau_for(std::abs(p.omega()));
    const Vec2 r = g.point(2.0), rp = g.point(2.0);
    CAPTURE(i);
    CHECK(rel(landau_transverse(r, rp, tau, p, GaugeField::symmetric(p.B)), osc_b_symmetric(r, rp, tau, p)) < 1e-12);
  });
}

TEST_CASE("property: gauge covariance of the transverse kernels") {
  gen::forall(100, 33, [](gen::Gen& g, int i) {
    const PhysParams p = g.params(g.integer(0, 1) == 1);
    const System sys = p.omega0 > 0 ? System::osc_b : System::landau;
    const double f = sys == System::osc_b ? p.Omega() : std::abs(p.omega());
    const double tau = g.tau_for(f);
    const Vec2 r = g.point(2.0), rp = g.point(2.0);
    const cplx ks = TransverseKernel(sys, p, GaugeField::symmetric(p.B), tau)(r, rp);
    // Lambda = -/+ (B/2) x1 x2 for landau_x / landau_y.
    auto transform = [&](double sgn) {
      const double lr = sgn * 0.5 * p.B * r.x1 * r.x2, lp = sgn * 0.5 * p.B * rp.x1 * rp.x2;
      return std::exp(kI * p.e / p.hbar * (lr - lp)) * ks;
    };
    CAPTURE(i);
    CHECK(rel(TransverseKernel(sys, p, GaugeField::landau_x(p.B), tau)(r, rp), transform(-1.0)) < 1e-12);
    CHECK(rel(TransverseKernel(sys, p, GaugeField::landau_y(p.B), tau)(r, rp), transform(+1.0)) < 1e-12);
    // A custom gauge with Lambda = c x1^2 behaves the same way.
    const double c = g.uniform(-1, 1);
    const GaugeField gc = GaugeField::custom(p.B, [c](const Vec2& x) { return c * x.x1 * x.x1; });
    const cplx kc = TransverseKernel(sys, p, gc, tau)(r, rp);
    const cplx expect = std::exp(kI * p.e / p.hbar * c * (r.x1 * r.x1 - rp.x1 * rp.x1)) * ks;
    CHECK(rel(kc, expect) < 1e-12);
  });
}

TEST_CASE("property: unitarity and transposition symmetries") {
  gen::forall(100, 34, [](gen::Gen& g, int i) {
    const PhysParams p = g.params(g.integer(0, 1) == 1);
    const System sys = p.omega0 > 0 ? System::osc_b : System::landau;
    const double f = sys == System::osc_b ? p.Omega() : std::abs(p.omega());
    const double tau = g.tau_for(f);
    const Vec2 r = g.point(2.0), rp = g.point(2.0);
    const GaugeField gs = GaugeField::symmetric(p.B);
    KernelOptions acausal;
    acausal.enforce_causal = false;
    const TransverseKernel fwd(sys, p, gs, tau), back(sys, p, gs, -tau, acausal);
    CAPTURE(i);
    // U(-t) = U(t)^dagger
    CHECK(rel(back(r, rp), std::conj(fwd(rp, r))) < 1e-12);
    // Transposition reverses the field.
    PhysParams q = p;
    q.B = -p.B;
    const TransverseKernel flipped(sys, q, GaugeField::symmetric(q.B), tau);
    CHECK(rel(flipped(r, rp), fwd(rp, r)) < 1e-12);
  });
}

TEST_CASE("weak-field and weak-confinement limits") {
  const Vec2 r{0.8, -0.4}, rp{-0.3, 1.1};
  const double tau = 0.9;

  // Landau at tiny B: free kernel times the gauge factor, then free kernel itself.
  const PhysParams weak{1.0, 1.0, 1.0, 1e-8, 0.0};
  const GaugeField gw = GaugeField::symmetric(weak.B);
  const cplx gauge = std::exp(kI * line_integral_straight(gw, rp, r));
  const cplx kf = free_transverse(r, rp, tau, weak);
  CHECK(rel(landau_transverse(r, rp, tau, weak, gw), kf * gauge) < 1e-12);
  CHECK(rel(landau_transverse(r, rp, tau, weak, gw), kf) < 1e-7);

  // Oscillator at tiny B: product of two Mehler kernels.
  const PhysParams osc{1.0, 1.0, 1.0, 1e-9, 1.2};
  const cplx prod = mehler(r.x1, rp.x1, tau, 1.0, 1.2, 1.0) * mehler(r.x2, rp.x2, tau, 1.0, 1.2, 1.0);
  CHECK(rel(oscillator_b_transverse(r, rp, tau, osc, GaugeField::symmetric(osc.B)), prod) < 1e-8);
  CHECK(rel(harmonic_1d(r.x1, rp.x1, tau, osc), mehler(r.x1, rp.x1, tau, 1.0, 1.2, 1.0)) < 1e-14);

  // Oscillator at tiny w0: the Landau kernel.
  const PhysParams lan{1.0, 1.0, 1.0, 1.5, 1e-6};
  const GaugeField gl = GaugeField::landau_x(1.5);
  CHECK(rel(oscillator_b_transverse(r, rp, tau, lan, gl), landau_transverse(r, rp, tau, lan, gl)) < 1e-9);

  // Mehler at tiny w0: free.
  const PhysParams h{1.0, 1.0, 1.0, 0.0, 1e-5};
  CHECK(rel(harmonic_1d(r.x1, rp.x1, tau, h), free_1d(r.x1, rp.x1, tau, h)) < 1e-8);
}

TEST_CASE("Euclidean Mehler trace") {
  const PhysParams p{1.0, 1.0, 1.0, 0.0, 1.3};
  const double beta = 0.9;
  // Trapezoid over a box where the diagonal is below 1e-30.
  const int n = 4001;
  const double L = 12.0, h = 2 * L / (n - 1);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = -L + i * h;
    sum += (i == 0 || i == n - 1 ? 0.5 : 1.0) * harmonic_1d(x, x, cplx(0.0, -beta), p).real();
  }
  CHECK(sum * h == doctest::Approx(1.0 / (2.0 * std::sinh(0.5 * beta * 1.3))).epsilon(1e-12));
}

TEST_CASE("Euclidean semigroup for Landau and oscillator kernels") {
  // Imaginary-time composition converges with a plain trapezoid rule.
  for (System sys : {System::landau, System::osc_b}) {
    const PhysParams p{1.0, 1.0, 1.0, 1.4, sys == System::osc_b ? 0.6 : 0.0};
    const GaugeField g = GaugeField::landau_y(p.B);
    const cplx t1(0.0, -0.7), t2(0.0, -0.5);
    const TransverseKernel k1(sys, p, g, t1), k2(sys, p, g, t2), k12(sys, p, g, t1 + t2);
    const Vec2 r{0.4, -0.6}, rp{-0.5, 0.3};
    const int n = 241;
    const double L = 10.0, h = 2 * L / (n - 1);
    cplx acc = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Vec2 mid{-L + i * h, -L + j * h};
        acc += k2(r, mid) * k1(mid, rp);
      }
    }
    CAPTURE(to_string(sys));
    CHECK(rel(acc * h * h, k12(r, rp)) < 1e-10);
  }
}

TEST_CASE("3D kernel factorises") {
  const PhysParams p{1.2, -0.8, 0.9, 1.1, 0.0};
  const GaugeField g = GaugeField::landau_x(p.B);
  KernelQuery q;
  q.r = {0.3, 0.2};
  q.r_prime = {-0.1, 0.5};
  q.x3 = 0.4;
  q.x3_prime = -0.2;
  q.tau = 1.7;

  const KernelValue f = full_3d(q, System::free, p, g);
  const cplx prod = free_1d(0.3, -0.1, 1.7, p) * free_1d(0.2, 0.5, 1.7, p) * free_1d(0.4, -0.2, 1.7, p);
  CHECK(rel(f.amplitude, prod) < 1e-14);
  CHECK(f.system == System::free);

  const KernelValue l = full_3d(q, System::landau, p, g);
  CHECK(rel(l.amplitude, landau_transverse(q.r, q.r_prime, 1.7, p, g) * free_1d(0.4, -0.2, 1.7, p)) < 1e-14);
  CHECK(l.gauge == GaugeKind::landau_x);
  CHECK(l.abs_sin == doctest::Approx(std::abs(std::sin(p.omega() * 1.7))));
}

TEST_CASE("complex coordinates reduce to real ones") {
  const PhysParams p = PhysParams::natural(1.0, 0.7);
  const TransverseKernel k(System::osc_b, p, GaugeField::landau_y(1.0), 1.1);
  const Vec2 r{0.3, -0.9}, rp{1.2, 0.4};
  CHECK(rel(k(complexify(r), complexify(rp)), k(r, rp)) < 1e-14);
  CHECK(rel(harmonic_1d(cplx(0.3), cplx(1.2), 1.1, p), harmonic_1d(0.3, 1.2, 1.1, p)) < 1e-15);
}

TEST_CASE("system names round-trip") {
  for (System s : {System::free, System::landau, System::osc_b}) CHECK(parse_system(to_string(s)) == s);
  CHECK_FALSE(parse_system("hydrogen").has_value());
  CHECK(scalar_potential(System::osc_b, PhysParams{2.0, 1, 1, 0, 3.0}, {1.0, 1.0}) == doctest::Approx(18.0));
  CHECK(scalar_potential(System::landau, PhysParams{2.0, 1, 1, 1, 3.0}, {1.0, 1.0}) == 0.0);
}
