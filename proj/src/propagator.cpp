#include "magprop/propagator.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "magprop/errors.hpp"

namespace magprop {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

void check_caustic(cplx s, double tol, const char* who) {
  const double a = std::abs(s);
  if (a < tol) throw CausticError(std::string(who) + ": caustic, |sin| = " + std::to_string(a), a);
}

}  // namespace

std::string_view to_string(System system) {
  switch (system) {
    case System::free: return "free";
    case System::landau: return "landau";
    case System::osc_b: return "osc_b";
  }
  return "unknown";
}

std::optional<System> parse_system(std::string_view text) {
  if (text == "free") return System::free;
  if (text == "landau") return System::landau;
  if (text == "osc_b" || text == "osc-b") return System::osc_b;
  return std::nullopt;
}

void check_time(cplx tau, const KernelOptions& opts) {
  if (!std::isfinite(tau.real()) || !std::isfinite(tau.imag()))
    throw DomainError("tau must be finite");
  if (tau == cplx(0.0)) throw DomainError("tau = 0: the kernel is a delta function");
  if (!opts.enforce_causal) return;
  if (tau.imag() > 0.0) throw DomainError("Im(tau) > 0 is outside the causal half-plane");
  if (tau.real() < 0.0) throw DomainError("Re(tau) < 0: the step function theta(tau) vanishes");
}

cplx free_1d(double x, double x_prime, cplx tau, const PhysParams& p, const KernelOptions& opts) {
  return free_1d(cplx(x), cplx(x_prime), tau, p, opts);
}

cplx free_1d(cplx x, cplx x_prime, cplx tau, const PhysParams& p, const KernelOptions& opts) {
  check_time(tau, opts);
  const cplx d = x - x_prime;
  const cplx pref = std::sqrt(p.m / (2.0 * kPi * kI * p.hbar * tau));
  return pref * std::exp(kI * p.m * d * d / (2.0 * p.hbar * tau));
}

cplx harmonic_1d(double x, double x_prime, cplx tau, const PhysParams& p, const KernelOptions& opts) {
  return harmonic_1d(cplx(x), cplx(x_prime), tau, p, opts);
}

cplx harmonic_1d(cplx x, cplx x_prime, cplx tau, const PhysParams& p, const KernelOptions& opts) {
  check_time(tau, opts);
  const double w0 = p.omega0;
  if (!(w0 > 0.0)) throw DomainError("harmonic_1d: omega0 must be positive");
  const cplx s = std::sin(w0 * tau);
  check_caustic(s, opts.caustic_tol, "harmonic_1d");
  if (opts.enforce_causal && (w0 * tau).real() > kPi)
    throw CausticError("harmonic_1d: beyond the first caustic, Maslov phase not tracked",
                       std::abs(s));
  const cplx pref = std::sqrt(p.m * w0 / (2.0 * kPi * kI * p.hbar * s));
  const cplx phase =
      (kI * p.m * w0 / (2.0 * p.hbar * s)) * ((x * x + x_prime * x_prime) * std::cos(w0 * tau) - 2.0 * x * x_prime);
  return pref * std::exp(phase);
}

TransverseKernel::TransverseKernel(System system, const PhysParams& p, GaugeField g, cplx tau,
                                   const KernelOptions& opts)
    : system_(system), p_(p), g_(std::move(g)), tau_(tau) {
  p_.validate();
  check_time(tau, opts);
  const double m = p_.m, hb = p_.hbar;
  switch (system_) {
    case System::free: {
      pref_ = m / (2.0 * kPi * kI * hb * tau);
      a_ = m / (2.0 * hb * tau);
      b_ = -2.0 * a_;
      c_ = 0.0;
      abs_sin_ = 1.0;
      gauge_factor_ = false;
      break;
    }
    case System::landau: {
      const double w = p_.omega();
      if (w == 0.0) throw DomainError("landau kernel needs B != 0; use the free kernel");
      const cplx s = std::sin(w * tau);
      abs_sin_ = std::abs(s);
      check_caustic(s, opts.caustic_tol, "landau_transverse");
      pref_ = m * w / (2.0 * kPi * kI * hb * s);
      a_ = (m * w / (2.0 * hb)) * std::cos(w * tau) / s;
      b_ = -2.0 * a_;
      c_ = 0.0;
      gauge_factor_ = true;
      break;
    }
    case System::osc_b: {
      const double w = p_.omega();
      const double big = p_.Omega();
      if (big == 0.0) throw DomainError("osc_b kernel needs Omega > 0; use the free kernel");
      const cplx s = std::sin(big * tau);
      abs_sin_ = std::abs(s);
      check_caustic(s, opts.caustic_tol, "oscillator_b_transverse");
      const cplx k = m * big / (hb * s);
      pref_ = m * big / (2.0 * kPi * kI * hb * s);
      a_ = 0.5 * k * std::cos(big * tau);
      b_ = -k * std::cos(w * tau);
      c_ = -k * (std::sin(w * tau) - (w / big) * s);
      gauge_factor_ = true;
      break;
    }
  }
  if (gauge_factor_ && g_.B() != p_.B)
    throw DomainError("gauge field strength does not match PhysParams::B");
}

cplx TransverseKernel::operator()(const Vec2& r, const Vec2& rp) const {
  cplx expo = a_ * (norm2(r) + norm2(rp)) + b_ * dot(r, rp) + c_ * dot_c(r, rp);
  if (gauge_factor_) expo += (p_.e / p_.hbar) * line_integral_closed_form(g_, rp, r);
  return pref_ * std::exp(kI * expo);
}

cplx TransverseKernel::operator()(const CVec2& r, const CVec2& rp) const {
  cplx expo = a_ * (norm2(r) + norm2(rp)) + b_ * dot(r, rp) + c_ * dot_c(r, rp);
  if (gauge_factor_) expo += (p_.e / p_.hbar) * line_integral_closed_form(g_, rp, r);
  return pref_ * std::exp(kI * expo);
}

cplx free_transverse(const Vec2& r, const Vec2& r_prime, cplx tau, const PhysParams& p,
                     const KernelOptions& opts) {
  return free_1d(r.x1, r_prime.x1, tau, p, opts) * free_1d(r.x2, r_prime.x2, tau, p, opts);
}

cplx landau_transverse(const Vec2& r, const Vec2& r_prime, cplx tau, const PhysParams& p,
                       const GaugeField& g, const KernelOptions& opts) {
  return TransverseKernel(System::landau, p, g, tau, opts)(r, r_prime);
}

cplx oscillator_b_transverse(const Vec2& r, const Vec2& r_prime, cplx tau, const PhysParams& p,
                             const GaugeField& g, const KernelOptions& opts) {
  return TransverseKernel(System::osc_b, p, g, tau, opts)(r, r_prime);
}

KernelValue full_3d(const KernelQuery& q, System system, const PhysParams& p, const GaugeField& g,
                    const KernelOptions& opts) {
  const TransverseKernel kt(system, p, g, q.tau, opts);
  const cplx k3 = free_1d(q.x3, q.x3_prime, q.tau, p, opts);
  return {kt(q.r, q.r_prime) * k3, system, g.kind(), kt.abs_sin()};
}

double scalar_potential(System system, const PhysParams& p, const Vec2& r) {
  if (system != System::osc_b) return 0.0;
  return 0.5 * p.m * p.omega0 * p.omega0 * norm2(r);
}

}  // namespace magprop
