#pragma once

// Closed-form Feynman kernels for H = (p - eA)^2/2m (+ m w0^2 r^2/2).
//
// Every transverse kernel has the form
//
//   K(r, r'; t) = P(t) exp{ i [a(t)(r^2 + r'^2) + b(t) r.r' + c(t) r.Cr'] }
//                      exp{ (ie/hbar) Int_{r'}^{r} A . dxi }   (straight line)
//
//   free   P = m/(2 pi i hbar t),           a = m/(2 hbar t),           b = -2a,  c = 0
//   landau P = m w/(2 pi i hbar sin wt),    a = (m w/2 hbar) cot(wt),   b = -2a,  c = 0
//   osc_b  P = m W/(2 pi i hbar sin Wt),    a = (m W/2 hbar) cot(Wt),
//          b = -(m W/hbar) cos(wt)/sin(Wt), c = -(m W/hbar)[sin(wt) - (w/W) sin(Wt)]/sin(Wt)
//
// with w = eB/2m and W = sqrt(w^2 + w0^2). The free case carries no gauge factor.

#include <optional>
#include <string_view>

#include "magprop/core_algebra.hpp"
#include "magprop/gauge.hpp"
#include "magprop/geometry.hpp"

namespace magprop {

enum class System { free, landau, osc_b };

std::string_view to_string(System system);
std::optional<System> parse_system(std::string_view text);

struct KernelOptions {
  /// |sin| below this raises CausticError.
  double caustic_tol = 1e-9;
  /// Require Im(tau) <= 0 and either Re(tau) > 0 or tau = -i beta with beta > 0.
  /// Disabled only for analytic-continuation identities such as time reversal.
  bool enforce_causal = true;
};

/// Throws DomainError for tau = 0 or (when enforced) outside the causal domain.
void check_time(cplx tau, const KernelOptions& opts);

cplx free_1d(double x, double x_prime, cplx tau, const PhysParams& p, const KernelOptions& opts = {});

/// Mehler kernel at frequency p.omega0. Raises CausticError near sin(w0 t) = 0 and
/// past the first caustic (Re(w0 t) > pi), where the square-root branch would need a Maslov index.
cplx harmonic_1d(double x, double x_prime, cplx tau, const PhysParams& p,
                 const KernelOptions& opts = {});
/// Continuation of both 1D kernels to complex coordinates (contour quadrature).
cplx free_1d(cplx x, cplx x_prime, cplx tau, const PhysParams& p, const KernelOptions& opts = {});
cplx harmonic_1d(cplx x, cplx x_prime, cplx tau, const PhysParams& p, const KernelOptions& opts = {});

/// Product of two free_1d factors.
cplx free_transverse(const Vec2& r, const Vec2& r_prime, cplx tau, const PhysParams& p,
                     const KernelOptions& opts = {});

/// Throws DomainError for B = 0, CausticError near sin(wt) = 0. Ignores omega0.
cplx landau_transverse(const Vec2& r, const Vec2& r_prime, cplx tau, const PhysParams& p,
                       const GaugeField& g, const KernelOptions& opts = {});

/// Throws DomainError for Omega = 0, CausticError near sin(Wt) = 0.
cplx oscillator_b_transverse(const Vec2& r, const Vec2& r_prime, cplx tau, const PhysParams& p,
                             const GaugeField& g, const KernelOptions& opts = {});

/// Transverse kernel at fixed tau with the time-dependent coefficients precomputed.
/// Cheap to copy; evaluation is thread-safe.
class TransverseKernel {
 public:
  TransverseKernel(System system, const PhysParams& p, GaugeField g, cplx tau,
                   const KernelOptions& opts = {});

  cplx operator()(const Vec2& r, const Vec2& r_prime) const;
  /// Continuation to complex coordinates (built-in gauges only).
  cplx operator()(const CVec2& r, const CVec2& r_prime) const;

  System system() const { return system_; }
  cplx tau() const { return tau_; }
  const PhysParams& params() const { return p_; }
  const GaugeField& gauge() const { return g_; }
  /// |sin(f tau)| of the selected frequency (|tau| scaled to 1 for the free kernel).
  double abs_sin() const { return abs_sin_; }
  /// Coefficient a(t) of (r^2 + r'^2) in the exponent.
  cplx quadratic_coefficient() const { return a_; }

 private:
  System system_;
  PhysParams p_;
  GaugeField g_;
  cplx tau_;
  cplx pref_{}, a_{}, b_{}, c_{};
  double abs_sin_ = 1.0;
  bool gauge_factor_ = false;
};

struct KernelQuery {
  Vec2 r;
  Vec2 r_prime;
  double x3 = 0.0;
  double x3_prime = 0.0;
  cplx tau{1.0, 0.0};
};

struct KernelValue {
  cplx amplitude;
  System system;
  GaugeKind gauge;
  /// |sin| of the transverse frequency at tau; distance-from-caustic diagnostic.
  double abs_sin;
};

/// K = K_transverse(r, r'; tau) * free_1d(x3, x3'; tau).
KernelValue full_3d(const KernelQuery& q, System system, const PhysParams& p, const GaugeField& g,
                    const KernelOptions& opts = {});

/// Scalar potential added to the kinetic term for the given system (m w0^2 r^2/2 for osc_b).
double scalar_potential(System system, const PhysParams& p, const Vec2& r);

}  // namespace magprop
