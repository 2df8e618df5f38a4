#pragma once

// Vector potentials for a uniform field B e3, straight-line and path integrals
// of A, and gauge-transformation phases.
//
// Built-in gauges:
//   symmetric  A = (-B x2/2,  B x1/2)
//   landau_x   A = (-B x2,    0)        = symmetric + grad(-(B/2) x1 x2)
//   landau_y   A = (0,        B x1)     = symmetric + grad( (B/2) x1 x2)
// A custom gauge is A_symmetric + grad(Lambda) for a user Lambda, so curl A = B
// holds by construction.

#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "magprop/core_algebra.hpp"
#include "magprop/errors.hpp"
#include "magprop/geometry.hpp"

namespace magprop {

enum class GaugeKind { symmetric, landau_x, landau_y, custom };

std::string_view to_string(GaugeKind kind);
/// Accepts "symmetric", "landau_x"/"landau-x", "landau_y"/"landau-y".
std::optional<GaugeKind> parse_gauge_kind(std::string_view text);

class GaugeField {
 public:
  using ScalarFn = std::function<double(const Vec2&)>;
  using GradientFn = std::function<Vec2(const Vec2&)>;

  static GaugeField symmetric(double B) { return GaugeField(GaugeKind::symmetric, B); }
  static GaugeField landau_x(double B) { return GaugeField(GaugeKind::landau_x, B); }
  static GaugeField landau_y(double B) { return GaugeField(GaugeKind::landau_y, B); }
  /// Built-in kinds only; throws DomainError for GaugeKind::custom.
  static GaugeField builtin(GaugeKind kind, double B);
  /// Throws DomainError when lambda is empty. Without an analytic gradient,
  /// grad(Lambda) is taken by central differences with h = 1e-6 (1 + |xi|).
  static GaugeField custom(double B, ScalarFn lambda, GradientFn gradient = {});

  GaugeKind kind() const { return kind_; }
  double B() const { return B_; }
  bool is_builtin() const { return kind_ != GaugeKind::custom; }

  /// Gauge function relative to the symmetric gauge.
  double lambda(const Vec2& xi) const;
  Vec2 grad_lambda(const Vec2& xi) const;

  Vec2 potential(const Vec2& xi) const;
  /// Analytic continuation of A to complex coordinates; built-in gauges only.
  CVec2 potential(const CVec2& xi) const;

 private:
  GaugeField(GaugeKind kind, double B) : kind_(kind), B_(B) {}

  GaugeKind kind_;
  double B_;
  ScalarFn lambda_;
  GradientFn gradient_;
};

Vec2 vector_potential(const GaugeField& g, const Vec2& xi);

/// Integral of A . dxi along the straight segment r_from -> r_to by Gauss–Legendre
/// quadrature with `order` nodes (order >= 2).
double line_integral_straight(const GaugeField& g, const Vec2& r_from, const Vec2& r_to,
                              int order = 16);

/// Closed form of the same straight-line integral. For custom gauges this is
/// the symmetric-gauge value plus Lambda(r_to) - Lambda(r_from).
double line_integral_closed_form(const GaugeField& g, const Vec2& r_from, const Vec2& r_to);
/// Complex-coordinate continuation; built-in gauges only.
cplx line_integral_closed_form(const GaugeField& g, const CVec2& r_from, const CVec2& r_to);

/// Integral of A . dxi along a polyline through `vertices` (at least two).
double line_integral_polyline(const GaugeField& g, const std::vector<Vec2>& vertices,
                              int order = 16);

/// Path-independent integrand A(xi) - (1/2) B x (xi - r_start) integrated along
/// a polyline starting at vertices.front().
double corrected_line_integral_polyline(const GaugeField& g, const std::vector<Vec2>& vertices,
                                        int order = 16);

/// (1/2) B x (xi - r_from) . dxi along the straight segment; vanishes identically.
double residual_integral_bxi(double B, const Vec2& r_from, const Vec2& r_to, int order = 16);

/// Same integrand along a circular arc from r_from to r_to sweeping `sweep`
/// radians (positive = counterclockwise about the arc centre). The result is
/// B times the signed area enclosed by the arc and the closing chord.
double residual_integral_bxi_arc(double B, const Vec2& r_from, const Vec2& r_to, double sweep,
                                 int order = 16, int panels = 64);

/// (e^{ie Lambda(r)/hbar}, e^{-ie Lambda(r')/hbar}); K transforms as first * K * second.
std::pair<cplx, cplx> gauge_phase(const GaugeField::ScalarFn& lambda, const Vec2& r,
                                  const Vec2& r_prime, const PhysParams& p);

}  // namespace magprop
