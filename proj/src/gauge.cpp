#include "magprop/gauge.hpp"

#include <cmath>

#include "magprop/quadrature.hpp"

namespace magprop {

std::string_view to_string(GaugeKind kind) {
  switch (kind) {
    case GaugeKind::symmetric: return "symmetric";
    case GaugeKind::landau_x: return "landau_x";
    case GaugeKind::landau_y: return "landau_y";
    case GaugeKind::custom: return "custom";
  }
  return "unknown";
}

std::optional<GaugeKind> parse_gauge_kind(std::string_view text) {
  if (text == "symmetric") return GaugeKind::symmetric;
  if (text == "landau_x" || text == "landau-x") return GaugeKind::landau_x;
  if (text == "landau_y" || text == "landau-y") return GaugeKind::landau_y;
  return std::nullopt;
}

GaugeField GaugeField::builtin(GaugeKind kind, double B) {
  if (kind == GaugeKind::custom) throw DomainError("GaugeField::builtin: custom gauge needs a Lambda");
  return GaugeField(kind, B);
}

GaugeField GaugeField::custom(double B, ScalarFn lambda, GradientFn gradient) {
  if (!lambda) throw DomainError("GaugeField::custom: Lambda is required");
  GaugeField g(GaugeKind::custom, B);
  g.lambda_ = std::move(lambda);
  g.gradient_ = std::move(gradient);
  return g;
}

double GaugeField::lambda(const Vec2& xi) const {
  switch (kind_) {
    case GaugeKind::symmetric: return 0.0;
    case GaugeKind::landau_x: return -0.5 * B_ * xi.x1 * xi.x2;
    case GaugeKind::landau_y: return 0.5 * B_ * xi.x1 * xi.x2;
    case GaugeKind::custom: return lambda_(xi);
  }
  return 0.0;
}

Vec2 GaugeField::grad_lambda(const Vec2& xi) const {
  switch (kind_) {
    case GaugeKind::symmetric: return {0.0, 0.0};
    case GaugeKind::landau_x: return {-0.5 * B_ * xi.x2, -0.5 * B_ * xi.x1};
    case GaugeKind::landau_y: return {0.5 * B_ * xi.x2, 0.5 * B_ * xi.x1};
    case GaugeKind::custom: break;
  }
  if (gradient_) return gradient_(xi);
  const double h = 1e-6 * (1.0 + norm(xi));
  const double d1 = (lambda_({xi.x1 + h, xi.x2}) - lambda_({xi.x1 - h, xi.x2})) / (2.0 * h);
  const double d2 = (lambda_({xi.x1, xi.x2 + h}) - lambda_({xi.x1, xi.x2 - h})) / (2.0 * h);
  return {d1, d2};
}

Vec2 GaugeField::potential(const Vec2& xi) const {
  switch (kind_) {
    case GaugeKind::symmetric: return {-0.5 * B_ * xi.x2, 0.5 * B_ * xi.x1};
    case GaugeKind::landau_x: return {-B_ * xi.x2, 0.0};
    case GaugeKind::landau_y: return {0.0, B_ * xi.x1};
    case GaugeKind::custom: break;
  }
  const Vec2 grad = grad_lambda(xi);
  return {-0.5 * B_ * xi.x2 + grad.x1, 0.5 * B_ * xi.x1 + grad.x2};
}

CVec2 GaugeField::potential(const CVec2& xi) const {
  switch (kind_) {
    case GaugeKind::symmetric: return {-0.5 * B_ * xi.x2, 0.5 * B_ * xi.x1};
    case GaugeKind::landau_x: return {-B_ * xi.x2, cplx(0.0)};
    case GaugeKind::landau_y: return {cplx(0.0), B_ * xi.x1};
    case GaugeKind::custom: break;
  }
  throw DomainError("custom gauges cannot be continued to complex coordinates");
}

Vec2 vector_potential(const GaugeField& g, const Vec2& xi) { return g.potential(xi); }

namespace {

// Integral of F(xi) . dxi along xi(t) = a + t (b - a), t in [0, 1].
template <class Field>
double segment_integral(Field&& field, const Vec2& a, const Vec2& b, const GaussLegendreRule& rule) {
  const Vec2 d = b - a;
  return integrate_gl(
      [&](double t) {
        const Vec2 f = field(a + t * d);
        return dot(f, d);
      },
      0.0, 1.0, rule);
}

Vec2 b_cross(double B, const Vec2& u) { return {-B * u.x2, B * u.x1}; }

}  // namespace

double line_integral_straight(const GaugeField& g, const Vec2& r_from, const Vec2& r_to, int order) {
  if (order < 2) throw DomainError("line_integral_straight: order must be >= 2");
  const auto rule = gauss_legendre(order);
  return segment_integral([&](const Vec2& xi) { return g.potential(xi); }, r_from, r_to, rule);
}

double line_integral_closed_form(const GaugeField& g, const Vec2& a, const Vec2& b) {
  const double B = g.B();
  switch (g.kind()) {
    case GaugeKind::symmetric: return 0.5 * B * dot_c(a, b);
    case GaugeKind::landau_x: return -0.5 * B * (b.x1 - a.x1) * (a.x2 + b.x2);
    case GaugeKind::landau_y: return 0.5 * B * (b.x2 - a.x2) * (a.x1 + b.x1);
    case GaugeKind::custom: break;
  }
  return 0.5 * B * dot_c(a, b) + g.lambda(b) - g.lambda(a);
}

cplx line_integral_closed_form(const GaugeField& g, const CVec2& a, const CVec2& b) {
  const double B = g.B();
  switch (g.kind()) {
    case GaugeKind::symmetric: return 0.5 * B * dot_c(a, b);
    case GaugeKind::landau_x: return -0.5 * B * (b.x1 - a.x1) * (a.x2 + b.x2);
    case GaugeKind::landau_y: return 0.5 * B * (b.x2 - a.x2) * (a.x1 + b.x1);
    case GaugeKind::custom: break;
  }
  throw DomainError("custom gauges cannot be continued to complex coordinates");
}

double line_integral_polyline(const GaugeField& g, const std::vector<Vec2>& vertices, int order) {
  if (vertices.size() < 2) throw DomainError("line_integral_polyline: need at least two vertices");
  const auto rule = gauss_legendre(order);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
    acc += segment_integral([&](const Vec2& xi) { return g.potential(xi); }, vertices[i],
                            vertices[i + 1], rule);
  return acc;
}

double corrected_line_integral_polyline(const GaugeField& g, const std::vector<Vec2>& vertices,
                                        int order) {
  if (vertices.size() < 2)
    throw DomainError("corrected_line_integral_polyline: need at least two vertices");
  const auto rule = gauss_legendre(order);
  const Vec2 start = vertices.front();
  const auto integrand = [&](const Vec2& xi) {
    const Vec2 a = g.potential(xi);
    const Vec2 c = b_cross(g.B(), xi - start);
    return Vec2{a.x1 - 0.5 * c.x1, a.x2 - 0.5 * c.x2};
  };
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
    acc += segment_integral(integrand, vertices[i], vertices[i + 1], rule);
  return acc;
}

double residual_integral_bxi(double B, const Vec2& r_from, const Vec2& r_to, int order) {
  const auto rule = gauss_legendre(order);
  return segment_integral([&](const Vec2& xi) { return 0.5 * b_cross(B, xi - r_from); }, r_from,
                          r_to, rule);
}

double residual_integral_bxi_arc(double B, const Vec2& r_from, const Vec2& r_to, double sweep,
                                 int order, int panels) {
  const Vec2 chord = r_to - r_from;
  const double d = norm(chord);
  if (d == 0.0 || sweep == 0.0) return residual_integral_bxi(B, r_from, r_to, order);
  const double half = 0.5 * std::abs(sweep);
  const double radius = 0.5 * d / std::sin(half);
  const Vec2 left{-chord.x2 / d, chord.x1 / d};
  const double side = sweep > 0.0 ? 1.0 : -1.0;
  const Vec2 centre = 0.5 * (r_from + r_to) + (side * radius * std::cos(half)) * left;
  const double phi0 = std::atan2(r_from.x2 - centre.x2, r_from.x1 - centre.x1);

  const auto rule = gauss_legendre(order);
  double acc = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double t0 = double(k) / panels, t1 = double(k + 1) / panels;
    acc += integrate_gl(
        [&](double t) {
          const double phi = phi0 + sweep * t;
          const Vec2 xi = centre + radius * Vec2{std::cos(phi), std::sin(phi)};
          const Vec2 dxi = (radius * sweep) * Vec2{-std::sin(phi), std::cos(phi)};
          return dot(0.5 * b_cross(B, xi - r_from), dxi);
        },
        t0, t1, rule);
  }
  return acc;
}

std::pair<cplx, cplx> gauge_phase(const GaugeField::ScalarFn& lambda, const Vec2& r,
                                  const Vec2& r_prime, const PhysParams& p) {
  const double k = p.e / p.hbar;
  return {std::polar(1.0, k * lambda(r)), std::polar(1.0, -k * lambda(r_prime))};
}

}  // namespace magprop
