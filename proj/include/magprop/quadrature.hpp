#pragma once

#include <vector>

namespace magprop {

/// Gauss–Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes by Newton iteration on P_n; exact for polynomials of degree 2n-1. order >= 1.
GaussLegendreRule gauss_legendre(int order);

/// Integral of f over [a, b] with an order-point rule.
template <class F>
auto integrate_gl(F&& f, double a, double b, const GaussLegendreRule& rule) {
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  decltype(f(a)) acc{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * acc;
}

}  // namespace magprop
