#pragma once

#include <cmath>
#include <complex>

namespace magprop {

using cplx = std::complex<double>;

/// Point or vector in the transverse plane. T is double for physical
/// coordinates and cplx when a quadrature contour is deformed off the real plane.
template <class T>
struct BasicVec2 {
  T x1{};
  T x2{};

  friend constexpr BasicVec2 operator+(const BasicVec2& a, const BasicVec2& b) {
    return {a.x1 + b.x1, a.x2 + b.x2};
  }
  friend constexpr BasicVec2 operator-(const BasicVec2& a, const BasicVec2& b) {
    return {a.x1 - b.x1, a.x2 - b.x2};
  }
  template <class S>
  friend constexpr BasicVec2 operator*(S s, const BasicVec2& a) {
    return {T(s) * a.x1, T(s) * a.x2};
  }
  friend constexpr bool operator==(const BasicVec2&, const BasicVec2&) = default;
};

using Vec2 = BasicVec2<double>;
using CVec2 = BasicVec2<cplx>;

template <class T>
constexpr T dot(const BasicVec2<T>& a, const BasicVec2<T>& b) {
  return a.x1 * b.x1 + a.x2 * b.x2;
}

/// a . C b with C = [[0, 1], [-1, 0]], i.e. a1 b2 - a2 b1.
template <class T>
constexpr T dot_c(const BasicVec2<T>& a, const BasicVec2<T>& b) {
  return a.x1 * b.x2 - a.x2 * b.x1;
}

template <class T>
constexpr T norm2(const BasicVec2<T>& a) {
  return dot(a, a);
}

inline double norm(const Vec2& a) { return std::hypot(a.x1, a.x2); }

inline CVec2 complexify(const Vec2& a) { return {cplx(a.x1), cplx(a.x2)}; }

}  // namespace magprop
