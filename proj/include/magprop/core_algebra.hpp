#pragma once

// 2x2 real matrix algebra for the transverse Heisenberg solutions, plus the
// physical parameter bundle shared by every other module.
//
//   C      = [[0, 1], [-1, 0]]           (C^2 = -1, C^T = -C)
//   e^{aC} = cos(a) 1 + sin(a) C
//   N      = sin(Omega t)/(m Omega) e^{w t C}
//   M(+/-) = e^{w t C} [cos(Omega t) 1 +/- (w/Omega) sin(Omega t) C]
//   M(-)   = U 1 + V C
//
// with w = eB/2m (signed) and Omega = sqrt(w^2 + w0^2).

#include <array>
#include <utility>

namespace magprop {

struct Mat2 {
  double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 zero() { return {}; }

  constexpr Mat2 transpose() const { return {a11, a21, a12, a22}; }
  constexpr double det() const { return a11 * a22 - a12 * a21; }
  constexpr double trace() const { return a11 + a22; }

  friend constexpr Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
  }
  friend constexpr Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
  }
  friend constexpr Mat2 operator*(double s, const Mat2& a) {
    return {s * a.a11, s * a.a12, s * a.a21, s * a.a22};
  }
  friend constexpr Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
  }
  constexpr Mat2 operator-() const { return {-a11, -a12, -a21, -a22}; }
};

/// Largest absolute entrywise difference.
double max_abs_diff(const Mat2& a, const Mat2& b);

/// Physical constants of the problem. Charge and field are signed.
struct PhysParams {
  double m = 1.0;
  double e = 1.0;
  double hbar = 1.0;
  double B = 0.0;
  double omega0 = 0.0;

  static PhysParams natural(double B, double omega0 = 0.0) { return {1.0, 1.0, 1.0, B, omega0}; }

  /// Throws DomainError unless m > 0, hbar > 0, omega0 >= 0 and all entries are finite.
  void validate() const;

  /// w = eB/(2m); the Larmor-type frequency appearing in e^{w t C}.
  double omega() const { return e * B / (2.0 * m); }
  double Omega() const;
  /// Cyclotron frequency eB/m = 2w (signed).
  double omega_c() const { return e * B / m; }
  /// sqrt(hbar/|eB|); infinite when eB = 0.
  double magnetic_length() const;
  /// Natural transverse length: magnetic length, oscillator length sqrt(hbar/(m Omega)) when w0 > 0.
  double transverse_length() const;
};

enum class MSign { plus, minus };

Mat2 c_matrix();
Mat2 c_exp(double alpha);
Mat2 mat_n(double tau, const PhysParams& p);
/// Throws DomainError when Omega = 0.
Mat2 mat_m(double tau, const PhysParams& p, MSign sign);

struct UV {
  double U;
  double V;
};
/// Throws DomainError when Omega = 0.
UV u_v_scalars(double tau, const PhysParams& p);

}  // namespace magprop
