#include "magprop/core_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "magprop/errors.hpp"

namespace magprop {

double max_abs_diff(const Mat2& a, const Mat2& b) {
  return std::max({std::abs(a.a11 - b.a11), std::abs(a.a12 - b.a12), std::abs(a.a21 - b.a21),
                   std::abs(a.a22 - b.a22)});
}

void PhysParams::validate() const {
  if (!(std::isfinite(m) && std::isfinite(e) && std::isfinite(hbar) && std::isfinite(B) &&
        std::isfinite(omega0)))
    throw DomainError("PhysParams: non-finite entry");
  if (m <= 0.0) throw DomainError("PhysParams: mass must be positive");
  if (hbar <= 0.0) throw DomainError("PhysParams: hbar must be positive");
  if (omega0 < 0.0) throw DomainError("PhysParams: omega0 must be non-negative");
}

double PhysParams::Omega() const { return std::hypot(omega(), omega0); }

double PhysParams::magnetic_length() const {
  const double eb = std::abs(e * B);
  if (eb == 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(hbar / eb);
}

double PhysParams::transverse_length() const {
  if (omega0 > 0.0) return std::sqrt(hbar / (m * Omega()));
  return magnetic_length();
}

Mat2 c_matrix() { return {0.0, 1.0, -1.0, 0.0}; }

Mat2 c_exp(double alpha) {
  const double c = std::cos(alpha), s = std::sin(alpha);
  return {c, s, -s, c};
}

Mat2 mat_n(double tau, const PhysParams& p) {
  const double w = p.omega();
  const double big = p.Omega();
  // sin(Omega t)/Omega -> t as Omega -> 0 (free particle).
  const double ratio = big == 0.0 ? tau : std::sin(big * tau) / big;
  return (ratio / p.m) * c_exp(w * tau);
}

Mat2 mat_m(double tau, const PhysParams& p, MSign sign) {
  const double big = p.Omega();
  if (big == 0.0) throw DomainError("mat_m: Omega = 0 (free particle)");
  const double w = p.omega();
  const double s = (sign == MSign::plus ? 1.0 : -1.0) * (w / big) * std::sin(big * tau);
  const Mat2 inner{std::cos(big * tau), s, -s, std::cos(big * tau)};
  return c_exp(w * tau) * inner;
}

UV u_v_scalars(double tau, const PhysParams& p) {
  const double big = p.Omega();
  if (big == 0.0) throw DomainError("u_v_scalars: Omega = 0 (free particle)");
  const double w = p.omega();
  const double cw = std::cos(w * tau), sw = std::sin(w * tau);
  const double cW = std::cos(big * tau), sW = std::sin(big * tau);
  const double r = w / big;
  return {cw * cW + r * sw * sW, sw * cW - r * cw * sW};
}

}  // namespace magprop
