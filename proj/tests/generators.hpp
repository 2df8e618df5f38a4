#pragma once

// Small deterministic generators for property tests. Each property runs over a
// fixed number of cases from a fixed seed, so a failure is reproducible by its
// case index alone.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "magprop/core_algebra.hpp"
#include "magprop/geometry.hpp"

namespace gen {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }
  double sign() { return integer(0, 1) ? 1.0 : -1.0; }

  magprop::Vec2 point(double span) { return {uniform(-span, span), uniform(-span, span)}; }

  /// Explicit-unit parameters with signed charge and field.
  magprop::PhysParams params(bool with_oscillator) {
    magprop::PhysParams p;
    p.m = uniform(0.3, 3.0);
    p.e = sign() * uniform(0.3, 2.0);
    p.hbar = uniform(0.5, 2.0);
    p.B = sign() * uniform(0.2, 3.0);
    p.omega0 = with_oscillator ? uniform(0.1, 2.0) : 0.0;
    return p;
  }

  /// Time with f * tau uniform in [lo, hi] (inside the first caustic window).
  double tau_for(double f, double lo = 0.15, double hi = 3.0) { return uniform(lo, hi) / f; }

 private:
  std::mt19937_64 rng_;
};

/// Runs body(g, case_index) `cases` times from one seed.
template <class Body>
void forall(int cases, std::uint64_t seed, Body&& body) {
  Gen g(seed);
  for (int i = 0; i < cases; ++i) body(g, i);
}

}  // namespace gen
