#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "generators.hpp"
#include "magprop/errors.hpp"
#include "magprop/spectrum.hpp"

using namespace magprop;

namespace {

constexpr double kPi = std::numbers::pi;

// Brute-force level list: every (l, n) up to a generous cut, sorted.
std::vector<double> brute_levels(const PhysParams& p, int cut) {
  std::vector<double> e;
  const double W = p.Omega(), w = p.omega();
  for (int l = 0; l <= cut; ++l)
    for (int n = 0; n <= cut; ++n) e.push_back(p.hbar * ((l + n + 1) * W + (l - n) * w));
  std::sort(e.begin(), e.end());
  return e;
}

// Closed product of the two geometric series over l and n.
double partition_product(double beta, const PhysParams& p) {
  const double x = beta * p.hbar * p.Omega(), y = beta * p.hbar * p.omega();
  return std::exp(-x) / ((1.0 - std::exp(-(x + y))) * (1.0 - std::exp(-(x - y))));
}

}  // namespace

TEST_CASE("Landau partition function at beta = 2") {
  const PhysParams p = PhysParams::natural(1.0);
  double sum = 0.0;
  for (int n = 0; n < 200; ++n) sum += std::exp(-2.0 * (n + 0.5));
  sum /= 2 * kPi;
  CHECK(partition_function_per_area(2.0, p) == doctest::Approx(sum).epsilon(1e-12));
  CHECK(partition_function_per_area(2.0, p) == doctest::Approx(0.06771391313789567).epsilon(1e-12));
}

TEST_CASE("property: sinh form equals the geometric series") {
  gen::forall(100, 41, [](gen::Gen& g, int i) {
    const PhysParams p = g.params(false);
    const double beta = g.uniform(0.05, 20.0);
    CAPTURE(i);
    CHECK(std::abs(partition_function_per_area(beta, p) / partition_function_per_area_geometric(beta, p) - 1.0) <
          1e-12);
  });
}

TEST_CASE("high-temperature limit of the Landau partition function") {
  const PhysParams p = PhysParams::natural(1.0);
  // beta -> 0: m / (2 pi hbar^2 beta)
  for (double beta : {1e-3, 1e-4}) {
    CHECK(partition_function_per_area(beta, p) * 2 * kPi * beta == doctest::Approx(1.0).epsilon(1e-6));
  }
  CHECK_THROWS_AS(partition_function_per_area(0.0, p), DomainError);
  CHECK_THROWS_AS(partition_function_per_area(1.0, PhysParams::natural(0.0)), DomainError);
}

TEST_CASE("Landau levels and their degeneracy") {
  const PhysParams p = PhysParams::natural(1.0);
  const SpectrumTable t = landau_levels(2, p);
  REQUIRE(t.entries.size() == 3);
  for (int n = 0; n < 3; ++n) {
    CHECK(t.entries[n].labels == std::vector<int>{n});
    CHECK(t.entries[n].energy == doctest::Approx(n + 0.5));
    REQUIRE(t.entries[n].degeneracy_per_area.has_value());
    CHECK(*t.entries[n].degeneracy_per_area == doctest::Approx(1.0 / (2 * kPi)));
  }
  const PhysParams q{1.0, -1.0, 1.0, 2.0, 0.0};
  CHECK(landau_levels(0, q).entries[0].energy == doctest::Approx(1.0));
  CHECK(*landau_levels(0, q).entries[0].degeneracy_per_area == doctest::Approx(2.0 / (2 * kPi)));
}

TEST_CASE("oscillator levels at B = 1, w0 = 1") {
  const PhysParams p = PhysParams::natural(1.0, 1.0);
  const std::vector<double> low = lowest_levels_osc_b(4, p);
  REQUIRE(low.size() == 4);
  CHECK(low[0] == doctest::Approx(1.118033988749895).epsilon(1e-14));
  CHECK(low[1] == doctest::Approx(1.7360679774997898).epsilon(1e-14));
  CHECK(low[2] == doctest::Approx(2.3541019662496847).epsilon(1e-14));
  CHECK(low[3] == doctest::Approx(2.73606797749979).epsilon(1e-14));

  const SpectrumTable t = energy_levels_osc_b(1, 1, p);
  REQUIRE(t.entries.size() == 4);
  CHECK(t.entries[0].labels == std::vector<int>{0, 0});
  CHECK(t.entries[1].labels == std::vector<int>{0, 1});
  CHECK(t.entries[2].labels == std::vector<int>{1, 0});
  CHECK(t.entries[2].energy == doctest::Approx(2.73606797749979));
  CHECK_FALSE(t.entries[0].degeneracy_per_area.has_value());
}

TEST_CASE("property: lowest oscillator levels match brute-force enumeration") {
  gen::forall(50, 42, [](gen::Gen& g, int i) {
    const PhysParams p = g.params(true);
    const int count = g.integer(1, 30);
    const std::vector<double> brute = brute_levels(p, 80);
    const std::vector<double> got = lowest_levels_osc_b(count, p);
    REQUIRE(got.size() == std::size_t(count));
    CAPTURE(i);
    for (int k = 0; k < count; ++k) CHECK(std::abs(got[k] - brute[k]) < 1e-12 * brute[k]);
  });
}

TEST_CASE("oscillator levels in the limits") {
  // No confinement: Landau ladder, independent of n.
  const PhysParams lan = PhysParams::natural(2.0, 1e-12);
  for (const auto& e : energy_levels_osc_b(3, 3, lan).entries) {
    CHECK(e.energy == doctest::Approx(2 * e.labels[0] + 1).epsilon(1e-10));
  }
  // No field: isotropic oscillator.
  const PhysParams iso = PhysParams::natural(0.0, 1.5);
  for (const auto& e : energy_levels_osc_b(3, 3, iso).entries) {
    CHECK(e.energy == doctest::Approx(1.5 * (e.labels[0] + e.labels[1] + 1)));
  }
  CHECK_THROWS_AS(energy_levels_osc_b(2, 2, PhysParams::natural(0.0)), DomainError);
  CHECK_THROWS_AS(lowest_levels_osc_b(3, PhysParams::natural(1.0)), TruncationError);
}

TEST_CASE("property: every level sits at or above hbar Omega") {
  gen::forall(50, 43, [](gen::Gen& g, int i) {
    const PhysParams p = g.params(true);
    CAPTURE(i);
    for (const auto& e : energy_levels_osc_b(6, 6, p).entries) CHECK(e.energy >= p.hbar * p.Omega() * (1 - 1e-15));
  });
}

TEST_CASE("property: Euclidean trace equals the spectral sum") {
  gen::forall(60, 44, [](gen::Gen& g, int i) {
    // Keep the softer ladder spacing above 5% of Omega so the level sum stays short.
    PhysParams p;
    do p = g.params(true);
    while (p.Omega() - std::abs(p.omega()) < 0.05 * p.Omega());
    const double beta = g.uniform(0.1, 5.0) / (p.hbar * p.Omega());
    const cplx tr = trace_transverse_osc_b(cplx(0.0, -p.hbar * beta), p);
    const double oracle = partition_product(beta, p);
    CAPTURE(i);
    CHECK(std::abs(tr.imag()) < 1e-12 * oracle);
    CHECK(std::abs(tr.real() / oracle - 1.0) < 1e-10);
    CHECK(std::abs(spectral_partition_sum_osc_b(beta, p) / oracle - 1.0) < 1e-10);
  });
}

TEST_CASE("property: trace formula and its product form agree in real time") {
  gen::forall(100, 45, [](gen::Gen& g, int i) {
    const PhysParams p = g.params(true);
    const double tau = g.uniform(0.05, 10.0);
    const cplx a = trace_transverse_osc_b(tau, p), b = trace_transverse_osc_b_product(tau, p);
    CAPTURE(i);
    CHECK(std::abs(a - b) / std::abs(a) < 1e-10);
  });
}

TEST_CASE("short-time trace") {
  // cos(Wt) - cos(wt) ~ -w0^2 t^2 / 2
  const PhysParams p = PhysParams::natural(1.0, 1.0);
  const double tau = 1e-3;
  const cplx tr = trace_transverse_osc_b(tau, p);
  CHECK(tr.real() * (-p.omega0 * p.omega0 * tau * tau) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK_THROWS_AS(trace_transverse_osc_b(1.0, PhysParams::natural(1.0)), DegenerateTraceError);
  CHECK_THROWS_AS(spectral_partition_sum_osc_b(1.0, PhysParams::natural(1.0)), DegenerateTraceError);
}

TEST_CASE("Green function and spectral weight") {
  const std::vector<double> levels{1.0, 2.0, 2.0};
  const cplx gval = green_function(1.5, 0.1, levels);
  const cplx expect = 1.0 / cplx(0.5, -0.1) + 2.0 / cplx(-0.5, -0.1);
  CHECK(std::abs(gval - expect) < 1e-14);
  CHECK(green_spectral_weight(1.5, 0.1, levels) == doctest::Approx(gval.imag()));
  // Height at a simple isolated pole is 1/eps.
  CHECK(green_spectral_weight(1.0, 1e-4, {1.0}) == doctest::Approx(1e4));
}

TEST_CASE("pole scan finds the lowest levels") {
  const PhysParams p = PhysParams::natural(1.0, 1.0);
  const auto poles = green_function_pole_scan(1.0, 2.5, 1e-3, p);
  const std::vector<double> expect = brute_levels(p, 20);
  REQUIRE(poles.size() == 3);
  for (int k = 0; k < 3; ++k) {
    CAPTURE(k);
    CHECK(std::abs(poles[k].energy - expect[k]) < 2e-3);
    CHECK(poles[k].height * 1e-3 == doctest::Approx(1.0).epsilon(1e-2));
  }
  PoleScanOptions serial;
  serial.parallel = false;
  const auto again = green_function_pole_scan(1.0, 2.5, 1e-3, p, serial);
  REQUIRE(again.size() == poles.size());
  for (std::size_t k = 0; k < poles.size(); ++k) CHECK(again[k].energy == poles[k].energy);
}

TEST_CASE("pole scan refuses what it cannot bound") {
  CHECK_THROWS_AS(green_function_pole_scan(0.1, 3.0, 1e-3, PhysParams::natural(1.0)), TruncationError);
  const PhysParams p = PhysParams::natural(1.0, 1.0);
  CHECK_THROWS_AS(green_function_pole_scan(2.0, 1.0, 1e-3, p), DomainError);
  CHECK_THROWS_AS(green_function_pole_scan(1.0, 2.0, 0.0, p), DomainError);
  const auto below = levels_below_osc_b(2.5, p, 1000);
  CHECK(below.size() == 3);
  CHECK(std::is_sorted(below.begin(), below.end()));
}
