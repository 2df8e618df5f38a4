#include "magprop/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "magprop/errors.hpp"

namespace magprop {

namespace {

constexpr double kPi = std::numbers::pi;

void require_field(const PhysParams& p, const char* who) {
  p.validate();
  if (p.e * p.B == 0.0) throw DomainError(std::string(who) + ": needs eB != 0");
}

}  // namespace

void SpectrumTable::sort_by_energy() {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.energy < b.energy; });
}

std::vector<double> SpectrumTable::energies() const {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.energy);
  return out;
}

double partition_function_per_area(double beta, const PhysParams& p) {
  require_field(p, "partition_function_per_area");
  if (!(beta > 0.0)) throw DomainError("partition_function_per_area: beta must be positive");
  const double w = std::abs(p.omega());
  return p.m * w / (2.0 * kPi * p.hbar * std::sinh(p.hbar * beta * w));
}

double partition_function_per_area_geometric(double beta, const PhysParams& p) {
  require_field(p, "partition_function_per_area_geometric");
  if (!(beta > 0.0)) throw DomainError("partition_function_per_area_geometric: beta must be positive");
  const double x = beta * p.hbar * std::abs(p.omega_c());
  return std::abs(p.e * p.B) / (2.0 * kPi * p.hbar) * std::exp(-0.5 * x) / (-std::expm1(-x));
}

SpectrumTable landau_levels(int n_max, const PhysParams& p) {
  require_field(p, "landau_levels");
  if (n_max < 0) throw DomainError("landau_levels: n_max must be >= 0");
  const double hw = p.hbar * std::abs(p.omega_c());
  const double g = std::abs(p.e * p.B) / (2.0 * kPi * p.hbar);
  SpectrumTable t;
  t.entries.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n) t.entries.push_back({{n}, (n + 0.5) * hw, g});
  return t;
}

SpectrumTable energy_levels_osc_b(int l_max, int n_max, const PhysParams& p) {
  p.validate();
  if (l_max < 0 || n_max < 0) throw DomainError("energy_levels_osc_b: bounds must be >= 0");
  const double big = p.Omega();
  if (big == 0.0) throw DomainError("energy_levels_osc_b: Omega = 0 (free particle)");
  const double w = p.omega();
  SpectrumTable t;
  t.entries.reserve(std::size_t(l_max + 1) * (n_max + 1));
  for (int l = 0; l <= l_max; ++l)
    for (int n = 0; n <= n_max; ++n)
      t.entries.push_back({{l, n}, p.hbar * ((l + n + 1) * big + (l - n) * w), std::nullopt});
  return t;
}

std::vector<double> levels_below_osc_b(double e_cut, const PhysParams& p, std::size_t max_levels) {
  p.validate();
  const double big = p.Omega();
  if (big == 0.0) throw DomainError("levels_below_osc_b: Omega = 0 (free particle)");
  const double w = p.omega();
  // E = hbar W + l a + n b with a, b >= 0.
  const double a = p.hbar * (big + w), b = p.hbar * (big - w);
  const double e0 = p.hbar * big;
  std::vector<double> out;
  if (e_cut < e0) return out;
  if (a <= 0.0 || b <= 0.0)
    throw TruncationError("levels_below_osc_b: infinitely degenerate levels (omega0 = 0)");
  for (long l = 0; e0 + l * a <= e_cut; ++l) {
    for (long n = 0;; ++n) {
      const double e = e0 + l * a + n * b;
      if (e > e_cut) break;
      out.push_back(e);
      if (out.size() > max_levels)
        throw TruncationError("levels_below_osc_b: more than max_levels levels below cutoff");
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> lowest_levels_osc_b(int count, const PhysParams& p) {
  if (count < 0) throw DomainError("lowest_levels_osc_b: count must be >= 0");
  const double big = p.Omega();
  if (big == 0.0) throw DomainError("lowest_levels_osc_b: Omega = 0 (free particle)");
  const double gap = p.hbar * (big - std::abs(p.omega()));
  if (gap <= 0.0) throw TruncationError("lowest_levels_osc_b: infinitely degenerate levels");
  // E_{l,n} >= hbar W + (l + n) * gap, so this cutoff holds at least `count` levels.
  const double cut = p.hbar * big + count * std::max(gap, p.hbar * (big + std::abs(p.omega())));
  auto levels = levels_below_osc_b(cut, p, 50'000'000);
  levels.resize(std::min<std::size_t>(levels.size(), count));
  return levels;
}

cplx trace_transverse_osc_b(cplx tau, const PhysParams& p) {
  p.validate();
  if (p.omega0 == 0.0)
    throw DegenerateTraceError("trace_transverse_osc_b: omega0 = 0, levels infinitely degenerate");
  // long double keeps the cos - cos cancellation off the last few bits
  using lc = std::complex<long double>;
  const lc t(tau.real(), tau.imag());
  const lc d = std::cos(static_cast<long double>(p.Omega()) * t) - std::cos(static_cast<long double>(p.omega()) * t);
  if (std::abs(d) == 0.0L) throw DegenerateTraceError("trace_transverse_osc_b: cos(Wt) = cos(wt)");
  const lc r = 1.0L / (2.0L * d);
  return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

cplx trace_transverse_osc_b_product(cplx tau, const PhysParams& p) {
  p.validate();
  if (p.omega0 == 0.0)
    throw DegenerateTraceError("trace_transverse_osc_b_product: omega0 = 0");
  using lc = std::complex<long double>;
  const long double big = p.Omega(), w = p.omega();
  const lc t(tau.real(), tau.imag());
  const lc d = -2.0L * std::sin(0.5L * (big + w) * t) * std::sin(0.5L * (big - w) * t);
  if (std::abs(d) == 0.0L) throw DegenerateTraceError("trace_transverse_osc_b_product: zero denominator");
  const lc r = 1.0L / (2.0L * d);
  return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

double spectral_partition_sum_osc_b(double beta, const PhysParams& p) {
  p.validate();
  if (!(beta > 0.0)) throw DomainError("spectral_partition_sum_osc_b: beta must be positive");
  const double big = p.Omega(), w = p.omega();
  if (p.omega0 == 0.0) throw DegenerateTraceError("spectral_partition_sum_osc_b: omega0 = 0");
  const double qa = std::exp(-beta * p.hbar * (big + w));
  const double qb = std::exp(-beta * p.hbar * (big - w));
  const double first = std::exp(-beta * p.hbar * big);
  constexpr double kRel = 1e-14;
  constexpr long kMaxTerms = 100'000'000;
  double acc = 0.0;
  long terms = 0;
  double row_head = first;
  for (;;) {
    double t = row_head;
    double row = 0.0;
    for (;;) {
      row += t;
      ++terms;
      // Geometric tail of this row after t.
      if (t * qb / (1.0 - qb) < kRel * (acc + row)) break;
      t *= qb;
      if (terms > kMaxTerms) throw TruncationError("spectral_partition_sum_osc_b: too many terms");
    }
    acc += row;
    // Remaining rows sum to at most row_head * qa/(1-qa) / (1-qb).
    if (row_head * qa / ((1.0 - qa) * (1.0 - qb)) < kRel * acc) break;
    row_head *= qa;
  }
  return acc;
}

double green_spectral_weight(double energy, double epsilon, const std::vector<double>& levels) {
  const double e2 = epsilon * epsilon;
  double acc = 0.0;
  for (double el : levels) {
    const double d = energy - el;
    acc += epsilon / (d * d + e2);
  }
  return acc;
}

cplx green_function(double energy, double epsilon, const std::vector<double>& levels) {
  cplx acc = 0.0;
  const cplx z(energy, -epsilon);
  for (double el : levels) acc += 1.0 / (z - el);
  return acc;
}

namespace {

double golden_max(const std::vector<double>& levels, double eps, double lo, double hi) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
  double fc = green_spectral_weight(c, eps, levels), fd = green_spectral_weight(d, eps, levels);
  for (int it = 0; it < 200 && (hi - lo) > 1e-13 * (1.0 + std::abs(lo)); ++it) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - g * (hi - lo);
      fc = green_spectral_weight(c, eps, levels);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + g * (hi - lo);
      fd = green_spectral_weight(d, eps, levels);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<PoleEstimate> green_function_pole_scan(double e_min, double e_max, double epsilon,
                                                   const PhysParams& p, const PoleScanOptions& opts) {
  p.validate();
  if (!(e_max > e_min && e_min > 0.0)) throw DomainError("pole scan: need e_max > e_min > 0");
  if (!(epsilon > 0.0)) throw DomainError("pole scan: epsilon must be positive");
  if (opts.prescan_points < 3) throw DomainError("pole scan: need at least 3 pre-scan points");
  const double big = p.Omega(), w = p.omega();
  if (big == 0.0) throw DomainError("pole scan: Omega = 0 (free particle)");

  // Levels above e_cut add a smooth background whose slope shifts a Lorentzian
  // peak by about slope * eps^3 / 2. With at most (x + a + b)/(ab) levels per
  // unit energy at excitation x, the slope beyond e_max + y0 is bounded by
  // 2 eps (1/y0 + c/(2 y0^2)) / (ab).
  const double a = p.hbar * (big + w), b = p.hbar * (big - w);
  if (!(a > 0.0 && b > 0.0))
    throw TruncationError("pole scan: omega0 = 0 makes every level infinitely degenerate");
  const double c = e_max - p.hbar * big + a + b;
  double y0 = p.hbar * big;
  const double target = opts.shift_tolerance * epsilon;
  for (int i = 0;; ++i) {
    const double slope = 2.0 * epsilon * (1.0 / y0 + c / (2.0 * y0 * y0)) / (a * b);
    if (0.5 * slope * epsilon * epsilon * epsilon <= target) break;
    y0 *= 2.0;
    if (i > 200) throw TruncationError("pole scan: tail bound does not converge");
  }
  const auto levels = levels_below_osc_b(e_max + y0, p, opts.max_levels);

  const int n = opts.prescan_points;
  const double h = (e_max - e_min) / (n - 1);
  std::vector<double> weight(n);
#pragma omp parallel for schedule(static) if (opts.parallel)
  for (int i = 0; i < n; ++i) weight[i] = green_spectral_weight(e_min + i * h, epsilon, levels);

  std::vector<PoleEstimate> poles;
  for (int i = 1; i + 1 < n; ++i) {
    if (weight[i] > weight[i - 1] && weight[i] >= weight[i + 1]) {
      const double e = golden_max(levels, epsilon, e_min + (i - 1) * h, e_min + (i + 1) * h);
      poles.push_back({e, green_spectral_weight(e, epsilon, levels)});
    }
  }
  return poles;
}

}  // namespace magprop
