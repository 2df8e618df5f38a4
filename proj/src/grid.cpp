#include "magprop/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "magprop/errors.hpp"

namespace magprop {

void GridSpec::validate() const {
  if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("GridSpec: L must be positive");
  if (n < 16) throw DomainError("GridSpec: need n >= 16 points per axis");
}

WaveFunction sample(const GridSpec& grid, const std::function<cplx(const Vec2&)>& f) {
  grid.validate();
  WaveFunction psi{grid, std::vector<cplx>(grid.size())};
  for (int i = 0; i < grid.n; ++i)
    for (int j = 0; j < grid.n; ++j) psi.at(i, j) = f(grid.point(i, j));
  return psi;
}

cplx gaussian_packet(const Vec2& r, const Vec2& centre, double s, const Vec2& k) {
  const Vec2 d = r - centre;
  const double amp = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * s);
  return amp * std::exp(cplx(-norm2(d) / (4.0 * s * s), dot(k, r)));
}

namespace {

double edge_weight(int i, int n) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; }

void require_same_grid(const WaveFunction& a, const WaveFunction& b) {
  if (a.grid.n != b.grid.n || a.grid.L != b.grid.L || a.values.size() != b.values.size())
    throw DomainError("wave functions live on different grids");
}

}  // namespace

cplx inner(const WaveFunction& a, const WaveFunction& b) {
  require_same_grid(a, b);
  const int n = a.grid.n;
  const double h2 = a.grid.spacing() * a.grid.spacing();
  cplx acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      acc += edge_weight(i, n) * edge_weight(j, n) * std::conj(a.at(i, j)) * b.at(i, j);
  return h2 * acc;
}

double l2_norm(const WaveFunction& a) { return std::sqrt(std::max(0.0, inner(a, a).real())); }

double l2_distance(const WaveFunction& a, const WaveFunction& b) {
  require_same_grid(a, b);
  WaveFunction d = a;
  for (std::size_t k = 0; k < d.values.size(); ++k) d.values[k] -= b.values[k];
  return l2_norm(d);
}

double l2_distance_mod_phase(const WaveFunction& a, const WaveFunction& b) {
  // ||e^{i phi} a - b||^2 = |a|^2 + |b|^2 - 2 Re(e^{i phi} <b|a>), minimised at 2 |<b|a>|.
  const double na = l2_norm(a), nb = l2_norm(b);
  const double d2 = na * na + nb * nb - 2.0 * std::abs(inner(b, a));
  return std::sqrt(std::max(0.0, d2));
}

void normalize(WaveFunction& a) {
  const double nrm = l2_norm(a);
  if (nrm == 0.0) throw DomainError("normalize: zero wave function");
  for (auto& v : a.values) v /= nrm;
}

std::vector<cplx> to_interior(const WaveFunction& psi) {
  const GridSpec& g = psi.grid;
  std::vector<cplx> v(g.interior_size());
  for (int i = 1; i < g.n - 1; ++i)
    for (int j = 1; j < g.n - 1; ++j) v[g.interior_index(i, j)] = psi.at(i, j);
  return v;
}

WaveFunction from_interior(const GridSpec& grid, std::span<const cplx> v) {
  if (v.size() != grid.interior_size()) throw DomainError("from_interior: size mismatch");
  WaveFunction psi{grid, std::vector<cplx>(grid.size(), cplx(0.0))};
  for (int i = 1; i < grid.n - 1; ++i)
    for (int j = 1; j < grid.n - 1; ++j) psi.at(i, j) = v[grid.interior_index(i, j)];
  return psi;
}

SparseOperator::SparseOperator(std::size_t dim, std::vector<Triplet> entries) : dim_(dim) {
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  row_ptr_.assign(dim + 1, 0);
  cols_.reserve(entries.size());
  values_.reserve(entries.size());
  std::size_t last_row = dim, last_col = dim;
  for (const auto& t : entries) {
    if (t.row >= dim || t.col >= dim) throw DomainError("SparseOperator: index out of range");
    if (t.row == last_row && t.col == last_col) {
      values_.back() += t.value;
      continue;
    }
    cols_.push_back(t.col);
    values_.push_back(t.value);
    ++row_ptr_[t.row + 1];
    last_row = t.row;
    last_col = t.col;
  }
  for (std::size_t r = 0; r < dim; ++r) row_ptr_[r + 1] += row_ptr_[r];
}

std::vector<Triplet> SparseOperator::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) out.push_back({r, cols_[k], values_[k]});
  return out;
}

void SparseOperator::apply(std::span<const cplx> x, std::span<cplx> y) const {
  if (x.size() != dim_ || y.size() != dim_) throw DomainError("SparseOperator::apply: size mismatch");
  const std::ptrdiff_t n = std::ptrdiff_t(dim_);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < n; ++r) {
    cplx acc = 0.0;
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) acc += values_[k] * x[cols_[k]];
    y[r] = acc;
  }
}

void SparseOperator::apply_serial(std::span<const cplx> x, std::span<cplx> y) const {
  if (x.size() != dim_ || y.size() != dim_)
    throw DomainError("SparseOperator::apply_serial: size mismatch");
  for (std::size_t r = 0; r < dim_; ++r) {
    cplx acc = 0.0;
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) acc += values_[k] * x[cols_[k]];
    y[r] = acc;
  }
}

double SparseOperator::max_hermitian_defect() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      const std::size_t c = cols_[k];
      // Locate (c, r); rows are sorted by column.
      const auto first = cols_.begin() + std::ptrdiff_t(row_ptr_[c]);
      const auto last = cols_.begin() + std::ptrdiff_t(row_ptr_[c + 1]);
      const auto it = std::lower_bound(first, last, r);
      const cplx mirror = (it != last && *it == r) ? values_[std::size_t(it - cols_.begin())] : cplx(0.0);
      worst = std::max(worst, std::abs(values_[k] - std::conj(mirror)));
    }
  }
  return worst;
}

std::pair<double, double> SparseOperator::gershgorin_bounds() const {
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (std::size_t r = 0; r < dim_; ++r) {
    double centre = 0.0, radius = 0.0;
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      if (cols_[k] == r)
        centre = values_[k].real();
      else
        radius += std::abs(values_[k]);
    }
    if (first) {
      lo = centre - radius;
      hi = centre + radius;
      first = false;
    } else {
      lo = std::min(lo, centre - radius);
      hi = std::max(hi, centre + radius);
    }
  }
  return {lo, hi};
}

SparseOperator build_hamiltonian_grid(const PhysParams& p, const GaugeField& g, const GridSpec& grid) {
  p.validate();
  grid.validate();
  if (g.B() != p.B) throw DomainError("build_hamiltonian_grid: gauge B differs from PhysParams::B");
  const int n = grid.n;
  const double h = grid.spacing();
  const double hb = p.hbar, m = p.m, e = p.e;
  const double kin = hb * hb / (2.0 * m * h * h);
  // Coefficient of psi_{k+s} from -(e/2m)(A.p + p.A): i hbar e s (A_k + A_{k+s}) / (4 m h).
  const double cross = hb * e / (4.0 * m * h);
  const double vosc = 0.5 * m * p.omega0 * p.omega0;

  std::vector<Triplet> t;
  t.reserve(grid.interior_size() * 5);
  for (int i = 1; i < n - 1; ++i) {
    for (int j = 1; j < n - 1; ++j) {
      const std::size_t k = grid.interior_index(i, j);
      const Vec2 r = grid.point(i, j);
      const Vec2 a = g.potential(r);
      const double diag = 4.0 * kin + e * e * norm2(a) / (2.0 * m) + vosc * norm2(r);
      t.push_back({k, k, cplx(diag, 0.0)});
      const int di[4] = {1, -1, 0, 0};
      const int dj[4] = {0, 0, 1, -1};
      for (int q = 0; q < 4; ++q) {
        const int i2 = i + di[q], j2 = j + dj[q];
        if (i2 < 1 || i2 > n - 2 || j2 < 1 || j2 > n - 2) continue;
        const Vec2 a2 = g.potential(grid.point(i2, j2));
        const double s = di[q] != 0 ? di[q] : dj[q];
        const double abar = di[q] != 0 ? a.x1 + a2.x1 : a.x2 + a2.x2;
        t.push_back({k, grid.interior_index(i2, j2), cplx(-kin, cross * s * abar)});
      }
    }
  }
  return SparseOperator(grid.interior_size(), std::move(t));
}

double frame_mass_fraction(const GridSpec& grid, std::span<const cplx> v, double frame) {
  if (v.size() != grid.interior_size()) throw DomainError("frame_mass_fraction: size mismatch");
  const double inner_half = 0.5 * grid.L - frame * grid.L;
  double total = 0.0, outer = 0.0;
  for (int i = 1; i < grid.n - 1; ++i) {
    for (int j = 1; j < grid.n - 1; ++j) {
      const double w = std::norm(v[grid.interior_index(i, j)]);
      total += w;
      const Vec2 r = grid.point(i, j);
      if (std::max(std::abs(r.x1), std::abs(r.x2)) > inner_half) outer += w;
    }
  }
  return total > 0.0 ? outer / total : 0.0;
}

}  // namespace magprop
