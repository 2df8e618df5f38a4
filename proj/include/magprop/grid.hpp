#pragma once

// Uniform 2D grid on [-L/2, L/2]^2 with Dirichlet walls, wave functions sampled
// on it, and the finite-difference minimal-coupling Hamiltonian
//
//   H = (-i hbar grad - e A)^2 / 2m + m w0^2 r^2 / 2
//
// acting on the (n-2)^2 interior nodes. The kinetic part uses the 5-point
// Laplacian; the A.grad cross term is the symmetrised (A.p + p.A)/2 with
// centred differences, which keeps the matrix Hermitian.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "magprop/core_algebra.hpp"
#include "magprop/gauge.hpp"
#include "magprop/geometry.hpp"

namespace magprop {

struct GridSpec {
  double L = 12.0;
  int n = 96;

  void validate() const;
  double spacing() const { return L / (n - 1); }
  double coord(int i) const { return -0.5 * L + i * spacing(); }
  Vec2 point(int i, int j) const { return {coord(i), coord(j)}; }
  std::size_t size() const { return std::size_t(n) * n; }
  int interior_per_axis() const { return n - 2; }
  std::size_t interior_size() const { return std::size_t(n - 2) * (n - 2); }
  /// Interior node (i, j), 1 <= i, j <= n-2, to its unknown index.
  std::size_t interior_index(int i, int j) const { return std::size_t(i - 1) * (n - 2) + (j - 1); }
};

/// Complex samples on every node of `grid`, row-major with index i * n + j (i along x1).
struct WaveFunction {
  GridSpec grid;
  std::vector<cplx> values;

  cplx& at(int i, int j) { return values[std::size_t(i) * grid.n + j]; }
  cplx at(int i, int j) const { return values[std::size_t(i) * grid.n + j]; }
};

WaveFunction sample(const GridSpec& grid, const std::function<cplx(const Vec2&)>& f);
/// Normalised Gaussian exp(-|r - c|^2 / (4 s^2) + i k.r), i.e. |psi|^2 has standard deviation s.
cplx gaussian_packet(const Vec2& r, const Vec2& centre, double s, const Vec2& k = {0.0, 0.0});

/// Trapezoid inner product <a|b> with weight h^2 (halved on each boundary edge).
cplx inner(const WaveFunction& a, const WaveFunction& b);
double l2_norm(const WaveFunction& a);
double l2_distance(const WaveFunction& a, const WaveFunction& b);
/// min over global phase phi of ||e^{i phi} a - b||.
double l2_distance_mod_phase(const WaveFunction& a, const WaveFunction& b);
void normalize(WaveFunction& a);

std::vector<cplx> to_interior(const WaveFunction& psi);
WaveFunction from_interior(const GridSpec& grid, std::span<const cplx> v);

struct Triplet {
  std::size_t row;
  std::size_t col;
  cplx value;
};

/// Compressed-row sparse matrix. Row application is OpenMP-parallel;
/// apply_serial is the reference loop the parallel path is tested against.
class SparseOperator {
 public:
  SparseOperator() = default;
  /// Sorts by (row, col) and sums duplicates.
  SparseOperator(std::size_t dim, std::vector<Triplet> entries);

  std::size_t dim() const { return dim_; }
  std::size_t nnz() const { return values_.size(); }
  std::vector<Triplet> triplets() const;

  void apply(std::span<const cplx> x, std::span<cplx> y) const;
  void apply_serial(std::span<const cplx> x, std::span<cplx> y) const;

  /// max |H_ij - conj(H_ji)|.
  double max_hermitian_defect() const;
  /// Gershgorin enclosure [lo, hi] of the (real) spectrum.
  std::pair<double, double> gershgorin_bounds() const;

  const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
  const std::vector<std::size_t>& cols() const { return cols_; }
  const std::vector<cplx>& values() const { return values_; }

 private:
  std::size_t dim_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> cols_;
  std::vector<cplx> values_;
};

/// Minimal-coupling Hamiltonian on the interior nodes; the oscillator term uses p.omega0.
SparseOperator build_hamiltonian_grid(const PhysParams& p, const GaugeField& g, const GridSpec& grid);

/// Fraction of |v|^2 on interior nodes with max(|x1|, |x2|) > L/2 - frame * L.
double frame_mass_fraction(const GridSpec& grid, std::span<const cplx> interior_vector,
                           double frame = 0.1);

}  // namespace magprop
