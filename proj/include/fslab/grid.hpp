#pragma once

/// @file grid.hpp
/// Periodic Cartesian grid on [-L, L)^dim and the |x|^gamma weight samples.
///
/// Conventions used throughout the library:
///   - physical points per axis: x_j = -L + j h, j = 0..n-1, h = 2L/n;
///   - Fourier frequencies per axis: xi_k = pi k / L with k in
///     {-n/2, ..., n/2 - 1}, stored in standard FFT index order
///     (index i maps to k = i for i < n/2, k = i - n otherwise);
///   - physical quadrature weight h^dim, spectral weight (pi/L)^dim.

#include <array>
#include <cstddef>
#include <vector>

namespace fslab {

struct GridSpec {
  int dim = 2;   ///< 1, 2 or 3
  int n = 256;   ///< points per axis, power of two, >= 16
  double L = 12.0;  ///< half-width of the box

  double h() const { return 2.0 * L / n; }
  std::size_t total() const {
    std::size_t t = 1;
    for (int d = 0; d < dim; ++d) t *= static_cast<std::size_t>(n);
    return t;
  }
  /// Physical coordinate of per-axis index j.
  double coord(int j) const { return -L + j * h(); }
  /// Signed wavenumber k of per-axis FFT index i.
  int wavenumber(int i) const { return i < n / 2 ? i : i - n; }
  /// Frequency xi of per-axis FFT index i.
  double freq(int i) const;

  /// Decompose a flat row-major index into per-axis indices (axis 0 slowest).
  std::array<int, 3> unflatten(std::size_t flat) const;
  std::size_t flatten(const std::array<int, 3>& idx) const;

  void validate() const;  ///< throws std::invalid_argument
  bool operator==(const GridSpec&) const = default;
};

/// |xi|^2 per flat spectral index, cached per grid (shared, thread-safe).
const std::vector<double>& xi_squared_table(const GridSpec& g);

/// Samples of the weight |x|^gamma with origin regularization: for any
/// gamma != 0 the origin cell takes the radial cell average
///   S_{dim-1} (h/2)^{gamma+dim} / ((gamma+dim) h^dim),
/// i.e. the mean of |x|^gamma over the ball of radius h/2.  For gamma < 0
/// this keeps the quadrature of integrable singular weights finite; for
/// gamma > 0 it cancels the leading midpoint error at the one cell where
/// the weight vanishes but smooth profiles peak.  No other cell is touched.
struct WeightGrid {
  GridSpec grid;
  double gamma = 0.0;
  std::vector<double> samples;
};

WeightGrid make_weight(const GridSpec& g, double gamma);

} // namespace fslab
