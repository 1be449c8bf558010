#pragma once

/// @file field.hpp
/// Complex field sampled on a GridSpec, with a lazily cached unitary Fourier
/// transform.  Fields are value types; library operations never mutate their
/// inputs.  If you mutate `values` by hand, call `drop_modes()` first.

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "fslab/exec.hpp"
#include "fslab/grid.hpp"

namespace fslab {

using cplx = std::complex<double>;

class Field {
 public:
  GridSpec grid;
  std::vector<cplx> values;

  Field() = default;
  Field(GridSpec g, std::vector<cplx> v);

  static Field zeros(const GridSpec& g);
  static Field constant(const GridSpec& g, cplx c);
  /// Sample fn(x) on the grid (x padded with zeros beyond dim).
  static Field from_fn(const GridSpec& g,
                       const std::function<cplx(const std::array<double, 3>&)>& fn,
                       Exec ex = default_exec());
  /// Build directly from unitary modes (inverse transform).
  static Field from_modes(const GridSpec& g, const std::vector<cplx>& modes,
                          Exec ex = default_exec());

  /// Unitary Fourier modes U_k = (2 pi)^{-dim/2} h^dim sum_j u_j e^{-i xi_k x_j},
  /// computed on first use and cached.
  const std::vector<cplx>& modes(Exec ex = default_exec()) const;
  bool has_modes() const { return fourier_cached_.has_value(); }
  void drop_modes() { fourier_cached_.reset(); }

  /// Throws std::invalid_argument on NaN/Inf samples or size mismatch.
  void check_valid() const;

 private:
  mutable std::optional<std::vector<cplx>> fourier_cached_;
};

} // namespace fslab
