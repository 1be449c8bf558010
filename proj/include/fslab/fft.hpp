#pragma once

/// @file fft.hpp
/// Discrete Fourier transforms for fields.  Backed by serial FFTW line plans;
/// multi-dimensional transforms run the per-axis 1-D lines under OpenMP when
/// Exec::Parallel is selected.  Identical plans (FFTW_ESTIMATE) are used by
/// both policies, so results are bit-identical across policies/thread counts.

#include <complex>
#include <vector>

#include "fslab/exec.hpp"
#include "fslab/grid.hpp"

namespace fslab::fft {

inline constexpr int kForward = -1;
inline constexpr int kBackward = +1;

/// Unnormalized in-place DFT along every axis of the row-major array.
void raw_transform(std::complex<double>* data, const GridSpec& g, int sign, Exec ex);

/// Unnormalized in-place contiguous 1-D DFT (thread-safe; used by the
/// chirp-z resampler from inside parallel regions).
void raw_transform_1d(std::complex<double>* data, int n, int sign);

/// Unitary forward transform: samples -> modes U_k (see grid.hpp for the
/// convention).  Parseval: sum |u_j|^2 h^dim = sum |U_k|^2 (pi/L)^dim.
std::vector<std::complex<double>> forward(const GridSpec& g,
                                          const std::vector<std::complex<double>>& vals,
                                          Exec ex);

/// Unitary inverse of forward().
std::vector<std::complex<double>> backward(const GridSpec& g,
                                           const std::vector<std::complex<double>>& modes,
                                           Exec ex);

} // namespace fslab::fft
