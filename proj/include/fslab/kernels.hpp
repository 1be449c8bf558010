#pragma once

/// @file kernels.hpp
/// Deterministic map / reduce primitives over flat arrays.
///
/// Work is split into blocks of kBlock elements.  Pointwise maps process
/// blocks independently (serial or OpenMP), so the two policies write the
/// same bytes.  Reductions compute one partial sum per block (serially
/// inside each block) and then combine the partials in block order on one
/// thread; summation order is therefore fixed, making results bit-identical
/// across Exec::Serial, Exec::Parallel, and any thread count.

#include <complex>
#include <cstddef>
#include <vector>

#include "fslab/exec.hpp"

namespace fslab::kernels {

inline constexpr std::size_t kBlock = 4096;

inline std::size_t block_count(std::size_t count) {
  return (count + kBlock - 1) / kBlock;
}

/// fn(i0, i1) is called once per block with half-open index range [i0, i1).
template <class Fn>
void for_blocks(std::size_t count, Exec ex, Fn&& fn) {
  const std::ptrdiff_t nb = static_cast<std::ptrdiff_t>(block_count(count));
  if (ex == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < nb; ++b) {
      const std::size_t i0 = static_cast<std::size_t>(b) * kBlock;
      const std::size_t i1 = i0 + kBlock < count ? i0 + kBlock : count;
      fn(i0, i1);
    }
  } else {
    for (std::ptrdiff_t b = 0; b < nb; ++b) {
      const std::size_t i0 = static_cast<std::size_t>(b) * kBlock;
      const std::size_t i1 = i0 + kBlock < count ? i0 + kBlock : count;
      fn(i0, i1);
    }
  }
}

/// Deterministic sum of block_fn(i0, i1) over all blocks.
template <class Fn>
double blocked_sum(std::size_t count, Exec ex, Fn&& block_fn) {
  const std::size_t nb = block_count(count);
  std::vector<double> partial(nb, 0.0);
  const std::ptrdiff_t pnb = static_cast<std::ptrdiff_t>(nb);
  if (ex == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < pnb; ++b) {
      const std::size_t i0 = static_cast<std::size_t>(b) * kBlock;
      const std::size_t i1 = i0 + kBlock < count ? i0 + kBlock : count;
      partial[static_cast<std::size_t>(b)] = block_fn(i0, i1);
    }
  } else {
    for (std::ptrdiff_t b = 0; b < pnb; ++b) {
      const std::size_t i0 = static_cast<std::size_t>(b) * kBlock;
      const std::size_t i1 = i0 + kBlock < count ? i0 + kBlock : count;
      partial[static_cast<std::size_t>(b)] = block_fn(i0, i1);
    }
  }
  double total = 0.0;
  for (std::size_t b = 0; b < nb; ++b) total += partial[b];
  return total;
}

template <class Fn>
std::complex<double> blocked_sum_cplx(std::size_t count, Exec ex, Fn&& block_fn) {
  const std::size_t nb = block_count(count);
  std::vector<std::complex<double>> partial(nb, 0.0);
  const std::ptrdiff_t pnb = static_cast<std::ptrdiff_t>(nb);
  if (ex == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < pnb; ++b) {
      const std::size_t i0 = static_cast<std::size_t>(b) * kBlock;
      const std::size_t i1 = i0 + kBlock < count ? i0 + kBlock : count;
      partial[static_cast<std::size_t>(b)] = block_fn(i0, i1);
    }
  } else {
    for (std::ptrdiff_t b = 0; b < pnb; ++b) {
      const std::size_t i0 = static_cast<std::size_t>(b) * kBlock;
      const std::size_t i1 = i0 + kBlock < count ? i0 + kBlock : count;
      partial[static_cast<std::size_t>(b)] = block_fn(i0, i1);
    }
  }
  std::complex<double> total = 0.0;
  for (std::size_t b = 0; b < nb; ++b) total += partial[b];
  return total;
}

/// Deterministic max of block_fn(i0, i1) over all blocks (block_fn returns
/// the max over its range); -inf for empty input handled by caller.
template <class Fn>
double blocked_max(std::size_t count, Exec ex, Fn&& block_fn) {
  const std::size_t nb = block_count(count);
  std::vector<double> partial(nb, 0.0);
  const std::ptrdiff_t pnb = static_cast<std::ptrdiff_t>(nb);
  if (ex == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < pnb; ++b) {
      const std::size_t i0 = static_cast<std::size_t>(b) * kBlock;
      const std::size_t i1 = i0 + kBlock < count ? i0 + kBlock : count;
      partial[static_cast<std::size_t>(b)] = block_fn(i0, i1);
    }
  } else {
    for (std::ptrdiff_t b = 0; b < pnb; ++b) {
      const std::size_t i0 = static_cast<std::size_t>(b) * kBlock;
      const std::size_t i1 = i0 + kBlock < count ? i0 + kBlock : count;
      partial[static_cast<std::size_t>(b)] = block_fn(i0, i1);
    }
  }
  double best = partial.empty() ? 0.0 : partial[0];
  for (std::size_t b = 1; b < nb; ++b)
    if (partial[b] > best) best = partial[b];
  return best;
}

} // namespace fslab::kernels
