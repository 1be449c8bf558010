#pragma once

/// @file exec.hpp
/// Execution policy shared by all grid kernels.
///
/// Every kernel in this library exists in two flavours: a plain serial loop
/// and an OpenMP version.  Both walk the data in identical fixed-size blocks
/// so that floating-point results are bit-identical regardless of policy or
/// thread count (reductions combine per-block partial sums in block order).

namespace fslab {

enum class Exec {
  Serial,   ///< single thread, no OpenMP region
  Parallel  ///< OpenMP worksharing over blocks
};

/// Set the global thread budget.  0 = library default (all hardware threads),
/// 1 = force serial, k > 1 = parallel with k threads.
void set_threads(int n);

/// Threads the parallel policy will use.
int thread_count();

/// Policy implied by the current thread budget.
Exec default_exec();

} // namespace fslab
