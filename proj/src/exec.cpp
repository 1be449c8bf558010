#include "fslab/exec.hpp"

#include <omp.h>

namespace fslab {

namespace {
int g_threads = 0; // 0 = auto
}

void set_threads(int n) {
  g_threads = n < 0 ? 0 : n;
  if (g_threads > 0) omp_set_num_threads(g_threads);
}

int thread_count() {
  if (g_threads == 1) return 1;
  if (g_threads > 1) return g_threads;
  return omp_get_max_threads();
}

Exec default_exec() { return thread_count() == 1 ? Exec::Serial : Exec::Parallel; }

} // namespace fslab
