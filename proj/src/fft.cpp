#include "fslab/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "fslab/kernels.hpp"

namespace fslab::fft {

namespace {

using cplx = std::complex<double>;

// Plans are created once per (n, stride, sign) and cached forever.  With
// FFTW_ESTIMATE the planner does not touch the arrays, and fftw_execute_dft
// on distinct data is thread-safe, so cached plans are shared across threads.
fftw_plan get_plan(int n, std::ptrdiff_t stride, int sign) {
  using Key = std::tuple<int, std::ptrdiff_t, int>;
  static std::map<Key, fftw_plan> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  const Key key{n, stride, sign};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<cplx> scratch(static_cast<std::size_t>(n - 1) * stride + 1);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  const int ns[1] = {n};
  const int istride = static_cast<int>(stride);
  fftw_plan plan = fftw_plan_many_dft(1, ns, 1, buf, nullptr, istride, 0, buf, nullptr,
                                      istride, 0, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan) throw std::runtime_error("fft: planner failed");
  cache.emplace(key, plan);
  return plan;
}

void transform_axis(cplx* data, const GridSpec& g, int axis, int sign, Exec ex) {
  const std::size_t n = static_cast<std::size_t>(g.n);
  std::size_t inner = 1;
  for (int d = axis + 1; d < g.dim; ++d) inner *= n;
  const std::size_t outer = g.total() / (inner * n);
  fftw_plan plan = get_plan(g.n, static_cast<std::ptrdiff_t>(inner), sign);

  const std::ptrdiff_t lines = static_cast<std::ptrdiff_t>(outer * inner);
  if (ex == Exec::Parallel && lines > 1) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t l = 0; l < lines; ++l) {
      const std::size_t o = static_cast<std::size_t>(l) / inner;
      const std::size_t i = static_cast<std::size_t>(l) % inner;
      auto* base = reinterpret_cast<fftw_complex*>(data + o * inner * n + i);
      fftw_execute_dft(plan, base, base);
    }
  } else {
    for (std::ptrdiff_t l = 0; l < lines; ++l) {
      const std::size_t o = static_cast<std::size_t>(l) / inner;
      const std::size_t i = static_cast<std::size_t>(l) % inner;
      auto* base = reinterpret_cast<fftw_complex*>(data + o * inner * n + i);
      fftw_execute_dft(plan, base, base);
    }
  }
}

// parity (-1)^{sum of per-axis indices}; the box phase e^{i pi k} of the
// shifted grid collapses to this because n is even.
inline double parity(const GridSpec& g, std::size_t flat) {
  int s = 0;
  for (int d = 0; d < g.dim; ++d) {
    s += static_cast<int>(flat % static_cast<std::size_t>(g.n));
    flat /= static_cast<std::size_t>(g.n);
  }
  return (s & 1) ? -1.0 : 1.0;
}

} // namespace

void raw_transform_1d(std::complex<double>* data, int n, int sign) {
  fftw_plan plan = get_plan(n, 1, sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, buf, buf);
}

void raw_transform(std::complex<double>* data, const GridSpec& g, int sign, Exec ex) {
  for (int axis = 0; axis < g.dim; ++axis) transform_axis(data, g, axis, sign, ex);
}

std::vector<cplx> forward(const GridSpec& g, const std::vector<cplx>& vals, Exec ex) {
  if (vals.size() != g.total()) throw std::invalid_argument("fft::forward: size mismatch");
  std::vector<cplx> work(vals);
  raw_transform(work.data(), g, kForward, ex);
  const double scale =
      std::pow(2.0 * std::numbers::pi, -0.5 * g.dim) * std::pow(g.h(), g.dim);
  kernels::for_blocks(work.size(), ex, [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) work[i] *= scale * parity(g, i);
  });
  return work;
}

std::vector<cplx> backward(const GridSpec& g, const std::vector<cplx>& modes, Exec ex) {
  if (modes.size() != g.total()) throw std::invalid_argument("fft::backward: size mismatch");
  std::vector<cplx> work(modes);
  kernels::for_blocks(work.size(), ex, [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) work[i] *= parity(g, i);
  });
  raw_transform(work.data(), g, kBackward, ex);
  const double scale =
      std::pow(2.0 * std::numbers::pi, -0.5 * g.dim) * std::pow(std::numbers::pi / g.L, g.dim);
  kernels::for_blocks(work.size(), ex, [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) work[i] *= scale;
  });
  return work;
}

} // namespace fslab::fft
