#include "fslab/fieldops.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "fslab/fft.hpp"
#include "fslab/kernels.hpp"

namespace fslab {

Field apply_fractional_laplacian(const Field& u, double alpha, Exec ex) {
  if (!(alpha > 0.0)) throw std::invalid_argument("apply_fractional_laplacian: alpha <= 0");
  const auto& xi2 = xi_squared_table(u.grid);
  std::vector<cplx> modes = u.modes(ex);
  kernels::for_blocks(modes.size(), ex, [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i)
      modes[i] *= xi2[i] == 0.0 ? 0.0 : std::pow(xi2[i], alpha);
  });
  return Field::from_modes(u.grid, modes, ex);
}

double l2_norm(const Field& u, Exec ex) {
  const double hw = std::pow(u.grid.h(), u.grid.dim);
  const double s = kernels::blocked_sum(u.values.size(), ex, [&](std::size_t i0, std::size_t i1) {
    double acc = 0.0;
    for (std::size_t i = i0; i < i1; ++i) acc += std::norm(u.values[i]);
    return acc;
  });
  return std::sqrt(s * hw);
}

double hs_seminorm(const Field& u, double alpha, Exec ex) {
  const auto& xi2 = xi_squared_table(u.grid);
  const auto& modes = u.modes(ex);
  const double dxi = std::pow(std::numbers::pi / u.grid.L, u.grid.dim);
  const double s = kernels::blocked_sum(modes.size(), ex, [&](std::size_t i0, std::size_t i1) {
    double acc = 0.0;
    for (std::size_t i = i0; i < i1; ++i) {
      if (xi2[i] == 0.0) continue;
      acc += std::pow(xi2[i], alpha) * std::norm(modes[i]);
    }
    return acc;
  });
  return std::sqrt(s * dxi);
}

double halpha_norm(const Field& u, double alpha, Exec ex) {
  const double m = l2_norm(u, ex);
  const double g = hs_seminorm(u, alpha, ex);
  return std::sqrt(m * m + g * g);
}

std::complex<double> inner_l2(const Field& a, const Field& b, Exec ex) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("inner_l2: grid mismatch");
  const double hw = std::pow(a.grid.h(), a.grid.dim);
  const cplx s =
      kernels::blocked_sum_cplx(a.values.size(), ex, [&](std::size_t i0, std::size_t i1) {
        cplx acc = 0.0;
        for (std::size_t i = i0; i < i1; ++i) acc += a.values[i] * std::conj(b.values[i]);
        return acc;
      });
  return s * hw;
}

std::complex<double> inner_halpha(const Field& a, const Field& b, double alpha, Exec ex) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("inner_halpha: grid mismatch");
  const auto& xi2 = xi_squared_table(a.grid);
  const auto& ma = a.modes(ex);
  const auto& mb = b.modes(ex);
  const double dxi = std::pow(std::numbers::pi / a.grid.L, a.grid.dim);
  const cplx s = kernels::blocked_sum_cplx(ma.size(), ex, [&](std::size_t i0, std::size_t i1) {
    cplx acc = 0.0;
    for (std::size_t i = i0; i < i1; ++i) {
      const double mult = 1.0 + (xi2[i] == 0.0 ? 0.0 : std::pow(xi2[i], alpha));
      acc += mult * ma[i] * std::conj(mb[i]);
    }
    return acc;
  });
  return s * dxi;
}

double weighted_power_integral(const Field& u, const WeightGrid& w, double q, Exec ex) {
  if (!(u.grid == w.grid)) throw std::invalid_argument("weighted_power_integral: grid mismatch");
  if (!(q >= 1.0)) throw std::invalid_argument("weighted_power_integral: q must be >= 1");
  const double hw = std::pow(u.grid.h(), u.grid.dim);
  const double s = kernels::blocked_sum(u.values.size(), ex, [&](std::size_t i0, std::size_t i1) {
    double acc = 0.0;
    for (std::size_t i = i0; i < i1; ++i) {
      const double a2 = std::norm(u.values[i]);
      if (a2 == 0.0 || w.samples[i] == 0.0) continue;
      acc += w.samples[i] * std::pow(a2, 0.5 * q);
    }
    return acc;
  });
  return s * hw;
}

double radial_decay_sup(const Field& u, double alpha, Exec ex) {
  const double N = u.grid.dim;
  if (!(alpha > 0.5 && alpha < 0.5 * N))
    throw std::invalid_argument("radial_decay_sup: requires 1/2 < alpha < dim/2");
  const GridSpec g = u.grid;
  const double expo = 0.5 * N - alpha;
  return kernels::blocked_max(u.values.size(), ex, [&](std::size_t i0, std::size_t i1) {
    double best = 0.0;
    for (std::size_t i = i0; i < i1; ++i) {
      const auto idx = g.unflatten(i);
      double r2 = 0.0;
      for (int d = 0; d < g.dim; ++d) {
        const double x = g.coord(idx[d]);
        r2 += x * x;
      }
      if (r2 == 0.0) continue;
      const double v = std::pow(r2, 0.5 * expo) * std::abs(u.values[i]);
      if (v > best) best = v;
    }
    return best;
  });
}

double out_of_box_fraction(const Field& u, double b, Exec ex) {
  if (!(b > 0.0)) throw std::invalid_argument("out_of_box_fraction: b must be positive");
  if (b >= 1.0) return 0.0;
  const GridSpec g = u.grid;
  const double cut = b * g.L;
  double outer = kernels::blocked_sum(u.values.size(), ex, [&](std::size_t i0, std::size_t i1) {
    double acc = 0.0;
    for (std::size_t i = i0; i < i1; ++i) {
      const auto idx = g.unflatten(i);
      double linf = 0.0;
      for (int d = 0; d < g.dim; ++d) linf = std::max(linf, std::abs(g.coord(idx[d])));
      if (linf > cut) acc += std::norm(u.values[i]);
    }
    return acc;
  });
  double total = kernels::blocked_sum(u.values.size(), ex, [&](std::size_t i0, std::size_t i1) {
    double acc = 0.0;
    for (std::size_t i = i0; i < i1; ++i) acc += std::norm(u.values[i]);
    return acc;
  });
  return total == 0.0 ? 0.0 : outer / total;
}

double boundary_mass_fraction(const Field& u, Exec ex) {
  const GridSpec g = u.grid;
  const double cut = 0.875 * g.L;
  double outer = kernels::blocked_sum(u.values.size(), ex, [&](std::size_t i0, std::size_t i1) {
    double acc = 0.0;
    for (std::size_t i = i0; i < i1; ++i) {
      const auto idx = g.unflatten(i);
      double linf = 0.0;
      for (int d = 0; d < g.dim; ++d) linf = std::max(linf, std::abs(g.coord(idx[d])));
      if (linf >= cut) acc += std::norm(u.values[i]);
    }
    return acc;
  });
  double total = kernels::blocked_sum(u.values.size(), ex, [&](std::size_t i0, std::size_t i1) {
    double acc = 0.0;
    for (std::size_t i = i0; i < i1; ++i) acc += std::norm(u.values[i]);
    return acc;
  });
  return total == 0.0 ? 0.0 : outer / total;
}

double spectral_tail_fraction(const Field& u, Exec ex) {
  const GridSpec g = u.grid;
  const auto& modes = u.modes(ex);
  const int cutk = g.n / 3;
  double tail = kernels::blocked_sum(modes.size(), ex, [&](std::size_t i0, std::size_t i1) {
    double acc = 0.0;
    for (std::size_t i = i0; i < i1; ++i) {
      const auto idx = g.unflatten(i);
      int kmax = 0;
      for (int d = 0; d < g.dim; ++d) kmax = std::max(kmax, std::abs(g.wavenumber(idx[d])));
      if (kmax >= cutk) acc += std::norm(modes[i]);
    }
    return acc;
  });
  double total = kernels::blocked_sum(modes.size(), ex, [&](std::size_t i0, std::size_t i1) {
    double acc = 0.0;
    for (std::size_t i = i0; i < i1; ++i) acc += std::norm(modes[i]);
    return acc;
  });
  return total == 0.0 ? 0.0 : tail / total;
}

namespace {

Field apply_index_map(const Field& u, const std::function<std::size_t(std::size_t)>& src_of) {
  std::vector<cplx> v(u.values.size());
  kernels::for_blocks(v.size(), default_exec(), [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) v[i] = u.values[src_of(i)];
  });
  return Field(u.grid, std::move(v));
}

double rel_l2_diff(const Field& a, const Field& b, Exec ex) {
  const double denom = l2_norm(a, ex);
  if (denom == 0.0) return 0.0;
  double s = kernels::blocked_sum(a.values.size(), ex, [&](std::size_t i0, std::size_t i1) {
    double acc = 0.0;
    for (std::size_t i = i0; i < i1; ++i) acc += std::norm(a.values[i] - b.values[i]);
    return acc;
  });
  return std::sqrt(s * std::pow(a.grid.h(), a.grid.dim)) / denom;
}

} // namespace

double rotation_asymmetry(const Field& u, Exec ex) {
  const GridSpec g = u.grid;
  const int n = g.n;
  double worst = 0.0;

  // point reflection x -> -x (exact for radial fields)
  Field refl = apply_index_map(u, [&](std::size_t i) {
    auto idx = g.unflatten(i);
    std::array<int, 3> s{0, 0, 0};
    for (int d = 0; d < g.dim; ++d) s[d] = (n - idx[d]) % n;
    return g.flatten(s);
  });
  worst = std::max(worst, rel_l2_diff(u, refl, ex));

  // 90-degree rotation in every coordinate plane: (R u)(x) = u(R^{-1} x),
  // R^{-1}(x_a, x_b) = (x_b, -x_a); -coord(j) sits at index (n - j) % n.
  for (int a = 0; a < g.dim; ++a) {
    for (int b = a + 1; b < g.dim; ++b) {
      Field rot = apply_index_map(u, [&](std::size_t i) {
        auto idx = g.unflatten(i);
        std::array<int, 3> s = idx;
        s[a] = idx[b];
        s[b] = (n - idx[a]) % n;
        return g.flatten(s);
      });
      worst = std::max(worst, rel_l2_diff(u, rot, ex));
    }
  }
  return worst;
}

std::vector<std::array<double, 3>> radial_profile(const Field& u) {
  const GridSpec g = u.grid;
  std::vector<std::array<double, 3>> prof;
  prof.reserve(static_cast<std::size_t>(g.n) / 2);
  std::array<int, 3> idx{0, 0, 0};
  for (int d = 0; d < g.dim; ++d) idx[d] = g.n / 2;
  for (int j = g.n / 2; j < g.n; ++j) {
    idx[0] = j;
    const cplx v = u.values[g.flatten(idx)];
    prof.push_back({g.coord(j), v.real(), v.imag()});
  }
  return prof;
}

Field periodic_shift(const Field& u, const std::array<int, 3>& shift) {
  const GridSpec g = u.grid;
  const int n = g.n;
  auto wrap = [n](int j) { return ((j % n) + n) % n; };
  return apply_index_map(u, [&](std::size_t i) {
    auto idx = g.unflatten(i);
    std::array<int, 3> s{0, 0, 0};
    for (int d = 0; d < g.dim; ++d) s[d] = wrap(idx[d] - shift[d]);
    return g.flatten(s);
  });
}

namespace {

// radius classes: |x_j|^2 = h^2 * sum_d (idx_d - n/2)^2, so the integer sum
// of squared centered indices labels equal-radius orbits exactly
struct RadiusClasses {
  std::vector<std::int32_t> class_of;  // flat index -> class id
  std::vector<double> inv_count;       // class id -> 1/orbit size
  std::size_t n_classes = 0;
};

const RadiusClasses& radius_classes(const GridSpec& g) {
  static std::map<std::pair<int, int>, std::shared_ptr<RadiusClasses>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto& slot = cache[{g.dim, g.n}];
  if (!slot) {
    auto rc = std::make_shared<RadiusClasses>();
    const std::size_t total = g.total();
    const int smax = g.dim * (g.n / 2) * (g.n / 2) + 1;
    rc->class_of.resize(total);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(smax) + 1, 0);
    for (std::size_t i = 0; i < total; ++i) {
      const auto idx = g.unflatten(i);
      int s = 0;
      for (int d = 0; d < g.dim; ++d) {
        const int c = idx[d] - g.n / 2;
        s += c * c;
      }
      rc->class_of[i] = s;
      ++counts[s];
    }
    rc->inv_count.resize(counts.size(), 0.0);
    for (std::size_t s = 0; s < counts.size(); ++s)
      if (counts[s] > 0) rc->inv_count[s] = 1.0 / static_cast<double>(counts[s]);
    rc->n_classes = counts.size();
    slot = std::move(rc);
  }
  return *slot;
}

} // namespace

Field radialize(const Field& u, Exec ex) {
  return radialize(u, std::numeric_limits<double>::infinity(), ex);
}

Field zero_beyond(const Field& u, double rcut, Exec ex) {
  if (!(rcut > 0.0)) throw std::invalid_argument("zero_beyond: rcut must be positive");
  const GridSpec g = u.grid;
  const double scut = rcut * rcut / (g.h() * g.h());
  Field out(g, std::vector<cplx>(g.total()));
  kernels::for_blocks(g.total(), ex, [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) {
      const auto idx = g.unflatten(i);
      int s = 0;
      for (int d = 0; d < g.dim; ++d) {
        const int c = idx[d] - g.n / 2;
        s += c * c;
      }
      out.values[i] = static_cast<double>(s) > scut ? cplx{0.0, 0.0} : u.values[i];
    }
  });
  return out;
}

Field symmetrize_point_group(const Field& u, Exec ex) {
  const GridSpec g = u.grid;
  const int dim = g.dim, n = g.n;
  std::array<int, 3> p{0, 1, 2};
  std::vector<std::array<int, 3>> perms;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.begin() + dim));
  const unsigned nflip = 1u << dim;
  const double invg = 1.0 / (static_cast<double>(perms.size()) * nflip);
  const std::size_t total = g.total();
  Field out(g, std::vector<cplx>(total));
  kernels::for_blocks(total, ex, [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) {
      const auto idx = g.unflatten(i);
      cplx acc{0.0, 0.0};
      std::array<int, 3> src{0, 0, 0};
      for (const auto& pm : perms) {
        for (unsigned mask = 0; mask < nflip; ++mask) {
          for (int d = 0; d < dim; ++d) {
            int v = idx[pm[d]];
            if (mask & (1u << d)) v = (n - v) % n;  // x -> -x, Nyquist plane fixed
            src[d] = v;
          }
          acc += u.values[g.flatten(src)];
        }
      }
      out.values[i] = acc * invg;
    }
  });
  return out;
}

Field radialize(const Field& u, double rcut, Exec ex) {
  if (!(rcut > 0.0)) throw std::invalid_argument("radialize: rcut must be positive");
  const GridSpec g = u.grid;
  const RadiusClasses& rc = radius_classes(g);
  const std::size_t total = g.total();
  std::vector<cplx> sums(rc.n_classes, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < total; ++i) sums[rc.class_of[i]] += u.values[i];
  // class id s is |x|^2 / h^2; the cut keeps orbits with |x| <= rcut
  const double h2 = g.h() * g.h();
  const double scut = rcut * rcut / h2;
  for (std::size_t s = 0; s < rc.n_classes; ++s)
    if (static_cast<double>(s) > scut) sums[s] = cplx{0.0, 0.0};
  Field out(g, std::vector<cplx>(total));
  kernels::for_blocks(total, ex, [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) {
      const std::int32_t s = rc.class_of[i];
      out.values[i] = sums[s] * rc.inv_count[s];
    }
  });
  return out;
}

} // namespace fslab
