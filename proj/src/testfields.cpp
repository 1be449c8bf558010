#include "fslab/testfields.hpp"

#include <cmath>

namespace fslab {

Field gaussian_field(const GridSpec& g, double c, double amp, Exec ex) {
  return Field::from_fn(
      g,
      [c, amp](const std::array<double, 3>& x) {
        const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        return cplx{amp * std::exp(-c * r2), 0.0};
      },
      ex);
}

Field ring_field(const GridSpec& g, int k, double c, double amp, Exec ex) {
  return Field::from_fn(
      g,
      [k, c, amp](const std::array<double, 3>& x) {
        const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        return cplx{amp * std::pow(r2, k) * std::exp(-c * r2), 0.0};
      },
      ex);
}

Field random_radial_field(const GridSpec& g, std::mt19937_64& rng, Exec ex) {
  std::uniform_int_distribution<int> count_dist(2, 4);
  std::uniform_int_distribution<int> kind_dist(0, 1);
  std::uniform_int_distribution<int> ring_pow(1, 2);
  std::uniform_real_distribution<double> logc(std::log(0.3), std::log(3.0));
  std::uniform_real_distribution<double> ampd(0.2, 1.0);

  // draw all parameters first so RNG consumption is independent of grid size
  struct Part {
    int kind, k;
    double c, amp;
  };
  std::vector<Part> parts(count_dist(rng));
  for (auto& pt : parts)
    pt = {kind_dist(rng), ring_pow(rng), std::exp(logc(rng)), ampd(rng)};

  return Field::from_fn(
      g,
      [&parts](const std::array<double, 3>& x) {
        const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        double v = 0.0;
        for (const auto& pt : parts) {
          const double base = pt.amp * std::exp(-pt.c * r2);
          v += pt.kind == 0 ? base : base * std::pow(r2, pt.k);
        }
        return cplx{v, 0.0};
      },
      ex);
}

Field random_complex_radial_field(const GridSpec& g, std::mt19937_64& rng, Exec ex) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> logc(std::log(0.4), std::log(2.0));
  const cplx c0{coef(rng), coef(rng)};
  const cplx c1{coef(rng), coef(rng)};
  const double c = std::exp(logc(rng));
  return Field::from_fn(
      g,
      [c0, c1, c](const std::array<double, 3>& x) {
        const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        return (c0 + c1 * r2) * std::exp(-c * r2);
      },
      ex);
}

std::vector<Field> standard_battery(const GridSpec& g, std::uint64_t seed, int count, Exec ex) {
  std::vector<Field> out;
  out.reserve(static_cast<std::size_t>(count));
  const int n_gauss = std::min(5, count);
  for (int i = 0; i < n_gauss; ++i) {
    const double c = 0.3 * std::pow(10.0, i / 4.0);  // log grid 0.3 .. 3
    out.push_back(gaussian_field(g, c, 1.0, ex));
  }
  const int n_ring = std::min(5, count - n_gauss);
  for (int i = 0; i < n_ring; ++i)
    out.push_back(ring_field(g, 1 + i % 2, 0.5 + 0.25 * i, 1.0, ex));
  std::mt19937_64 rng(seed);
  while (static_cast<int>(out.size()) < count) out.push_back(random_radial_field(g, rng, ex));
  return out;
}

} // namespace fslab
