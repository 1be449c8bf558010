#include "fslab/gammafn.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fslab {

namespace {

// Lanczos g = 7, 9 terms.
constexpr double kLanczos[9] = {
    0.99999999999980993,    676.5203681218851,     -1259.1392167224028,
    771.32342877765313,     -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_pos(double x) {
  // Gamma(x) for x >= 0.5.
  const double g = 7.0;
  double acc = kLanczos[0];
  for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (x - 1.0 + i);
  const double t = x - 0.5 + g;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x - 0.5) * std::exp(-t) * acc;
}

} // namespace

double gamma_fn(double x) {
  if (!std::isfinite(x)) throw std::domain_error("gamma_fn: non-finite argument");
  if (x <= 0.0 && x == std::floor(x))
    throw std::domain_error("gamma_fn: pole at non-positive integer");
  if (x >= 0.5) return lanczos_pos(x);
  // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
  const double pi = std::numbers::pi;
  return pi / (std::sin(pi * x) * lanczos_pos(1.0 - x));
}

double log_gamma(double x) {
  if (x <= 0.0) throw std::domain_error("log_gamma: requires x > 0");
  if (x >= 0.5) {
    const double g = 7.0;
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (x - 1.0 + i);
    const double t = x - 0.5 + g;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (x - 0.5) * std::log(t) - t + std::log(acc);
  }
  return std::log(gamma_fn(x));
}

double sphere_area(int dim) {
  if (dim < 1) throw std::domain_error("sphere_area: dim must be positive");
  const double pi = std::numbers::pi;
  return 2.0 * std::pow(pi, 0.5 * dim) / gamma_fn(0.5 * dim);
}

} // namespace fslab
