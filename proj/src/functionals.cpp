#include "fslab/functionals.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "fslab/fft.hpp"
#include "fslab/fieldops.hpp"
#include "fslab/kernels.hpp"

namespace fslab {

namespace {

// Oversampled companion of a base grid: same box, os times the points per
// axis, plus the weight sampled there and the spectral embedding (base flat
// mode index -> fine flat mode index at the same wavenumber).  Cached per
// (grid, gamma) like the xi^2 tables; one entry is a few MB.
struct FineContext {
  GridSpec fine;
  WeightGrid weight;
  std::vector<std::size_t> embed;
};

const FineContext& fine_context(const GridSpec& g, double gamma) {
  using Key = std::tuple<int, int, double, double>;
  static std::map<Key, std::shared_ptr<const FineContext>> cache;
  static std::mutex mtx;
  const Key key{g.dim, g.n, g.L, gamma};
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }

  auto ctx = std::make_shared<FineContext>();
  // 4x represents |u|^{p-1} u exactly through quintic powers of a
  // band-limited u; past 2^24 fine points fall back to 2x, where the fold-back
  // only reaches the far tail of the product's spectrum.
  const int os = std::pow(4.0 * g.n, g.dim) > 16'777'216.0 ? 2 : 4;
  ctx->fine = g;
  ctx->fine.n = os * g.n;
  ctx->weight = make_weight(ctx->fine, gamma);

  // per-axis map: storage index -> signed wavenumber -> fine storage index
  std::vector<std::size_t> axis(g.n);
  for (int i = 0; i < g.n; ++i) {
    const int m = i < g.n / 2 ? i : i - g.n;
    axis[static_cast<std::size_t>(i)] = static_cast<std::size_t>(m >= 0 ? m : m + ctx->fine.n);
  }
  ctx->embed.resize(g.total());
  for (std::size_t flat = 0; flat < g.total(); ++flat) {
    std::size_t rem = flat, fine_flat = 0;
    std::size_t stride = 1;
    for (int d = g.dim - 1; d >= 0; --d) {
      fine_flat += axis[rem % static_cast<std::size_t>(g.n)] * stride;
      rem /= static_cast<std::size_t>(g.n);
      stride *= static_cast<std::size_t>(ctx->fine.n);
    }
    ctx->embed[flat] = fine_flat;
  }

  std::lock_guard<std::mutex> lock(mtx);
  auto [it, inserted] = cache.emplace(key, std::move(ctx));
  return *it->second;
}

// Samples of the interpolant of u on the fine grid.  Zero-padding the unitary
// modes is exact: the backward scale (pi/L)^dim depends on the box alone.
std::vector<cplx> interpolant_fine(const FineContext& fc, const Field& u, Exec ex) {
  const auto& um = u.modes(ex);
  std::vector<cplx> fm(fc.fine.total(), cplx{0.0, 0.0});
  kernels::for_blocks(um.size(), ex, [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) fm[fc.embed[i]] = um[i];
  });
  return fft::backward(fc.fine, fm, ex);
}

KHReport assemble_K(double M, double G2, double P, const ModelParams& params, double a,
                    double b, KabFormula formula) {
  const double N = params.dim;
  const double denom = 2.0 * a + N * b;
  if (denom == 0.0) throw std::invalid_argument("K_ab: 2a + Nb = 0, H undefined");

  const double quad_coeff = formula == KabFormula::ScalingDerivative
                                ? 0.5 * (2.0 * a + (N - 2.0 * params.alpha) * b)
                                : 0.5 * (2.0 * a + (N - params.alpha) * b);

  KHReport r;
  r.a = a;
  r.b = b;
  r.K_quad = 0.5 * denom * M + quad_coeff * G2;
  r.K_nonlin = -params.epsilon * ((params.p + 1.0) * a + (N + params.gamma) * b) /
               (params.p + 1.0) * P;
  r.K = r.K_quad + r.K_nonlin;
  const double S = 0.5 * (M + G2) - params.epsilon / (params.p + 1.0) * P;
  r.H = S - r.K / denom;
  return r;
}

} // namespace

double mass(const Field& u, Exec ex) {
  const double n = l2_norm(u, ex);
  return n * n;
}

double nonlinear_integral(const Field& u, const ModelParams& params, const WeightGrid& w,
                          Exec ex) {
  return weighted_power_integral(u, w, params.p + 1.0, ex);
}

double nonlinear_integral_dealiased(const Field& u, const ModelParams& params, Exec ex) {
  u.check_valid();
  const FineContext& fc = fine_context(u.grid, params.gamma);
  const std::vector<cplx> uf = interpolant_fine(fc, u, ex);
  const auto& w = fc.weight.samples;
  const double hw = std::pow(fc.fine.h(), fc.fine.dim);
  const double q = 0.5 * (params.p + 1.0);
  const double s = kernels::blocked_sum(uf.size(), ex, [&](std::size_t i0, std::size_t i1) {
    double acc = 0.0;
    for (std::size_t i = i0; i < i1; ++i) {
      const double a2 = std::norm(uf[i]);
      if (a2 == 0.0 || w[i] == 0.0) continue;
      acc += w[i] * std::pow(a2, q);
    }
    return acc;
  });
  return s * hw;
}

std::vector<cplx> nonlinear_modes_dealiased(const Field& u, const ModelParams& params, Exec ex) {
  u.check_valid();
  const FineContext& fc = fine_context(u.grid, params.gamma);
  std::vector<cplx> uf = interpolant_fine(fc, u, ex);
  const auto& w = fc.weight.samples;
  const double e = 0.5 * (params.p - 1.0);
  kernels::for_blocks(uf.size(), ex, [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) {
      const double a2 = std::norm(uf[i]);
      uf[i] = a2 == 0.0 ? cplx{0.0, 0.0} : w[i] * uf[i] * std::pow(a2, e);
    }
  });
  const std::vector<cplx> vm = fft::forward(fc.fine, uf, ex);
  std::vector<cplx> out(u.grid.total());
  kernels::for_blocks(out.size(), ex, [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) out[i] = vm[fc.embed[i]];
  });
  return out;
}

double energy(const Field& u, const ModelParams& params, const WeightGrid& w, Exec ex) {
  const double g = hs_seminorm(u, params.alpha, ex);
  const double P = nonlinear_integral(u, params, w, ex);
  return 0.5 * g * g - params.epsilon / (params.p + 1.0) * P;
}

double action(const Field& u, const ModelParams& params, const WeightGrid& w, Exec ex) {
  return energy(u, params, w, ex) + 0.5 * mass(u, ex);
}

double weinstein_J(const Field& u, const ModelParams& params, const DerivedExponents& exps,
                   const WeightGrid& w, Exec ex) {
  const double P = nonlinear_integral(u, params, w, ex);
  if (!(P > 0.0)) throw std::invalid_argument("weinstein_J: degenerate input, P(u) = 0");
  const double g = hs_seminorm(u, params.alpha, ex);
  const double m = l2_norm(u, ex);
  return std::pow(g, exps.B) * std::pow(m, exps.A) / P;
}

double weinstein_J_dealiased(const Field& u, const ModelParams& params,
                             const DerivedExponents& exps, Exec ex) {
  const double P = nonlinear_integral_dealiased(u, params, ex);
  if (!(P > 0.0)) throw std::invalid_argument("weinstein_J: degenerate input, P(u) = 0");
  const double g = hs_seminorm(u, params.alpha, ex);
  const double m = l2_norm(u, ex);
  return std::pow(g, exps.B) * std::pow(m, exps.A) / P;
}

KHReport K_ab(const Field& u, const ModelParams& params, const WeightGrid& w, double a,
              double b, Exec ex, KabFormula formula) {
  const double gs = hs_seminorm(u, params.alpha, ex);
  return assemble_K(mass(u, ex), gs * gs, nonlinear_integral(u, params, w, ex), params, a, b,
                    formula);
}

KHReport K_ab_dealiased(const Field& u, const ModelParams& params, double a, double b, Exec ex,
                        KabFormula formula) {
  const double gs = hs_seminorm(u, params.alpha, ex);
  return assemble_K(mass(u, ex), gs * gs, nonlinear_integral_dealiased(u, params, ex), params, a,
                    b, formula);
}

FunctionalReport functional_report(const Field& u, const ModelParams& params,
                                   const DerivedExponents& exps, const WeightGrid& w, Exec ex) {
  FunctionalReport r;
  r.mass = mass(u, ex);
  const double g = hs_seminorm(u, params.alpha, ex);
  r.nonlinear_integral = nonlinear_integral(u, params, w, ex);
  r.energy = 0.5 * g * g - params.epsilon / (params.p + 1.0) * r.nonlinear_integral;
  r.action = r.energy + 0.5 * r.mass;
  r.sigma_norm = std::pow(r.nonlinear_integral, 1.0 / (params.p + 1.0));
  r.weinstein = r.nonlinear_integral > 0.0
                    ? std::pow(g, exps.B) * std::pow(std::sqrt(r.mass), exps.A) /
                          r.nonlinear_integral
                    : std::numeric_limits<double>::quiet_NaN();
  return r;
}

} // namespace fslab
