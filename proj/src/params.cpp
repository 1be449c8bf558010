#include "fslab/params.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fslab {

namespace {
constexpr double kRelTol = 1e-12;

bool nearly(double x, double y) {
  return std::abs(x - y) <= kRelTol * std::max({1.0, std::abs(x), std::abs(y)});
}
} // namespace

void ModelParams::validate() const {
  if (dim < 1 || dim > 3)
    throw std::invalid_argument("ModelParams: dim must be 1, 2 or 3");
  if (dim == 1 && !debug_mode)
    throw std::invalid_argument("ModelParams: dim=1 requires debug_mode");
  if (!(alpha > 0.0))
    throw std::invalid_argument("ModelParams: alpha must be positive");
  if (alpha >= 1.0 && !(debug_mode && alpha == 1.0))
    throw std::invalid_argument("ModelParams: alpha must lie in (0,1) (alpha=1 only in debug_mode)");
  if (!(p > 0.0))
    throw std::invalid_argument("ModelParams: p must be positive");
  if (epsilon != 1 && epsilon != -1)
    throw std::invalid_argument("ModelParams: epsilon must be +1 or -1");
  if (!(gamma > -static_cast<double>(dim)))
    throw std::invalid_argument("ModelParams: gamma must exceed -dim (weight integrability)");
  if (gamma != 0.0 && !(dim - 2.0 * alpha > 0.0))
    throw std::invalid_argument("ModelParams: gamma != 0 requires N - 2 alpha > 0");
}

const char* to_string(Criticality c) {
  switch (c) {
    case Criticality::Subcritical: return "subcritical";
    case Criticality::Critical: return "critical";
    case Criticality::Supercritical: return "supercritical";
  }
  return "?";
}

DerivedExponents derive_exponents(const ModelParams& params) {
  params.validate();
  const double N = params.dim;
  DerivedExponents e;
  e.B = (N * (params.p - 1.0) - 2.0 * params.gamma) / (2.0 * params.alpha);
  e.A = 1.0 + params.p - e.B;
  if (params.gamma != 0.0) {
    e.sigma_exp = params.p + 1.0 - 2.0 * params.gamma / (N - 2.0 * params.alpha);
  } else {
    e.sigma_exp = params.p + 1.0;
  }
  // mu = (N/alpha)(1/2 - 1/s); s > 0 is guaranteed on the admissible window,
  // but derive_exponents is also used for inadmissible probes, so guard s=0.
  if (e.sigma_exp == 0.0)
    throw std::invalid_argument("derive_exponents: s = 0, mu undefined");
  e.mu = (N / params.alpha) * (0.5 - 1.0 / e.sigma_exp);
  return e;
}

double gn_upper_endpoint(const ModelParams& params) {
  const double N = params.dim;
  const double d = N - 2.0 * params.alpha;
  if (!(d > 0.0)) return std::numeric_limits<double>::infinity();
  return 2.0 * N / d;
}

RegimeReport classify_regime(const ModelParams& params, const DerivedExponents& exps,
                             std::optional<double> sharp_constant) {
  params.validate();
  RegimeReport r;
  const double N = params.dim;
  const double s = exps.sigma_exp;
  const double hi = gn_upper_endpoint(params);

  const bool lo_eq = nearly(s, 2.0);
  const bool hi_eq = std::isfinite(hi) && nearly(s, hi);
  r.gn_admissible = (s > 2.0 || lo_eq) && (s < hi || hi_eq);
  r.gn_strict = r.gn_admissible && !lo_eq && !hi_eq;
  r.wellposed_alpha = params.alpha > N / (2.0 * N - 1.0) && params.alpha < 1.0;

  if (nearly(exps.B, 2.0))
    r.criticality = Criticality::Critical;
  else if (exps.B < 2.0)
    r.criticality = Criticality::Subcritical;
  else
    r.criticality = Criticality::Supercritical;

  if (r.criticality == Criticality::Critical && sharp_constant) {
    if (!(*sharp_constant > 0.0))
      throw std::invalid_argument("classify_regime: sharp constant must be positive");
    r.mass_threshold = std::pow((params.p + 1.0) / (2.0 * *sharp_constant), 2.0 / exps.A);
  }
  return r;
}

RegimeReport check_gn_window(const ModelParams& params) {
  return classify_regime(params, derive_exponents(params));
}

double mass_critical_p(const ModelParams& params) {
  params.validate();
  return 1.0 + (4.0 * params.alpha + 2.0 * params.gamma) / params.dim;
}

} // namespace fslab
