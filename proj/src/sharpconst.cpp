#include "fslab/sharpconst.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "fslab/functionals.hpp"
#include "fslab/gammafn.hpp"

namespace fslab {

double gn_constant_from_groundstate(const GroundStateRecord& phi, const ModelParams& params,
                                    const DerivedExponents& exps, Exec ex) {
  if (phi.kind != ProfileKind::EulerLagrangeUnit)
    throw std::invalid_argument("gn_constant_from_groundstate: record must hold a ground state");
  if (!phi.converged)
    throw std::invalid_argument("gn_constant_from_groundstate: record not converged");
  if (!(exps.B > 0.0))
    throw std::invalid_argument("gn_constant_from_groundstate: B must be positive");
  (void)ex;
  const double norm = std::sqrt(phi.mass);
  return (1.0 + params.p) / exps.A * std::pow(exps.A / exps.B, 0.5 * exps.B) *
         std::pow(norm, -(params.p - 1.0));
}

GnVerifyReport verify_gn_inequality(const std::vector<Field>& samples, const ModelParams& params,
                                    const DerivedExponents& exps, const WeightGrid& w,
                                    double beta, Exec ex) {
  if (!(beta > 0.0)) throw std::invalid_argument("verify_gn_inequality: beta must be positive");
  GnVerifyReport r;
  r.min_J = std::numeric_limits<double>::infinity();
  r.min_margin = std::numeric_limits<double>::infinity();
  for (const auto& u : samples) {
    const double J = weinstein_J(u, params, exps, w, ex);
    ++r.count;
    r.min_J = std::min(r.min_J, J);
    r.min_margin = std::min(r.min_margin, J / beta - 1.0);
    if (J < beta * (1.0 - 1e-3)) ++r.violations;
  }
  return r;
}

double strauss_constant(int N, double alpha) {
  if (!(alpha > 0.5 && alpha < 0.5 * N))
    throw std::invalid_argument("strauss_constant: requires 1/2 < alpha < N/2");
  const double half_n = 0.5 * N;
  const double num = gamma_fn(2.0 * alpha - 1.0) * gamma_fn(half_n - alpha) * gamma_fn(half_n);
  const double den = std::pow(2.0, 2.0 * alpha) * std::pow(std::numbers::pi, half_n) *
                     gamma_fn(alpha) * gamma_fn(alpha) * gamma_fn(half_n - 1.0 + alpha);
  return std::sqrt(num / den);
}

ConstantReport constant_report(const GroundStateRecord& phi, const GroundStateRecord& psi,
                               const ModelParams& params, const DerivedExponents& exps,
                               Exec ex) {
  if (psi.kind != ProfileKind::JMinimizer)
    throw std::invalid_argument("constant_report: psi must be a J-minimizer");
  if (!(psi.beta_value > 0.0))
    throw std::invalid_argument("constant_report: psi carries no beta");
  ConstantReport r;
  r.C_formula = gn_constant_from_groundstate(phi, params, exps, ex);
  r.C_variational = 1.0 / psi.beta_value;
  r.relative_gap = std::abs(r.C_formula - r.C_variational) / r.C_variational;
  if (params.alpha > 0.5 && params.alpha < 0.5 * params.dim)
    r.strauss_C = strauss_constant(params.dim, params.alpha);
  return r;
}

} // namespace fslab
