#pragma once

/// @file sharpconst.hpp
/// Sharp Gagliardo-Nirenberg constant via two independent routes (closed
/// formula from the ground state vs 1/beta from the J-minimizer) and the
/// explicit Strauss radial-decay constant.

#include <optional>
#include <vector>

#include "fslab/field.hpp"
#include "fslab/groundstate.hpp"
#include "fslab/params.hpp"

namespace fslab {

struct ConstantReport {
  double C_formula = 0.0;      ///< (1+p)/A (A/B)^{B/2} ||phi||^{-(p-1)}
  double C_variational = 0.0;  ///< 1/beta from the J-minimizer
  double relative_gap = 0.0;   ///< |C_formula - C_variational| / C_variational
  std::optional<double> strauss_C;  ///< C(N, alpha) when 1/2 < alpha < N/2
};

/// Closed formula of the sharp constant from a converged ground state.
/// Throws std::invalid_argument when B <= 0 or phi is not a converged
/// ground state.
double gn_constant_from_groundstate(const GroundStateRecord& phi, const ModelParams& params,
                                    const DerivedExponents& exps, Exec ex = default_exec());

struct GnVerifyReport {
  int count = 0;
  int violations = 0;      ///< samples with J < beta (1 - 1e-3)
  double min_J = 0.0;
  double min_margin = 0.0; ///< min over samples of J/beta - 1
};

/// Checks J(u) >= beta (1 - 1e-3) on every nonzero sample.
GnVerifyReport verify_gn_inequality(const std::vector<Field>& samples, const ModelParams& params,
                                    const DerivedExponents& exps, const WeightGrid& w,
                                    double beta, Exec ex = default_exec());

/// C(N, alpha) = ( Gamma(2a-1) Gamma(N/2-a) Gamma(N/2)
///              / (2^{2a} pi^{N/2} Gamma(a)^2 Gamma(N/2-1+a)) )^{1/2}, a = alpha.
/// Valid for 1/2 < alpha < N/2; throws std::invalid_argument outside.
double strauss_constant(int N, double alpha);

/// Bundle both routes (phi and psi must be converged records of the two
/// kinds at the same params).
ConstantReport constant_report(const GroundStateRecord& phi, const GroundStateRecord& psi,
                               const ModelParams& params, const DerivedExponents& exps,
                               Exec ex = default_exec());

} // namespace fslab
