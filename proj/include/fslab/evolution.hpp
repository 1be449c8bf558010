#pragma once

/// @file evolution.hpp
/// Split-step time integration of
///     i u_t - (-Lap)^alpha u + eps |x|^gamma u |u|^{p-1} = 0
/// (Strang composition of the exact linear Fourier phase and the exact
/// pointwise nonlinear phase), plus the stability/trapping diagnostics.

#include <optional>
#include <utility>
#include <vector>

#include "fslab/field.hpp"
#include "fslab/functionals.hpp"
#include "fslab/params.hpp"

namespace fslab {

struct EvolutionConfig {
  double dt = 1e-3;
  double T = 1.0;
  int record_every = 100;              ///< steps between diagnostic samples
  double blowup_norm_factor = 1e3;     ///< Hdot^alpha growth treated as blow-up
  double spectral_tail_limit = 0.1;    ///< max spectral energy fraction at |k| >= n/3
  void validate() const;               ///< throws std::invalid_argument
};

enum class EvolutionOutcome { Completed, BlowupSuspected, ResolutionFailure };

struct EvolutionTrace {
  std::vector<double> times;
  std::vector<double> mass_series;
  std::vector<double> energy_series;
  std::vector<double> hs_series;
  std::vector<double> orbital_distance_series;  ///< empty unless a reference orbit is tracked
  std::vector<int> K_flags;                     ///< empty unless a (a,b) pair is tracked; sign of K
  EvolutionOutcome outcome = EvolutionOutcome::Completed;
  long long steps_taken = 0;
  Field final_state;
};

/// Optional per-sample diagnostics.
struct TraceOptions {
  const Field* orbit_reference = nullptr;             ///< track dist to {e^{i theta} ref}
  std::optional<std::pair<double, double>> k_pair;    ///< track sign of K_{a,b}(u(t))
};

/// Free flow over time t: modes multiplied by e^{-i t |xi|^{2 alpha}}.
Field linear_propagator_step(const Field& u, double t, double alpha, Exec ex = default_exec());

/// Exact nonlinear sub-flow over time t: u <- e^{i eps t w |u|^{p-1}} u.
Field nonlinear_phase_step(const Field& u, double t, const WeightGrid& w, double p, int eps,
                           Exec ex = default_exec());

/// One Strang step L(dt/2) N(dt) L(dt/2).
Field strang_step(const Field& u, double dt, const ModelParams& params, const WeightGrid& w,
                  Exec ex = default_exec());

/// Integrate to T (the step count is round(T/dt), the effective step T/count)
/// with diagnostics every record_every steps (and always at t=0 and t=T).
/// Requires the well-posedness window alpha in (N/(2N-1), 1) unless
/// params.debug_mode is set.
EvolutionTrace evolve(const Field& u0, const ModelParams& params, const EvolutionConfig& cfg,
                      const TraceOptions& topts = {}, Exec ex = default_exec());

/// inf over theta of ||u - e^{i theta} phi||_{H^alpha}, in closed form.
double orbital_distance(const Field& u, const Field& phi, double alpha,
                        Exec ex = default_exec());

struct MembershipReport {
  bool member = false;
  double S = 0.0;
  double K = 0.0;
};

/// u in A_{a,b}  <=>  S(u) < m and K_{a,b}(u) > 0 (strict).
MembershipReport stable_set_membership(const Field& u, const ModelParams& params,
                                       const WeightGrid& w, double a, double b, double m,
                                       Exec ex = default_exec());

enum class GlobalExperimentKind {
  SubcriticalBound,    ///< B < 2: a priori Hdot^alpha bound from mass+energy
  CriticalSubthreshold,///< B = 2 with M(0) below the sharp-constant threshold
  WellTrapping         ///< membership of A_{a,b} preserved along the flow
};

struct GlobalExistenceSpec {
  GlobalExperimentKind kind = GlobalExperimentKind::SubcriticalBound;
  EvolutionConfig cfg;
  double sharp_constant = 0.0;  ///< C for the bound kinds
  double a = 1.0, b = 1.0;      ///< pair for WellTrapping
  double m = 0.0;               ///< level for WellTrapping
};

struct GlobalExistenceOutcome {
  EvolutionTrace trace;
  double apriori_bound = 0.0;   ///< Hdot^alpha bound (bound kinds; inf if none)
  double kappa = 0.0;           ///< 2C M0^{A/2}/(p+1)
  double max_hs = 0.0;
  bool bound_satisfied = false; ///< all samples within bound * (1+1%)
  bool membership_preserved = false;  ///< trapping kind: S<m and K>0 at all samples
  bool passed = false;
};

/// Solve Y^2 - kappa Y^B = 2 E0 for the largest admissible Y reachable from
/// Y0 (see the proposition's proof); +inf if the admissible component is
/// unbounded.
double apriori_hs_bound(const DerivedExponents& exps, double kappa, double energy0, double hs0);

/// Evolve u0 and check the global-existence assertion selected by spec.kind.
GlobalExistenceOutcome run_global_existence_experiment(const ModelParams& params,
                                                       const Field& u0,
                                                       const GlobalExistenceSpec& spec,
                                                       Exec ex = default_exec());

} // namespace fslab
