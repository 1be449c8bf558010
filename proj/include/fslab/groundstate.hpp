#pragma once

/// @file groundstate.hpp
/// Two independent routes to the ground state of
///   (-Lap)^alpha phi + phi = |x|^gamma phi |phi|^{p-1}:
/// a Petviashvili fixed-point iteration on the equation itself, and descent
/// on the Weinstein quotient J over the unit-pair manifold followed by the
/// closed-form rescaling back to the equation.  The two are used as mutual
/// oracles.

#include <array>
#include <utility>
#include <vector>

#include "fslab/field.hpp"
#include "fslab/params.hpp"

namespace fslab {

enum class ProfileKind {
  EulerLagrangeUnit,  ///< solves (-Lap)^alpha phi + phi = |x|^gamma phi|phi|^{p-1}
  JMinimizer          ///< unit-pair minimizer of J
};

struct GroundStateRecord {
  Field profile;
  ProfileKind kind = ProfileKind::EulerLagrangeUnit;
  double residual = 0.0;  ///< relative L2 residual of the defining equation
  double mass = 0.0;
  double seminorm = 0.0;            ///< Hdot^alpha seminorm (not squared)
  double nonlinear_integral = 0.0;  ///< P(profile)
  double action_value = 0.0;        ///< S(profile)
  double m_value = 0.0;             ///< m = S(phi) for ground states
  double beta_value = 0.0;          ///< beta = 1/P(psi) for minimizers
  int iterations = 0;
  bool converged = false;
  std::vector<double> residual_history;
};

struct PetviashviliOptions {
  double tol = 1e-10;  ///< residual tolerance
  int max_iter = 600;
};

struct DescentOptions {
  /// Target for the Euler-Lagrange field projected onto the feasible class
  /// (the stationarity measure of the constrained minimization).
  double residual_tol = 1e-7;
  int max_iter = 2000;
  double step0 = 1.0;  ///< first line-search probe; later probes self-tune
  /// Support radius of the global search class: iterates vanish outside the
  /// ball |x| <= support_radius.  0 selects 2L/3.  The margin keeps the
  /// search away from the box boundary, where wrapped tails, clipped corner
  /// orbits and under-resolved support jumps all push lattice J below the
  /// variational value.
  double support_radius = 0.0;
};

/// Requires gamma >= 0, p > 1 and the strict admissibility window; throws
/// std::invalid_argument otherwise.  Throws std::runtime_error if the
/// iteration collapses to zero (degenerate seed).  Non-convergence within
/// max_iter returns converged = false.
GroundStateRecord petviashvili_solve(const ModelParams& params, const GridSpec& grid,
                                     const Field& seed, const PetviashviliOptions& opts = {},
                                     Exec ex = default_exec());

/// lambda u(mu x) with the closed-form (lambda, mu) making
/// ||result|| = ||result||_{Hdot^alpha} = 1.  Throws std::invalid_argument
/// for u = 0.
Field normalize_unit_pair(const Field& u, const ModelParams& params, Exec ex = default_exec());

/// Backtracking descent on J over the unit-pair manifold (renormalizes every
/// step; the descent direction is the J-gradient preconditioned by
/// (A + B |xi|^{2 alpha})^{-1}).  Returns kind = JMinimizer with
/// beta_value = 1/P(psi).
GroundStateRecord minimize_J(const ModelParams& params, const GridSpec& grid, const Field& seed,
                             const DescentOptions& opts = {}, Exec ex = default_exec());

/// The closed-form map psi -> phi with psi = a phi(b .),
/// b = (A/B)^{1/(2 alpha)}, a = ((A/B)^{gamma/(2 alpha)} A/(beta(1+p)))^{1/(p-1)}.
/// Also recomputes beta from ||phi|| as a consistency value (stored in
/// beta_value of the result).  Throws std::invalid_argument for B = 0 or a
/// non-converged / wrong-kind input.
GroundStateRecord rescale_minimizer_to_groundstate(const GroundStateRecord& psi,
                                                   const ModelParams& params,
                                                   Exec ex = default_exec());

struct MReport {
  double m = 0.0;                            ///< S(phi)
  std::vector<std::array<double, 3>> pair_K; ///< rows (a, b, K_{a,b}(phi))
};

/// m = S(phi) plus the K_{a,b}(phi) values for the supplied pairs (all of
/// which vanish on an exact ground state).
MReport compute_m(const GroundStateRecord& phi, const ModelParams& params,
                  const std::vector<std::pair<double, double>>& pairs,
                  Exec ex = default_exec());

/// Unit-mass Gaussian seed e^{-|x|^2/2} (the default starting point).
Field default_seed(const GridSpec& grid, Exec ex = default_exec());

/// The default (a,b) pair set used by ground-state diagnostics.
const std::vector<std::pair<double, double>>& default_pairs();

} // namespace fslab
