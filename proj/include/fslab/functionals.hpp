#pragma once

/// @file functionals.hpp
/// Conserved and variational quantities: mass M, energy E, action S,
/// Weinstein quotient J, and the scaling-derivative functionals K_{a,b},
/// H_{a,b}.  All take precomputed DerivedExponents and a WeightGrid so that
/// every caller works from one consistent derivation.

#include "fslab/exec.hpp"
#include "fslab/field.hpp"
#include "fslab/grid.hpp"
#include "fslab/params.hpp"

namespace fslab {

struct FunctionalReport {
  double mass = 0.0;
  double energy = 0.0;
  double action = 0.0;
  double weinstein = 0.0;            ///< J(u); NaN when P(u) = 0
  double nonlinear_integral = 0.0;   ///< P(u) = sum w |u|^{p+1} h^dim
  double sigma_norm = 0.0;           ///< P(u)^{1/(p+1)}
};

/// K_{a,b} and H_{a,b} at one (a, b).
struct KHReport {
  double a = 0.0;
  double b = 0.0;
  double K = 0.0;
  double H = 0.0;
  double K_quad = 0.0;    ///< quadratic part K^Q
  double K_nonlin = 0.0;  ///< nonlinear part K^N (K = K^Q + K^N)
};

/// Which quadratic coefficient to use for K^Q.  ScalingDerivative is the
/// exact lambda-derivative of S along phi^lambda_{a,b} (coefficient
/// (2a + (N-2 alpha) b)/2 on the seminorm term) and is the primary
/// definition; SectionSevenPrinted uses (2a + (N-alpha) b)/2 instead and is
/// kept for comparison because the two disagree.
enum class KabFormula { ScalingDerivative, SectionSevenPrinted };

double mass(const Field& u, Exec ex = default_exec());

/// P(u) = sum w |u|^{p+1} h^dim.
double nonlinear_integral(const Field& u, const ModelParams& params, const WeightGrid& w,
                          Exec ex = default_exec());

/// Dealiased P: the weighted power integral of the trigonometric interpolant
/// of u, evaluated on an oversampled grid (same box, 4x the points per axis;
/// 2x once 4x would exceed 2^24 points).  The plain collocation product folds
/// the spectral tail of |u|^{p+1} back into the band, an error that is not
/// dilation-covariant and tilts the discrete J along the scaling family until
/// no stationary point is left; the oversampled quadrature is exact through
/// quintic powers of band-limited u, so the tilt drops to the level of the
/// weight's own cusp.  The variational solvers use this pair of routines,
/// while time evolution keeps the collocation product: the splitting
/// integrates exactly that nonlinearity, and its conserved energy is the
/// collocation one.
double nonlinear_integral_dealiased(const Field& u, const ModelParams& params,
                                    Exec ex = default_exec());

/// Base-band modes of w u_bl |u_bl|^{p-1} formed on the oversampled grid
/// (u_bl the interpolant of u).  Exact gradient partner of
/// nonlinear_integral_dealiased: dP/dU_k* = (p+1)/2 (pi/L)^dim times these,
/// the same relation the collocation pair satisfies.
std::vector<cplx> nonlinear_modes_dealiased(const Field& u, const ModelParams& params,
                                            Exec ex = default_exec());

/// E = 1/2 ||u||_{Hdot^alpha}^2 - eps/(p+1) P(u).
double energy(const Field& u, const ModelParams& params, const WeightGrid& w,
              Exec ex = default_exec());

/// S = E + M/2.
double action(const Field& u, const ModelParams& params, const WeightGrid& w,
              Exec ex = default_exec());

/// J = ||u||_{Hdot^alpha}^B ||u||^A / P(u).  Throws std::invalid_argument
/// when P(u) = 0 (degenerate input).
double weinstein_J(const Field& u, const ModelParams& params, const DerivedExponents& exps,
                   const WeightGrid& w, Exec ex = default_exec());

/// J with the dealiased P; the quotient the variational module minimizes.
double weinstein_J_dealiased(const Field& u, const ModelParams& params,
                             const DerivedExponents& exps, Exec ex = default_exec());

/// K = (2a+Nb)/2 M + (2a+(N-2 alpha)b)/2 ||u||_{Hdot}^2
///     - eps ((p+1)a + (N+gamma)b)/(p+1) P,   H = S - K/(2a+Nb).
/// Throws std::invalid_argument when 2a + Nb = 0 (H undefined).
KHReport K_ab(const Field& u, const ModelParams& params, const WeightGrid& w, double a,
              double b, Exec ex = default_exec(),
              KabFormula formula = KabFormula::ScalingDerivative);

/// K_{a,b}, H_{a,b} with the dealiased P; vanishes at the solver's fixed
/// point to the same accuracy the solver converged to.
KHReport K_ab_dealiased(const Field& u, const ModelParams& params, double a, double b,
                        Exec ex = default_exec(),
                        KabFormula formula = KabFormula::ScalingDerivative);

FunctionalReport functional_report(const Field& u, const ModelParams& params,
                                   const DerivedExponents& exps, const WeightGrid& w,
                                   Exec ex = default_exec());

} // namespace fslab
