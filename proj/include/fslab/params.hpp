#pragma once

/// @file params.hpp
/// Model parameters of i u_t - (-Lap)^alpha u + eps |x|^gamma u|u|^{p-1} = 0
/// and the exponents/regime windows derived from them.

#include <optional>
#include <string>

namespace fslab {

/// Physical / analytical parameters.  Immutable after construction.
struct ModelParams {
  int dim = 2;         ///< spatial dimension N (1..3; N=1 only in debug mode)
  double alpha = 0.8;  ///< fractional order, 0 < alpha < 1
  double gamma = 0.0;  ///< inhomogeneity exponent of the |x|^gamma weight
  double p = 2.0;      ///< nonlinearity exponent
  int epsilon = +1;    ///< +1 focusing, -1 defocusing
  bool debug_mode = false;  ///< permits N=1 and alpha=1 for comparison runs

  /// Throws std::invalid_argument on violation of the basic windows:
  /// dim in {1,2,3} (1 needs debug_mode), alpha in (0,1) (alpha=1 needs
  /// debug_mode), p > 0, epsilon in {-1,+1}, gamma > -dim, and
  /// dim - 2*alpha > 0 whenever gamma != 0.
  void validate() const;
};

/// Exponents of the Gagliardo-Nirenberg framework.
/// B = (N(p-1) - 2 gamma)/(2 alpha), A = 1 + p - B (exact),
/// s = p + 1 - 2 gamma/(N - 2 alpha), mu = (N/alpha)(1/2 - 1/s).
struct DerivedExponents {
  double A = 0.0;
  double B = 0.0;
  double mu = 0.0;
  double sigma_exp = 0.0;  ///< the effective exponent s
};

enum class Criticality { Subcritical, Critical, Supercritical };

/// Admissibility report for the inequality / existence / well-posedness
/// windows.  mass_threshold is set only in the critical case when a sharp
/// constant is supplied.
struct RegimeReport {
  bool gn_admissible = false;   ///< 2 <= s <= 2N/(N-2alpha)
  bool gn_strict = false;       ///< strict inequalities
  bool wellposed_alpha = false; ///< alpha in (N/(2N-1), 1)
  Criticality criticality = Criticality::Subcritical;
  std::optional<double> mass_threshold;  ///< ((p+1)/(2C))^{2/A} when critical
};

const char* to_string(Criticality c);

/// Derive (A, B, mu, s).  Throws std::invalid_argument when params are
/// invalid or when gamma != 0 with N = 2 alpha (2 gamma/(N-2 alpha) blows up).
DerivedExponents derive_exponents(const ModelParams& params);

/// Classify criticality (sign of B-2 with relative 1e-12 tolerance), check
/// the admissibility windows, and compute the critical mass threshold when a
/// sharp constant C is supplied.
RegimeReport classify_regime(const ModelParams& params, const DerivedExponents& exps,
                             std::optional<double> sharp_constant = std::nullopt);

/// Window booleans only (derives exponents internally).
RegimeReport check_gn_window(const ModelParams& params);

/// Mass-critical exponent p* = 1 + (4 alpha + 2 gamma)/N; B(p*) = 2.
double mass_critical_p(const ModelParams& params);

/// Upper endpoint 2N/(N-2alpha) of the admissible window; +inf when
/// N = 2 alpha.
double gn_upper_endpoint(const ModelParams& params);

} // namespace fslab
