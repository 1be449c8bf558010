#pragma once

/// @file fieldops.hpp
/// Spectral and quadrature operations on fields: the fractional Laplacian,
/// norms and weighted integrals, the amplitude-dilation scalings, and the
/// diagnostics (decay sup, boundary mass, spectral tail, radial profile).

#include <array>
#include <complex>
#include <vector>

#include "fslab/exec.hpp"
#include "fslab/field.hpp"
#include "fslab/grid.hpp"

namespace fslab {

/// (-Lap)^alpha u via the |xi|^{2 alpha} multiplier; the zero mode maps to 0.
Field apply_fractional_laplacian(const Field& u, double alpha, Exec ex = default_exec());

/// sqrt( sum_j |u_j|^2 h^dim ).
double l2_norm(const Field& u, Exec ex = default_exec());

/// Homogeneous seminorm: sqrt( sum_k |xi_k|^{2 alpha} |U_k|^2 (pi/L)^dim ).
double hs_seminorm(const Field& u, double alpha, Exec ex = default_exec());

/// Full H^alpha norm: sqrt(l2^2 + seminorm^2).
double halpha_norm(const Field& u, double alpha, Exec ex = default_exec());

/// sum_j a_j conj(b_j) h^dim.
std::complex<double> inner_l2(const Field& a, const Field& b, Exec ex = default_exec());

/// sum_k (1 + |xi|^{2 alpha}) A_k conj(B_k) (pi/L)^dim.
std::complex<double> inner_halpha(const Field& a, const Field& b, double alpha,
                                  Exec ex = default_exec());

/// sum_j w_j |u_j|^q h^dim  (q >= 1).
double weighted_power_integral(const Field& u, const WeightGrid& w, double q,
                               Exec ex = default_exec());

/// max over grid points x != 0 of |x|^{dim/2 - alpha} |u(x)|.
/// Valid for 1/2 < alpha < dim/2 (throws std::invalid_argument otherwise).
double radial_decay_sup(const Field& u, double alpha, Exec ex = default_exec());

enum class ResampleMethod {
  Czt,   ///< chirp-z scaled evaluation, O(n log n) per line (default)
  Dense  ///< explicit evaluation matrix per axis, O(n^2) per line (reference)
};

struct ScaleOptions {
  ResampleMethod method = ResampleMethod::Czt;
  /// Dilations that push more than this fraction of mass outside the box
  /// throw std::domain_error.  Fractions below ~1e-12 leave the norm scaling
  /// identities intact to interpolation accuracy; anything between is
  /// tolerated but degrades them accordingly.
  double max_wrap_fraction = 1e-3;
};

/// u^{a,b}(x) := a u(b x), band-limited (Fourier) interpolation, periodic
/// images beyond the box.
Field scale_field_amplitude_dilation(const Field& u, double a, double b,
                                     Exec ex = default_exec(), const ScaleOptions& opts = {});

/// phi^lambda_{a,b} := lambda^a phi(. / lambda^b).
Field scale_field_exponent(const Field& u, double a, double b, double lambda,
                           Exec ex = default_exec(), const ScaleOptions& opts = {});

/// Fraction of |u|^2 mass at points with ||x||_inf > b*L (the part a
/// dilation u(bx) with b < 1 would push outside the box); 0 for b >= 1.
double out_of_box_fraction(const Field& u, double b, Exec ex = default_exec());

/// Fraction of mass in the outer shell ||x||_inf >= 7/8 L (periodization
/// monitor).
double boundary_mass_fraction(const Field& u, Exec ex = default_exec());

/// Fraction of spectral energy at per-axis |k| >= n/3 (aliasing monitor).
double spectral_tail_fraction(const Field& u, Exec ex = default_exec());

/// Relative L2 departure from invariance under 90-degree grid rotations
/// (all coordinate planes) and the point reflection; 0 for exactly radial
/// samples.
double rotation_asymmetry(const Field& u, Exec ex = default_exec());

/// Orthogonal projection onto the lattice-radial subspace: averages u over
/// the sets of grid points with equal |x| (classified exactly by the integer
/// sum of squared centered indices).  The discrete counterpart of working in
/// H^alpha_rd; idempotent.
Field radialize(const Field& u, Exec ex = default_exec());

/// radialize composed with a support cut: orbits with |x| > rcut are zeroed.
/// The cut set is a union of orbits, so the two projections commute and the
/// composite stays orthogonal.  On a periodic box the radial class alone
/// still lets the quotient G^B M^A / P slide to zero through constants (the
/// mean mode carries no seminorm); pinning the far field to zero restores
/// the decay the continuum class has at infinity.
Field radialize(const Field& u, double rcut, Exec ex = default_exec());

/// Orthogonal projection onto the fields invariant under the lattice point
/// group (axis permutations and reflections x_d -> -x_d; order 2^N N!).
/// Coarser than radialize: distinct orbits of equal |x| stay distinct, so
/// the exact -- slightly anisotropic -- lattice stationary points remain in
/// the subspace, while every translation-like drift mode is annihilated.
Field symmetrize_point_group(const Field& u, Exec ex = default_exec());

/// Zeroes every sample with |x| > rcut (no averaging).  With rcut just below
/// the half-diagonal this pins only the extreme corner samples: enough to
/// evict constants from a feasible class while perturbing a decaying profile
/// at the level of its far tail.
Field zero_beyond(const Field& u, double rcut, Exec ex = default_exec());

/// (r, Re u, Im u) sampled along the positive first axis from the origin.
std::vector<std::array<double, 3>> radial_profile(const Field& u);

/// Cyclic shift by whole cells (axis d shifted by shift[d]).
Field periodic_shift(const Field& u, const std::array<int, 3>& shift);

} // namespace fslab
