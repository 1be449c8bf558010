#pragma once

/// @file gammafn.hpp
/// Gamma function and unit-sphere area, used by the closed-form constants.

namespace fslab {

/// Gamma(x) for real x (poles at non-positive integers raise
/// std::domain_error).  Lanczos approximation, relative accuracy better
/// than 1e-12 on the ranges used here.
double gamma_fn(double x);

/// log |Gamma(x)| for x > 0.
double log_gamma(double x);

/// Surface area of the unit sphere S^{dim-1} in R^dim: 2 pi^{dim/2} / Gamma(dim/2).
double sphere_area(int dim);

} // namespace fslab
