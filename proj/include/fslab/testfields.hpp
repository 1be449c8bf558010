#pragma once

/// @file testfields.hpp
/// Deterministic radial test-field batteries for inequality sweeps and
/// derivative oracles: Gaussians over a log-grid of widths, even-power ring
/// profiles r^{2k} e^{-c r^2} (even powers keep the samples C-infinity, so
/// scaling/resampling stays spectrally accurate), and seeded random positive
/// combinations of both.

#include <cstdint>
#include <random>
#include <vector>

#include "fslab/field.hpp"

namespace fslab {

/// amp * e^{-c |x|^2}
Field gaussian_field(const GridSpec& g, double c, double amp = 1.0, Exec ex = default_exec());

/// amp * |x|^{2k} e^{-c |x|^2}
Field ring_field(const GridSpec& g, int k, double c, double amp = 1.0, Exec ex = default_exec());

/// Random positive combination of 2-4 Gaussians/rings with widths in
/// [0.3, 3] (log-uniform) and amplitudes in [0.2, 1].
Field random_radial_field(const GridSpec& g, std::mt19937_64& rng, Exec ex = default_exec());

/// Complex-coefficient smooth radial field (for derivative oracles):
/// (c0 + c1 |x|^2) e^{-c |x|^2} with random complex c0, c1.
Field random_complex_radial_field(const GridSpec& g, std::mt19937_64& rng,
                                  Exec ex = default_exec());

/// The standard inequality battery: 5 log-spaced Gaussians, 5 rings,
/// count-10 random combinations.  Deterministic in (grid, seed, count).
std::vector<Field> standard_battery(const GridSpec& g, std::uint64_t seed, int count = 20,
                                    Exec ex = default_exec());

} // namespace fslab
