#pragma once

#include <cstdint>

#include "lpt/field.hpp"

namespace lpt {

/// Mean-free random field with Hermitian-symmetric coefficients supported on
/// 1 <= |eta| <= band and amplitudes ~ |eta|^{-slope}.  Coefficients are
/// drawn from a counter-based generator keyed by (seed, eta), so the same
/// mode receives the same draw at every resolution.
SpectralField random_band_limited(const TorusGrid& grid, std::uint64_t seed,
                                  int band, double slope = 1.0);

/// cos(m * x_axis) sampled on the grid.
PhysicalField single_harmonic(const TorusGrid& grid, int m, int axis = 0);

/// cos(m * x_axis) written directly on the coefficient side: modes +-m carry
/// exactly 1/2 and every other coefficient is exactly zero.
SpectralField spectral_harmonic(const TorusGrid& grid, int m, int axis = 0);

/// Sign-pattern checkerboard sign(sin(m x1))*sign(sin(m x2)) (sin only in x
/// for d=1), low-passed with the Gaussian multiplier exp(-|eta|^2/(2 sigma^2))
/// and mean-removed.
SpectralField checkerboard_smoothed(const TorusGrid& grid, int m, double sigma);

/// Rescales so that max |theta| = 1 (no-op on the zero field).
void normalize_sup(PhysicalField& f);
SpectralField normalize_sup(const SpectralField& F);

}  // namespace lpt
