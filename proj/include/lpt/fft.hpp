#pragma once

#include "lpt/field.hpp"

namespace lpt {

/// Discrete Fourier transform with averaging normalization:
///   coeff(eta) = (1/n^d) sum_x f(x) e^{-i eta.x}.
SpectralField forward_transform(const PhysicalField& f);

/// Fourier synthesis f(x) = sum_eta coeff(eta) e^{i eta.x}.  Verifies the
/// Hermitian symmetry coeff(-eta) = conj(coeff(eta)) and throws
/// std::domain_error when it is violated; the imaginary residue of the
/// synthesis is discarded.
PhysicalField inverse_transform(const SpectralField& F);

/// Same synthesis without the symmetry check; for internal hot loops on
/// fields that are Hermitian by construction.
PhysicalField inverse_transform_unchecked(const SpectralField& F);

/// Max deviation from Hermitian symmetry, relative to the largest coefficient
/// magnitude (0 for the zero field).
double hermitian_asymmetry(const SpectralField& F);

namespace detail {

/// Unnormalized in-place-capable transform on raw buffers (in == out allowed);
/// forward applies e^{-i eta.x} sums without the 1/n^d scaling.
void fft_raw(const TorusGrid& g, bool forward, const std::complex<double>* in,
             std::complex<double>* out);

}  // namespace detail

}  // namespace lpt
