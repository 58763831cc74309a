#pragma once

#include "lpt/field.hpp"

namespace lpt {

/// L^q norm by rectangle-rule quadrature, ((2pi/n)^d sum |f|^q)^{1/q}.
/// q = infinity returns max |f|; q < 1 throws std::invalid_argument.
double lq_norm(const PhysicalField& f, double q);

/// L^2 norm from the coefficient side: ((2pi)^d sum |coeff|^2)^{1/2}.
double l2_norm(const SpectralField& F);

/// Exact arithmetic mean (pairwise tree sum; exact for constant fields since
/// n^d is a power of two).
double mean_value(const PhysicalField& f);

/// Spectral differentiation: component i carries i*eta_i*coeff(eta); the
/// unpaired Nyquist mode eta_i = n/2 is zeroed to keep derivatives real and
/// skew-symmetric.
std::vector<SpectralField> gradient(const SpectralField& F);

/// eta . u_hat(eta) with the gradient's Nyquist convention.
SpectralField divergence(const std::vector<SpectralField>& comps);

/// Max |eta . u_hat| over resolved modes, relative to max coefficient
/// magnitude of the input (the divergence-free certificate).
double divergence_residual(const VectorField& v);

/// Leray projection u_hat <- u_hat - eta (eta.u_hat)/|eta|^2 for eta != 0.
/// Nyquist-bearing modes are zeroed so the certificate is exact.  d = 1
/// degenerates to keeping only the mean.
VectorField project_divergence_free(const VectorField& v);

/// Zeroes coeff(0); all other coefficients unchanged.
SpectralField remove_mean(const SpectralField& F);

/// Subtracts the pairwise-exact mean from the samples.
PhysicalField remove_mean(const PhysicalField& f);

/// 2/3-rule: zeroes coefficients with any |eta_i| > n/3.
SpectralField dealias(const SpectralField& F);
void dealias_in_place(SpectralField& F);

/// Coefficient inner product sum conj(a) * b (real part).
double coefficient_inner_product(const SpectralField& a, const SpectralField& b);

/// L^2 inner product of two physical fields (cell volume included).
double l2_inner_product(const PhysicalField& a, const PhysicalField& b);

}  // namespace lpt
