#pragma once

#include <complex>
#include <vector>

#include "lpt/grid.hpp"

namespace lpt {

/// Real scalar samples on a torus grid, row-major.
struct PhysicalField {
  TorusGrid grid;
  std::vector<double> values;

  PhysicalField() = default;
  explicit PhysicalField(const TorusGrid& g) : grid(g), values(g.size(), 0.0) {}
  PhysicalField(const TorusGrid& g, std::vector<double> v)
      : grid(g), values(std::move(v)) {}
};

/// Complex Fourier coefficients indexed by FFT bin (full Hermitian-redundant
/// storage).  Coefficients follow the averaging convention
///   coeff(eta) = (1/n^d) sum_x f(x) e^{-i eta.x},
/// so Parseval reads  int |f|^2 = (2pi)^d sum_eta |coeff(eta)|^2.
struct SpectralField {
  TorusGrid grid;
  std::vector<std::complex<double>> coeffs;

  SpectralField() = default;
  explicit SpectralField(const TorusGrid& g) : grid(g), coeffs(g.size(), 0.0) {}
  SpectralField(const TorusGrid& g, std::vector<std::complex<double>> c)
      : grid(g), coeffs(std::move(c)) {}

  std::complex<double>& at(int i1, int i2 = 0) { return coeffs[flat_index(grid, i1, i2)]; }
  const std::complex<double>& at(int i1, int i2 = 0) const {
    return coeffs[flat_index(grid, i1, i2)];
  }

  /// Coefficient of integer wave number (eta1, eta2), |eta_i| <= n/2.
  std::complex<double>& mode(int eta1, int eta2 = 0) {
    const int n = grid.n;
    return at((eta1 % n + n) % n, grid.dim == 2 ? (eta2 % n + n) % n : 0);
  }
  const std::complex<double>& mode(int eta1, int eta2 = 0) const {
    const int n = grid.n;
    return at((eta1 % n + n) % n, grid.dim == 2 ? (eta2 % n + n) % n : 0);
  }
};

/// d-component velocity field with a divergence-free certificate carried by
/// the construction site (verified in tests via divergence_residual).
struct VectorField {
  std::vector<PhysicalField> comps;
  bool divergence_free = false;

  int dim() const { return static_cast<int>(comps.size()); }
  const TorusGrid& grid() const { return comps.front().grid; }
};

}  // namespace lpt
