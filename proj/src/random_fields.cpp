#include "lpt/random_fields.hpp"

#include <cmath>
#include <numbers>

#include "lpt/fft.hpp"
#include "lpt/kernels.hpp"
#include "lpt/spectral_ops.hpp"

namespace lpt {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double to_unit(std::uint64_t x) {
  return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

// Deterministic complex gaussian keyed by (seed, eta); order-independent.
std::complex<double> mode_gaussian(std::uint64_t seed, int e1, int e2) {
  const std::uint64_t key =
      (static_cast<std::uint64_t>(static_cast<std::uint32_t>(e1 + 65536)) << 32) |
      static_cast<std::uint64_t>(static_cast<std::uint32_t>(e2 + 65536));
  const std::uint64_t a = splitmix64(seed ^ key);
  const std::uint64_t b = splitmix64(a ^ 0xda942042e4dd58b5ULL);
  const double u1 = to_unit(a);
  const double u2 = to_unit(b);
  const double r = std::sqrt(-2.0 * std::log(u1));
  return {r * std::cos(2.0 * std::numbers::pi * u2),
          r * std::sin(2.0 * std::numbers::pi * u2)};
}

}  // namespace

SpectralField random_band_limited(const TorusGrid& grid, std::uint64_t seed,
                                  int band, double slope) {
  SpectralField F(grid);
  const std::int64_t band_sq = static_cast<std::int64_t>(band) * band;
  const int n = grid.n;
  auto canonical = [](int e1, int e2) {
    return e1 > 0 || (e1 == 0 && e2 > 0);
  };
  const int e2_lo = grid.dim == 2 ? -n / 2 : 0;
  const int e2_hi = grid.dim == 2 ? n / 2 : 0;
  for (int e1 = -n / 2; e1 <= n / 2; ++e1) {
    for (int e2 = e2_lo; e2 <= e2_hi; ++e2) {
      if (!canonical(e1, e2)) continue;
      const std::int64_t fsq =
          static_cast<std::int64_t>(e1) * e1 + static_cast<std::int64_t>(e2) * e2;
      if (fsq == 0 || fsq > band_sq) continue;
      if (e1 == n / 2 || e2 == n / 2 || e1 == -n / 2 || e2 == -n / 2) continue;
      const double amp = std::pow(static_cast<double>(fsq), -0.5 * slope);
      const std::complex<double> z = amp * mode_gaussian(seed, e1, e2);
      F.mode(e1, e2) = z;
      F.mode(-e1, -e2) = std::conj(z);
    }
  }
  return F;
}

PhysicalField single_harmonic(const TorusGrid& grid, int m, int axis) {
  PhysicalField f(grid);
  const double h = grid.spacing();
  if (grid.dim == 1) {
    for (int i = 0; i < grid.n; ++i) f.values[static_cast<std::size_t>(i)] = std::cos(m * i * h);
  } else {
    std::size_t idx = 0;
    for (int i = 0; i < grid.n; ++i)
      for (int j = 0; j < grid.n; ++j, ++idx)
        f.values[idx] = std::cos(m * (axis == 0 ? i : j) * h);
  }
  return f;
}

SpectralField spectral_harmonic(const TorusGrid& grid, int m, int axis) {
  SpectralField F(grid);
  if (axis == 0 || grid.dim == 1) {
    F.mode(m, 0) = 0.5;
    F.mode(-m, 0) = 0.5;
  } else {
    F.mode(0, m) = 0.5;
    F.mode(0, -m) = 0.5;
  }
  return F;
}

SpectralField checkerboard_smoothed(const TorusGrid& grid, int m, double sigma) {
  PhysicalField f(grid);
  const double h = grid.spacing();
  auto sgn = [](double v) { return v >= 0.0 ? 1.0 : -1.0; };
  if (grid.dim == 1) {
    for (int i = 0; i < grid.n; ++i)
      f.values[static_cast<std::size_t>(i)] = sgn(std::sin(m * i * h));
  } else {
    std::size_t idx = 0;
    for (int i = 0; i < grid.n; ++i)
      for (int j = 0; j < grid.n; ++j, ++idx)
        f.values[idx] = sgn(std::sin(m * i * h)) * sgn(std::sin(m * j * h));
  }
  SpectralField F = forward_transform(f);
  const ModeTable& tab = mode_table(grid);
  for (std::size_t i = 0; i < F.coeffs.size(); ++i)
    F.coeffs[i] *= std::exp(-static_cast<double>(tab.freq_sq[i]) / (2.0 * sigma * sigma));
  F.coeffs[0] = 0.0;
  return F;
}

void normalize_sup(PhysicalField& f) {
  const double m = kernels::max_abs(f.values);
  if (m == 0.0) return;
  for (auto& v : f.values) v /= m;
}

SpectralField normalize_sup(const SpectralField& F) {
  PhysicalField f = inverse_transform_unchecked(F);
  const double m = kernels::max_abs(f.values);
  SpectralField out = F;
  if (m != 0.0)
    for (auto& c : out.coeffs) c /= m;
  return out;
}

}  // namespace lpt
