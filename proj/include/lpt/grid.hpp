#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace lpt {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Uniform grid on the flat torus [0,2pi)^d, d in {1,2}, n points per axis.
/// n must be a power of two with n >= 8 so that dyadic frequency annuli are
/// resolved and FFT sizes stay radix-2.
struct TorusGrid {
  int dim = 1;
  int n = 8;

  std::size_t size() const {
    return dim == 1 ? static_cast<std::size_t>(n)
                    : static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  }
  double spacing() const { return kTwoPi / n; }
  double cell_volume() const { return dim == 1 ? spacing() : spacing() * spacing(); }
  double volume() const { return dim == 1 ? kTwoPi : kTwoPi * kTwoPi; }
  int nyquist() const { return n / 2; }

  friend bool operator==(const TorusGrid&, const TorusGrid&) = default;
};

/// Validates and constructs a grid; throws std::invalid_argument on bad input.
TorusGrid make_grid(int dim, int n);

/// Integer frequency associated with FFT bin index: 0..n/2, then negative.
inline int freq_of_index(int idx, int n) { return idx <= n / 2 ? idx : idx - n; }

/// Flat row-major index of grid point (i) or (i,j).
inline std::size_t flat_index(const TorusGrid& g, int i, int j = 0) {
  return g.dim == 1 ? static_cast<std::size_t>(i)
                    : static_cast<std::size_t>(i) * g.n + j;
}

/// Per-mode integer frequency data, cached per grid shape.
struct ModeTable {
  std::vector<std::array<int, 2>> freq;  // (eta1, eta2); eta2 = 0 when dim == 1
  std::vector<std::int64_t> freq_sq;     // |eta|^2, exact integer
};

/// Returns the cached mode table for a grid (thread-safe, built once).
const ModeTable& mode_table(const TorusGrid& g);

}  // namespace lpt
