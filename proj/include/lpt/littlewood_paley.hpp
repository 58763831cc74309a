#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lpt/field.hpp"

namespace lpt {

/// Radial frequency profile generating the dyadic partition of unity:
/// p(r) = 1 for r <= 1/2, p(r) = 0 for r >= 1, strictly decreasing between.
struct GeneratorSpec {
  std::function<double(double)> profile;
  std::string name;

  /// The standard exp-based bump: p(r) = q(2-2r)/(q(2-2r)+q(2r-1)) with
  /// q(s) = exp(-1/s) for s > 0 and q = 0 otherwise.
  static GeneratorSpec smooth_bump();
};

/// Cached frequency multipliers realizing the Littlewood-Paley family on a
/// grid:  psi_hat_k(eta) = p(2^{-k}|eta|)  (low pass) and
/// phi_hat_k(eta) = psi_hat_k(eta) - psi_hat_{k-1}(eta)  (dyadic annulus).
/// Plateau and support conditions are decided by exact integer comparisons on
/// |eta|^2, so phi_hat_k vanishes identically outside 2^{k-2} < |eta| < 2^k
/// and the telescoping sum is exact.
class LPFamily {
 public:
  LPFamily(const GeneratorSpec& spec, const TorusGrid& grid);

  const TorusGrid& grid() const { return grid_; }
  int k_max() const { return k_max_; }

  /// Low-pass multiplier values, k in [0, k_max].
  const std::vector<double>& psi_hat(int k) const;
  /// Annulus multiplier values, k in [1, k_max].
  const std::vector<double>& phi_hat(int k) const;

  /// Multiplier evaluated from the profile for arbitrary k (used for
  /// out-of-range neighbors in the orthogonality check).
  double psi_value(int k, std::size_t mode_index) const;
  double phi_value(int k, std::size_t mode_index) const;

 private:
  TorusGrid grid_;
  int k_max_;
  std::function<double(double)> profile_;
  std::vector<std::vector<double>> psi_;  // index 0..k_max
  std::vector<std::vector<double>> phi_;  // index 0 unused (empty annulus)
};

/// k_max = floor(log2(n/2)); constructs and validates the multiplier family.
/// Throws std::invalid_argument if the profile violates the generator
/// contract.
LPFamily build_family(const GeneratorSpec& spec, const TorusGrid& grid);

/// theta * phi_k as a pointwise multiplier (convolution theorem).
SpectralField block(const SpectralField& theta, int k, const LPFamily& fam);

/// theta_k^>= = theta - theta * psi_{k-1}; requires a mean-free input.
SpectralField high_pass(const SpectralField& theta, int k, const LPFamily& fam);

/// theta_k^<= = theta * psi_k.
SpectralField low_pass(const SpectralField& theta, int k, const LPFamily& fam);

/// All blocks k = 1..k_max.
std::vector<SpectralField> decompose(const SpectralField& theta, const LPFamily& fam);

/// Max residual of the neighbor-sum identity
///   phi_k = phi_k (phi_{k-1} + phi_k + phi_{k+1})
/// over k and resolved modes, together with the support-disjointness products
/// phi_k phi_j for |k-j| >= 2 (which must vanish exactly).
double almost_orthogonality_check(const LPFamily& fam);

/// Throws std::domain_error unless |coeff(0)| is negligible against the
/// largest coefficient.
void require_mean_free(const SpectralField& theta, const char* where);

}  // namespace lpt
