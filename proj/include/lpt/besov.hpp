#pragma once

#include <span>
#include <vector>

#include "lpt/littlewood_paley.hpp"

namespace lpt {

/// Norm value with the per-block contribution breakdown (value^2 = sum per_k
/// for the block-structured flavors) and the truncation index used.
struct NormReport {
  double value = 0.0;
  std::vector<double> per_k;
  int k_max = 0;
};

/// (sum_{k=1}^{k_max} k^{2a} ||theta_k||_{L2}^2)^{1/2}; requires mean-free
/// input.
NormReport besov_norm(const SpectralField& theta, double a, const LPFamily& fam);

/// Equivalent tail norm (sum_j j^{2a-1} ||theta_j^>=||_{L2}^2)^{1/2}.
NormReport besov_tail_norm(const SpectralField& theta, double a, const LPFamily& fam);

/// ((2pi)^d sum_{eta != 0} log^{2a}(|eta|+1) |theta_hat|^2)^{1/2},
/// natural logarithm.
NormReport log_sobolev_norm(const SpectralField& theta, double a);

/// Homogeneous Sobolev norm ((2pi)^d sum_{eta != 0} |eta|^{2s}
/// |theta_hat|^2)^{1/2}.
double sobolev_norm(const SpectralField& theta, double s);

/// Double-integral quadrature of the logarithmic Gagliardo seminorm with
/// torus geodesic distance; the diagonal cell is skipped.  Cost is O(n^{2d}),
/// so grids with n > 128 are rejected with a resource error.
double gagliardo_seminorm(const PhysicalField& theta, double a);

/// || sup_k k^b |filtered theta| ||_{L^r} with filtered = theta_k^>= (highpass)
/// or theta_k (block); k runs over 1..k_max.  Requires r >= 2 and b >= 0.
double sup_interp_quantity(const SpectralField& theta, double b, double r,
                           bool highpass, const LPFamily& fam);

/// Mollifier families for the weighted square function.
enum class SquareFamily {
  Block,            // eta_k = phi_k
  GradBlock,        // eta_k = grad phi_k      (theta * eta_k = grad theta_k)
  ScaledGradBlock,  // eta_k = 2^{-k} grad phi_k
};

/// || ( sum_k k^{2b} |theta * eta_k|^2 )^{1/2} ||_{L^r}.
double square_function_norm(const SpectralField& theta, double b, double r,
                            SquareFamily family, const LPFamily& fam);

/// ||grad theta||_{L2} computed spectrally (gradient's Nyquist convention).
double gradient_l2_norm(const SpectralField& theta);

/// ||grad theta||_{B^{log,a}} = (sum_k k^{2a} ||grad theta_k||^2)^{1/2}.
double gradient_besov_norm(const SpectralField& theta, double a, const LPFamily& fam);

/// Interpolation check ||grad theta||_{L2} <= C ( l log^{-a} l ||theta||_B +
/// log^{-a} l ||grad theta||_B ) over a grid of l >= 2.
struct GradientInterpolationReport {
  double lhs = 0.0;
  struct Entry {
    double ell;
    double term_low;   // l log^{-a} l * ||theta||_B
    double term_high;  // log^{-a} l * ||grad theta||_B
    double ratio;      // lhs / (term_low + term_high)
  };
  std::vector<Entry> entries;
  double min_constant = 0.0;  // max of ratios: smallest admissible C
};
GradientInterpolationReport check_gradient_interpolation(const SpectralField& theta,
                                                         double a,
                                                         std::span<const double> ells,
                                                         const LPFamily& fam);

/// ||theta||_{L2} <= C exp(||theta||_B / ||theta||_{L2})^{1/a} ||theta||_{H^-1}.
struct MixingDualityReport {
  double lhs = 0.0;           // L2 norm
  double exponential = 0.0;   // exp(B/L2)^{1/a}
  double hminus1 = 0.0;
  double min_constant = 0.0;  // lhs / (exponential * hminus1)
};
MixingDualityReport check_mixing_duality(const SpectralField& theta, double a,
                                         const LPFamily& fam);

// --- spectral weight tables (solver observers, fast norm paths) -------------

/// w(eta) = sum_k k^{2a} phi_hat_k(eta)^2
std::vector<double> besov_block_weight(const LPFamily& fam, double a);
/// w(eta) = sum_j j^{2a-1} (1 - psi_hat_{j-1}(eta))^2
std::vector<double> besov_tail_weight(const LPFamily& fam, double a);
/// w(eta) = |eta|^2 with Nyquist components dropped (gradient convention)
std::vector<double> gradient_weight(const TorusGrid& grid);
/// w(eta) = |eta|^{2s} for eta != 0, 0 at the origin
std::vector<double> sobolev_weight(const TorusGrid& grid, double s);

/// ((2pi)^d sum w(eta) |theta_hat(eta)|^2)^{1/2}
double weighted_l2(const SpectralField& theta, std::span<const double> w);

}  // namespace lpt
