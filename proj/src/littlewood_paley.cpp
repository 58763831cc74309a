#include "lpt/littlewood_paley.hpp"

#include <cmath>
#include <stdexcept>

#include "lpt/kernels.hpp"

namespace lpt {

namespace {

double bump_q(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

// 4^k as int64; k is small (<= ~12).
std::int64_t pow4(int k) { return std::int64_t(1) << (2 * k); }

void validate_profile(const std::function<double(double)>& p) {
  if (!p) throw std::invalid_argument("GeneratorSpec: missing profile");
  if (std::fabs(p(0.5) - 1.0) > 1e-12 || std::fabs(p(1.0)) > 1e-12)
    throw std::invalid_argument(
        "GeneratorSpec: profile must satisfy p(1/2)=1 and p(1)=0");
  double prev = 1.0;
  for (int i = 1; i <= 1000; ++i) {
    const double r = 0.5 + 0.5 * i / 1000.0;
    const double v = p(r);
    if (v < -1e-14 || v > 1.0 + 1e-14)
      throw std::invalid_argument("GeneratorSpec: profile leaves [0,1]");
    if (v > prev + 1e-12)
      throw std::invalid_argument("GeneratorSpec: profile not monotone on (1/2,1)");
    prev = v;
  }
}

}  // namespace

GeneratorSpec GeneratorSpec::smooth_bump() {
  GeneratorSpec spec;
  spec.name = "smooth_bump";
  spec.profile = [](double r) {
    if (r <= 0.5) return 1.0;
    if (r >= 1.0) return 0.0;
    const double a = bump_q(2.0 - 2.0 * r);
    const double b = bump_q(2.0 * r - 1.0);
    return a / (a + b);
  };
  return spec;
}

LPFamily::LPFamily(const GeneratorSpec& spec, const TorusGrid& grid)
    : grid_(grid), profile_(spec.profile) {
  validate_profile(profile_);
  k_max_ = static_cast<int>(std::floor(std::log2(grid.n / 2.0)));

  const ModeTable& tab = mode_table(grid_);
  const std::size_t total = grid_.size();

  psi_.resize(static_cast<std::size_t>(k_max_) + 1);
  phi_.resize(static_cast<std::size_t>(k_max_) + 1);
  for (int k = 0; k <= k_max_; ++k) {
    auto& psi = psi_[static_cast<std::size_t>(k)];
    psi.resize(total);
    const std::int64_t q = pow4(k);
    for (std::size_t i = 0; i < total; ++i) {
      const std::int64_t fsq = tab.freq_sq[i];
      if (4 * fsq <= q)
        psi[i] = 1.0;  // |eta| <= 2^{k-1}
      else if (fsq >= q)
        psi[i] = 0.0;  // |eta| >= 2^k
      else
        psi[i] = profile_(std::sqrt(static_cast<double>(fsq)) / std::ldexp(1.0, k));
    }
  }
  for (int k = 1; k <= k_max_; ++k) {
    auto& phi = phi_[static_cast<std::size_t>(k)];
    phi.resize(total);
    const auto& hi = psi_[static_cast<std::size_t>(k)];
    const auto& lo = psi_[static_cast<std::size_t>(k) - 1];
    for (std::size_t i = 0; i < total; ++i) phi[i] = hi[i] - lo[i];
  }
}

const std::vector<double>& LPFamily::psi_hat(int k) const {
  if (k < 0 || k > k_max_)
    throw std::out_of_range("LPFamily::psi_hat: k out of range");
  return psi_[static_cast<std::size_t>(k)];
}

const std::vector<double>& LPFamily::phi_hat(int k) const {
  if (k < 1 || k > k_max_)
    throw std::out_of_range("LPFamily::phi_hat: k out of range");
  return phi_[static_cast<std::size_t>(k)];
}

double LPFamily::psi_value(int k, std::size_t i) const {
  const ModeTable& tab = mode_table(grid_);
  const std::int64_t fsq = tab.freq_sq[i];
  if (k < 0) return fsq == 0 ? 1.0 : 0.0;
  const std::int64_t q = pow4(k);
  if (4 * fsq <= q) return 1.0;
  if (fsq >= q) return 0.0;
  return profile_(std::sqrt(static_cast<double>(fsq)) / std::ldexp(1.0, k));
}

double LPFamily::phi_value(int k, std::size_t i) const {
  if (k < 1) {
    // phi_0 lives on 1/4 < |eta| < 1: empty on the integer lattice.
    return 0.0;
  }
  return psi_value(k, i) - psi_value(k - 1, i);
}

LPFamily build_family(const GeneratorSpec& spec, const TorusGrid& grid) {
  return LPFamily(spec, grid);
}

void require_mean_free(const SpectralField& theta, const char* where) {
  double max_mag = 0.0;
  for (const auto& c : theta.coeffs) max_mag = std::max(max_mag, std::abs(c));
  if (std::abs(theta.coeffs[0]) > 1e-12 * std::max(max_mag, 1e-300))
    throw std::domain_error(std::string(where) + ": field is not mean-free");
}

SpectralField block(const SpectralField& theta, int k, const LPFamily& fam) {
  if (k < 1 || k > fam.k_max())
    throw std::out_of_range("block: k must lie in [1, k_max]");
  SpectralField out(theta.grid);
  kernels::multiply_pointwise(theta.coeffs, fam.phi_hat(k), out.coeffs);
  return out;
}

SpectralField high_pass(const SpectralField& theta, int k, const LPFamily& fam) {
  if (k < 1 || k > fam.k_max())
    throw std::out_of_range("high_pass: k must lie in [1, k_max]");
  require_mean_free(theta, "high_pass");
  const auto& psi = fam.psi_hat(k - 1);
  SpectralField out(theta.grid);
  for (std::size_t i = 0; i < out.coeffs.size(); ++i)
    out.coeffs[i] = theta.coeffs[i] * (1.0 - psi[i]);
  return out;
}

SpectralField low_pass(const SpectralField& theta, int k, const LPFamily& fam) {
  if (k < 0 || k > fam.k_max())
    throw std::out_of_range("low_pass: k must lie in [0, k_max]");
  SpectralField out(theta.grid);
  kernels::multiply_pointwise(theta.coeffs, fam.psi_hat(k), out.coeffs);
  return out;
}

std::vector<SpectralField> decompose(const SpectralField& theta, const LPFamily& fam) {
  std::vector<SpectralField> blocks;
  blocks.reserve(static_cast<std::size_t>(fam.k_max()));
  for (int k = 1; k <= fam.k_max(); ++k) blocks.push_back(block(theta, k, fam));
  return blocks;
}

double almost_orthogonality_check(const LPFamily& fam) {
  const std::size_t total = fam.grid().size();
  double worst = 0.0;
  for (int k = 1; k <= fam.k_max(); ++k) {
    const auto& phi_k = fam.phi_hat(k);
    for (std::size_t i = 0; i < total; ++i) {
      if (phi_k[i] == 0.0) continue;
      const double neighbors =
          fam.phi_value(k - 1, i) + phi_k[i] + fam.phi_value(k + 1, i);
      worst = std::max(worst, std::fabs(phi_k[i] * (1.0 - neighbors)));
    }
  }
  // Disjoint supports: products must vanish exactly.
  for (int k = 1; k <= fam.k_max(); ++k) {
    for (int j = k + 2; j <= fam.k_max(); ++j) {
      const auto& a = fam.phi_hat(k);
      const auto& b = fam.phi_hat(j);
      for (std::size_t i = 0; i < total; ++i)
        worst = std::max(worst, std::fabs(a[i] * b[i]));
    }
  }
  return worst;
}

}  // namespace lpt
