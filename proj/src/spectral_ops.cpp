#include "lpt/spectral_ops.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "lpt/fft.hpp"
#include "lpt/kernels.hpp"

namespace lpt {

double lq_norm(const PhysicalField& f, double q) {
  if (q < 1.0)
    throw std::invalid_argument("lq_norm: exponent must satisfy q >= 1, got " +
                                std::to_string(q));
  if (std::isinf(q)) return kernels::max_abs(f.values);
  const double s = kernels::abs_pow_sum(f.values, q);
  return std::pow(f.grid.cell_volume() * s, 1.0 / q);
}

double l2_norm(const SpectralField& F) {
  return std::sqrt(F.grid.volume() * kernels::sumsq(F.coeffs));
}

double mean_value(const PhysicalField& f) {
  return kernels::pairwise_sum(f.values) / static_cast<double>(f.grid.size());
}

std::vector<SpectralField> gradient(const SpectralField& F) {
  const TorusGrid& g = F.grid;
  const ModeTable& tab = mode_table(g);
  const int nyq = g.nyquist();
  std::vector<SpectralField> out;
  out.reserve(g.dim);
  for (int c = 0; c < g.dim; ++c) {
    SpectralField d(g);
    for (std::size_t i = 0; i < F.coeffs.size(); ++i) {
      const int e = c == 0 ? tab.freq[i][0] : tab.freq[i][1];
      d.coeffs[i] = (e == nyq) ? 0.0
                               : std::complex<double>(0.0, e) * F.coeffs[i];
    }
    out.push_back(std::move(d));
  }
  return out;
}

SpectralField divergence(const std::vector<SpectralField>& comps) {
  const TorusGrid& g = comps.front().grid;
  const ModeTable& tab = mode_table(g);
  const int nyq = g.nyquist();
  SpectralField out(g);
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
    std::complex<double> s = 0.0;
    for (int c = 0; c < g.dim; ++c) {
      const int e = c == 0 ? tab.freq[i][0] : tab.freq[i][1];
      if (e != nyq) s += std::complex<double>(0.0, e) * comps[c].coeffs[i];
    }
    out.coeffs[i] = s;
  }
  return out;
}

namespace {

double max_coeff_mag(const std::vector<SpectralField>& comps) {
  double m = 0.0;
  for (const auto& f : comps)
    for (const auto& c : f.coeffs) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

double divergence_residual(const VectorField& v) {
  std::vector<SpectralField> hat;
  hat.reserve(v.comps.size());
  for (const auto& comp : v.comps) hat.push_back(forward_transform(comp));
  const double scale = max_coeff_mag(hat);
  if (scale == 0.0) return 0.0;
  const SpectralField div = divergence(hat);
  double worst = 0.0;
  for (const auto& c : div.coeffs) worst = std::max(worst, std::abs(c));
  return worst / scale;
}

VectorField project_divergence_free(const VectorField& v) {
  const TorusGrid& g = v.grid();
  const ModeTable& tab = mode_table(g);
  const int nyq = g.nyquist();

  std::vector<SpectralField> hat;
  for (const auto& comp : v.comps) hat.push_back(forward_transform(comp));

  if (g.dim == 1) {
    for (std::size_t i = 1; i < hat[0].coeffs.size(); ++i) hat[0].coeffs[i] = 0.0;
  } else {
    for (std::size_t i = 0; i < hat[0].coeffs.size(); ++i) {
      const int e1 = tab.freq[i][0];
      const int e2 = tab.freq[i][1];
      if (e1 == 0 && e2 == 0) continue;
      if (e1 == nyq || e2 == nyq) {
        hat[0].coeffs[i] = 0.0;
        hat[1].coeffs[i] = 0.0;
        continue;
      }
      const double norm_sq = static_cast<double>(tab.freq_sq[i]);
      const std::complex<double> dot =
          static_cast<double>(e1) * hat[0].coeffs[i] +
          static_cast<double>(e2) * hat[1].coeffs[i];
      hat[0].coeffs[i] -= static_cast<double>(e1) * dot / norm_sq;
      hat[1].coeffs[i] -= static_cast<double>(e2) * dot / norm_sq;
    }
  }

  VectorField out;
  out.comps.reserve(v.comps.size());
  for (auto& h : hat) out.comps.push_back(inverse_transform_unchecked(h));
  out.divergence_free = true;
  return out;
}

SpectralField remove_mean(const SpectralField& F) {
  SpectralField out = F;
  out.coeffs[0] = 0.0;
  return out;
}

PhysicalField remove_mean(const PhysicalField& f) {
  const double m = mean_value(f);
  PhysicalField out = f;
  for (auto& v : out.values) v -= m;
  return out;
}

void dealias_in_place(SpectralField& F) {
  const TorusGrid& g = F.grid;
  const ModeTable& tab = mode_table(g);
  const int cutoff = g.n / 3;
  for (std::size_t i = 0; i < F.coeffs.size(); ++i) {
    if (std::abs(tab.freq[i][0]) > cutoff || std::abs(tab.freq[i][1]) > cutoff)
      F.coeffs[i] = 0.0;
  }
}

SpectralField dealias(const SpectralField& F) {
  SpectralField out = F;
  dealias_in_place(out);
  return out;
}

double coefficient_inner_product(const SpectralField& a, const SpectralField& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    s += (std::conj(a.coeffs[i]) * b.coeffs[i]).real();
  return s;
}

double l2_inner_product(const PhysicalField& a, const PhysicalField& b) {
  return a.grid.cell_volume() * kernels::dot(a.values, b.values);
}

}  // namespace lpt
