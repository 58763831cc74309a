#include "lpt/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace lpt {

namespace {

// FFTW plan creation is not thread-safe; executing a plan on new arrays is.
// Plans are created with FFTW_UNALIGNED so they can run on any buffer.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int dim, int n, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_tuple(dim, n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<std::complex<double>> buf(dim == 1 ? n : std::size_t(n) * n);
    auto* ptr = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_plan p = dim == 1
                      ? fftw_plan_dft_1d(n, ptr, ptr, sign,
                                         FFTW_ESTIMATE | FFTW_UNALIGNED)
                      : fftw_plan_dft_2d(n, n, ptr, ptr, sign,
                                         FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_[key] = p;
    return p;
  }

 private:
  std::mutex mu_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

// Plans are created in-place, so execution must be in-place as well: copy the
// input into the destination buffer first.
void execute(const TorusGrid& g, int sign, const std::complex<double>* in,
             std::complex<double>* out) {
  fftw_plan p = PlanCache::instance().get(g.dim, g.n, sign);
  if (in != out) std::copy(in, in + g.size(), out);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(out),
                   reinterpret_cast<fftw_complex*>(out));
}

std::size_t conjugate_index(const TorusGrid& g, std::size_t idx) {
  const int n = g.n;
  if (g.dim == 1) {
    const int i = static_cast<int>(idx);
    return static_cast<std::size_t>(i == 0 ? 0 : n - i);
  }
  const int i = static_cast<int>(idx) / n;
  const int j = static_cast<int>(idx) % n;
  return flat_index(g, i == 0 ? 0 : n - i, j == 0 ? 0 : n - j);
}

}  // namespace

namespace detail {

void fft_raw(const TorusGrid& g, bool forward, const std::complex<double>* in,
             std::complex<double>* out) {
  execute(g, forward ? FFTW_FORWARD : FFTW_BACKWARD, in, out);
}

}  // namespace detail

SpectralField forward_transform(const PhysicalField& f) {
  const TorusGrid& g = f.grid;
  std::vector<std::complex<double>> buf(g.size());
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = f.values[i];
  SpectralField out(g);
  execute(g, FFTW_FORWARD, buf.data(), out.coeffs.data());
  const double scale = 1.0 / static_cast<double>(g.size());
  for (auto& c : out.coeffs) c *= scale;
  return out;
}

double hermitian_asymmetry(const SpectralField& F) {
  double max_mag = 0.0;
  for (const auto& c : F.coeffs) max_mag = std::max(max_mag, std::abs(c));
  if (max_mag == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < F.coeffs.size(); ++i) {
    const std::size_t j = conjugate_index(F.grid, i);
    worst = std::max(worst, std::abs(F.coeffs[i] - std::conj(F.coeffs[j])));
  }
  return worst / max_mag;
}

PhysicalField inverse_transform_unchecked(const SpectralField& F) {
  const TorusGrid& g = F.grid;
  std::vector<std::complex<double>> buf(g.size());
  execute(g, FFTW_BACKWARD, F.coeffs.data(), buf.data());
  PhysicalField out(g);
  for (std::size_t i = 0; i < buf.size(); ++i) out.values[i] = buf[i].real();
  return out;
}

PhysicalField inverse_transform(const SpectralField& F) {
  const double asym = hermitian_asymmetry(F);
  if (asym > 1e-10)
    throw std::domain_error(
        "inverse_transform: coefficients violate Hermitian symmetry "
        "(relative asymmetry " +
        std::to_string(asym) + ")");
  return inverse_transform_unchecked(F);
}

}  // namespace lpt
