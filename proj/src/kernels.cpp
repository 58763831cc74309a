#include "lpt/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

namespace lpt::kernels {

namespace {

std::atomic<bool> g_parallel{
#ifdef _OPENMP
    true
#else
    false
#endif
};

// Deterministic blocked reduction: per-block serial sums, blocks summed in
// index order.  The parallel path computes block sums concurrently but the
// final accumulation order is fixed, so serial and parallel agree bitwise.
template <typename Term>
double block_reduce(std::size_t n, bool parallel, Term&& term) {
  const std::size_t nblocks = (n + kReductionBlock - 1) / kReductionBlock;
  if (nblocks <= 1) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += term(i);
    return s;
  }
  std::vector<double> partial(nblocks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = std::min(lo + kReductionBlock, n);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += term(i);
    partial[static_cast<std::size_t>(b)] = s;
  }
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

}  // namespace

bool parallel_enabled() { return g_parallel.load(std::memory_order_relaxed); }
void set_parallel_enabled(bool on) { g_parallel.store(on, std::memory_order_relaxed); }

// --- reductions -------------------------------------------------------------

double sumsq(std::span<const std::complex<double>> c) {
  return block_reduce(c.size(), parallel_enabled(), [&](std::size_t i) {
    return c[i].real() * c[i].real() + c[i].imag() * c[i].imag();
  });
}

double weighted_sumsq_serial(std::span<const std::complex<double>> c,
                             std::span<const double> w) {
  return block_reduce(c.size(), false, [&](std::size_t i) {
    return w[i] * (c[i].real() * c[i].real() + c[i].imag() * c[i].imag());
  });
}

double weighted_sumsq_parallel(std::span<const std::complex<double>> c,
                               std::span<const double> w) {
  return block_reduce(c.size(), true, [&](std::size_t i) {
    return w[i] * (c[i].real() * c[i].real() + c[i].imag() * c[i].imag());
  });
}

double weighted_sumsq(std::span<const std::complex<double>> c,
                      std::span<const double> w) {
  return parallel_enabled() ? weighted_sumsq_parallel(c, w)
                            : weighted_sumsq_serial(c, w);
}

double filtered_sumsq(std::span<const std::complex<double>> c,
                      std::span<const double> m) {
  return block_reduce(c.size(), parallel_enabled(), [&](std::size_t i) {
    return m[i] * m[i] *
           (c[i].real() * c[i].real() + c[i].imag() * c[i].imag());
  });
}

double abs_pow_sum_serial(std::span<const double> v, double q) {
  if (q == 2.0)
    return block_reduce(v.size(), false, [&](std::size_t i) { return v[i] * v[i]; });
  return block_reduce(v.size(), false,
                      [&](std::size_t i) { return std::pow(std::fabs(v[i]), q); });
}

double abs_pow_sum_parallel(std::span<const double> v, double q) {
  if (q == 2.0)
    return block_reduce(v.size(), true, [&](std::size_t i) { return v[i] * v[i]; });
  return block_reduce(v.size(), true,
                      [&](std::size_t i) { return std::pow(std::fabs(v[i]), q); });
}

double abs_pow_sum(std::span<const double> v, double q) {
  return parallel_enabled() ? abs_pow_sum_parallel(v, q) : abs_pow_sum_serial(v, q);
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : m) if (parallel_enabled())
#endif
  for (long long i = 0; i < static_cast<long long>(v.size()); ++i)
    m = std::max(m, std::fabs(v[static_cast<std::size_t>(i)]));
  return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
  return block_reduce(a.size(), parallel_enabled(),
                      [&](std::size_t i) { return a[i] * b[i]; });
}

double pairwise_sum(std::span<const double> v) {
  if (v.empty()) return 0.0;
  std::vector<double> buf(v.begin(), v.end());
  std::size_t len = buf.size();
  while (len > 1) {
    const std::size_t half = len / 2;
    for (std::size_t i = 0; i < half; ++i) buf[i] = buf[2 * i] + buf[2 * i + 1];
    if (len % 2 == 1) {
      buf[half] = buf[len - 1];
      len = half + 1;
    } else {
      len = half;
    }
  }
  return buf[0];
}

// --- pointwise maps ----------------------------------------------------------

void multiply_pointwise(std::span<std::complex<double>> c, std::span<const double> m) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel_enabled())
#endif
  for (long long i = 0; i < static_cast<long long>(c.size()); ++i)
    c[static_cast<std::size_t>(i)] *= m[static_cast<std::size_t>(i)];
}

void multiply_pointwise(std::span<const std::complex<double>> c,
                        std::span<const double> m,
                        std::span<std::complex<double>> out) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel_enabled())
#endif
  for (long long i = 0; i < static_cast<long long>(c.size()); ++i)
    out[static_cast<std::size_t>(i)] =
        c[static_cast<std::size_t>(i)] * m[static_cast<std::size_t>(i)];
}

namespace {

template <bool Parallel>
void sup_weighted_abs_impl(const std::vector<std::span<const double>>& fields,
                           std::span<const double> w, std::span<double> out) {
  const std::size_t nf = fields.size();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (Parallel)
#endif
  for (long long i = 0; i < static_cast<long long>(out.size()); ++i) {
    const std::size_t ii = static_cast<std::size_t>(i);
    double m = 0.0;
    for (std::size_t k = 0; k < nf; ++k) m = std::max(m, w[k] * std::fabs(fields[k][ii]));
    out[ii] = m;
  }
}

}  // namespace

void sup_weighted_abs_serial(const std::vector<std::span<const double>>& fields,
                             std::span<const double> w, std::span<double> out) {
  sup_weighted_abs_impl<false>(fields, w, out);
}

void sup_weighted_abs_parallel(const std::vector<std::span<const double>>& fields,
                               std::span<const double> w, std::span<double> out) {
  sup_weighted_abs_impl<true>(fields, w, out);
}

void sup_weighted_abs(const std::vector<std::span<const double>>& fields,
                      std::span<const double> w, std::span<double> out) {
  if (parallel_enabled())
    sup_weighted_abs_parallel(fields, w, out);
  else
    sup_weighted_abs_serial(fields, w, out);
}

void weighted_square_sum_fields(const std::vector<std::span<const double>>& fields,
                                std::span<const double> w, std::span<double> out) {
  const std::size_t nf = fields.size();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel_enabled())
#endif
  for (long long i = 0; i < static_cast<long long>(out.size()); ++i) {
    const std::size_t ii = static_cast<std::size_t>(i);
    double s = 0.0;
    for (std::size_t k = 0; k < nf; ++k) s += w[k] * fields[k][ii] * fields[k][ii];
    out[ii] = s;
  }
}

// --- quadratic-cost quadratures ----------------------------------------------

namespace {

// One row of the pair sum: x fixed, serial loop over y with wrapped offsets.
double pair_row_1d(std::span<const double> v, int n, std::span<const double> table,
                   int i) {
  double s = 0.0;
  const double vi = v[static_cast<std::size_t>(i)];
  for (int j = 0; j < n; ++j) {
    int off = i - j;
    if (off < 0) off += n;
    const double d = vi - v[static_cast<std::size_t>(j)];
    s += d * d * table[static_cast<std::size_t>(off)];
  }
  return s;
}

double pair_row_2d(std::span<const double> v, int n, std::span<const double> table,
                   int i1, int i2) {
  double s = 0.0;
  const double vi = v[static_cast<std::size_t>(i1) * n + i2];
  for (int j1 = 0; j1 < n; ++j1) {
    int o1 = i1 - j1;
    if (o1 < 0) o1 += n;
    const double* vrow = v.data() + static_cast<std::size_t>(j1) * n;
    const double* trow = table.data() + static_cast<std::size_t>(o1) * n;
    for (int j2 = 0; j2 < n; ++j2) {
      int o2 = i2 - j2;
      if (o2 < 0) o2 += n;
      const double d = vi - vrow[j2];
      s += d * d * trow[o2];
    }
  }
  return s;
}

template <bool Parallel>
double pair_difference_sum_impl(std::span<const double> v, int dim, int n,
                                std::span<const double> table) {
  const std::size_t total = v.size();
  std::vector<double> row_sums(total, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (Parallel)
#endif
  for (long long x = 0; x < static_cast<long long>(total); ++x) {
    const std::size_t xi = static_cast<std::size_t>(x);
    if (dim == 1) {
      row_sums[xi] = pair_row_1d(v, n, table, static_cast<int>(xi));
    } else {
      row_sums[xi] = pair_row_2d(v, n, table, static_cast<int>(xi) / n,
                                 static_cast<int>(xi) % n);
    }
  }
  // Row sums combined in fixed order.
  double s = 0.0;
  for (double r : row_sums) s += r;
  return s;
}

}  // namespace

double pair_difference_sum_serial(std::span<const double> v, int dim, int n,
                                  std::span<const double> table) {
  return pair_difference_sum_impl<false>(v, dim, n, table);
}

double pair_difference_sum_parallel(std::span<const double> v, int dim, int n,
                                    std::span<const double> table) {
  return pair_difference_sum_impl<true>(v, dim, n, table);
}

double pair_difference_sum(std::span<const double> v, int dim, int n,
                           std::span<const double> table) {
  return parallel_enabled() ? pair_difference_sum_parallel(v, dim, n, table)
                            : pair_difference_sum_serial(v, dim, n, table);
}

namespace {

inline double torus_delta(double a, double b) {
  double d = std::fabs(a - b);
  if (d > 6.283185307179586476925286766559 / 2) d = 6.283185307179586476925286766559 - d;
  return d;
}

template <bool Parallel>
void log_cost_matrix_impl(std::span<const double> pa, std::span<const double> pb,
                          int dim, double delta, std::span<double> cost) {
  const std::size_t na = pa.size() / 2;
  const std::size_t nb = pb.size() / 2;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (Parallel)
#endif
  for (long long i = 0; i < static_cast<long long>(na); ++i) {
    const std::size_t ii = static_cast<std::size_t>(i);
    const double ax = pa[2 * ii], ay = pa[2 * ii + 1];
    double* row = cost.data() + ii * nb;
    for (std::size_t j = 0; j < nb; ++j) {
      const double dx = torus_delta(ax, pb[2 * j]);
      double r = dx;
      if (dim == 2) {
        const double dy = torus_delta(ay, pb[2 * j + 1]);
        r = std::sqrt(dx * dx + dy * dy);
      }
      row[j] = std::log1p(r / delta);
    }
  }
}

}  // namespace

void log_cost_matrix_serial(std::span<const double> pa, std::span<const double> pb,
                            int dim, double delta, std::span<double> cost) {
  log_cost_matrix_impl<false>(pa, pb, dim, delta, cost);
}

void log_cost_matrix_parallel(std::span<const double> pa, std::span<const double> pb,
                              int dim, double delta, std::span<double> cost) {
  log_cost_matrix_impl<true>(pa, pb, dim, delta, cost);
}

void log_cost_matrix(std::span<const double> pa, std::span<const double> pb, int dim,
                     double delta, std::span<double> cost) {
  if (parallel_enabled())
    log_cost_matrix_parallel(pa, pb, dim, delta, cost);
  else
    log_cost_matrix_serial(pa, pb, dim, delta, cost);
}

}  // namespace lpt::kernels
