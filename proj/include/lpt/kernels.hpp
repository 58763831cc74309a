#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace lpt::kernels {

/// Runtime switch between the OpenMP kernels and the serial reference
/// implementations.  Defaults to on when compiled with OpenMP.  Both paths
/// use the same fixed block decomposition for reductions, so results are
/// bitwise identical regardless of the switch or the thread count.
bool parallel_enabled();
void set_parallel_enabled(bool on);

inline constexpr std::size_t kReductionBlock = 4096;

// --- reductions -----------------------------------------------------------

/// sum_i |c[i]|^2
double sumsq(std::span<const std::complex<double>> c);

/// sum_i w[i] * |c[i]|^2
double weighted_sumsq(std::span<const std::complex<double>> c,
                      std::span<const double> w);
double weighted_sumsq_serial(std::span<const std::complex<double>> c,
                             std::span<const double> w);
double weighted_sumsq_parallel(std::span<const std::complex<double>> c,
                               std::span<const double> w);

/// sum_i (m[i])^2 * |c[i]|^2  (multiplier applied before squaring)
double filtered_sumsq(std::span<const std::complex<double>> c,
                      std::span<const double> m);

/// sum_i |v[i]|^q  (q >= 1)
double abs_pow_sum(std::span<const double> v, double q);
double abs_pow_sum_serial(std::span<const double> v, double q);
double abs_pow_sum_parallel(std::span<const double> v, double q);

/// max_i |v[i]|
double max_abs(std::span<const double> v);

/// sum_i a[i] * b[i]
double dot(std::span<const double> a, std::span<const double> b);

/// Exact pairwise tree sum for power-of-two lengths; for arbitrary lengths a
/// pairwise reduction with the same determinism guarantee.
double pairwise_sum(std::span<const double> v);

// --- pointwise maps --------------------------------------------------------

/// c[i] *= m[i]
void multiply_pointwise(std::span<std::complex<double>> c, std::span<const double> m);

/// out[i] = c[i] * m[i]
void multiply_pointwise(std::span<const std::complex<double>> c,
                        std::span<const double> m, std::span<std::complex<double>> out);

/// out[i] = max_k w[k] * |fields[k][i]|
void sup_weighted_abs(const std::vector<std::span<const double>>& fields,
                      std::span<const double> w, std::span<double> out);
void sup_weighted_abs_serial(const std::vector<std::span<const double>>& fields,
                             std::span<const double> w, std::span<double> out);
void sup_weighted_abs_parallel(const std::vector<std::span<const double>>& fields,
                               std::span<const double> w, std::span<double> out);

/// out[i] = sum_k w[k] * fields[k][i]^2
void weighted_square_sum_fields(const std::vector<std::span<const double>>& fields,
                                std::span<const double> w, std::span<double> out);

// --- quadratic-cost quadratures ---------------------------------------------

/// Double-grid quadrature sum for the logarithmic Gagliardo seminorm:
///   sum over pairs x != y of |f(x)-f(y)|^2 * g(dist(x,y))
/// where g is a precomputed kernel table indexed by the wrapped index offset
/// (same layout as the field).  Returns the raw sum (no cell-volume factors).
double pair_difference_sum(std::span<const double> values, int dim, int n,
                           std::span<const double> kernel_table);
double pair_difference_sum_serial(std::span<const double> values, int dim, int n,
                                  std::span<const double> kernel_table);
double pair_difference_sum_parallel(std::span<const double> values, int dim, int n,
                                    std::span<const double> kernel_table);

/// cost[i*cols + j] = log(dist(a_i, b_j)/delta + 1) with torus geodesic
/// distance; points are packed (x, y) pairs (y ignored for dim == 1).
void log_cost_matrix(std::span<const double> points_a, std::span<const double> points_b,
                     int dim, double delta, std::span<double> cost);
void log_cost_matrix_serial(std::span<const double> points_a,
                            std::span<const double> points_b, int dim, double delta,
                            std::span<double> cost);
void log_cost_matrix_parallel(std::span<const double> points_a,
                              std::span<const double> points_b, int dim, double delta,
                              std::span<double> cost);

}  // namespace lpt::kernels
