// Timing comparison between the serial reference kernels and the OpenMP
// variants.  Values must agree bitwise; see test_kernels for the assertions.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "lpt/kernels.hpp"

using namespace lpt;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds(clock_type::time_point a, clock_type::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

template <typename F>
double time_best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = clock_type::now();
    fn();
    const auto t1 = clock_type::now();
    best = std::min(best, seconds(t0, t1));
  }
  return best;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-24s %10.4f ms   %10.4f ms   %5.2fx\n", name, serial * 1e3,
              parallel * 1e3, serial / parallel);
}

}  // namespace

int main() {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> dist;

  std::printf("%-24s %13s   %13s   %6s\n", "kernel", "serial", "openmp", "speedup");

  {
    const std::size_t n = 1 << 22;
    std::vector<std::complex<double>> c(n);
    std::vector<double> w(n);
    for (auto& v : c) v = {dist(rng), dist(rng)};
    for (auto& v : w) v = std::fabs(dist(rng));
    volatile double sink = 0.0;
    const double ts = time_best_of(5, [&] { sink = kernels::weighted_sumsq_serial(c, w); });
    const double tp = time_best_of(5, [&] { sink = kernels::weighted_sumsq_parallel(c, w); });
    (void)sink;
    report("weighted_sumsq (4M)", ts, tp);
  }

  {
    const std::size_t n = 512 * 512;
    std::vector<std::vector<double>> fields(8, std::vector<double>(n));
    for (auto& f : fields)
      for (auto& v : f) v = dist(rng);
    std::vector<std::span<const double>> views(fields.begin(), fields.end());
    std::vector<double> w = {1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<double> out(n);
    const double ts =
        time_best_of(5, [&] { kernels::sup_weighted_abs_serial(views, w, out); });
    const double tp =
        time_best_of(5, [&] { kernels::sup_weighted_abs_parallel(views, w, out); });
    report("sup_weighted_abs (8x)", ts, tp);
  }

  {
    const int n = 96;
    std::vector<double> v(static_cast<std::size_t>(n) * n);
    std::vector<double> table(v.size());
    for (auto& x : v) x = dist(rng);
    for (auto& x : table) x = std::fabs(dist(rng));
    table[0] = 0.0;
    volatile double sink = 0.0;
    const double ts =
        time_best_of(3, [&] { sink = kernels::pair_difference_sum_serial(v, 2, n, table); });
    const double tp =
        time_best_of(3, [&] { sink = kernels::pair_difference_sum_parallel(v, 2, n, table); });
    (void)sink;
    report("pair_difference (96^2)", ts, tp);
  }

  {
    const std::size_t na = 1200, nb = 1200;
    std::vector<double> pa(2 * na), pb(2 * nb);
    std::uniform_real_distribution<double> uni(0.0, 6.28);
    for (auto& x : pa) x = uni(rng);
    for (auto& x : pb) x = uni(rng);
    std::vector<double> cost(na * nb);
    const double ts =
        time_best_of(3, [&] { kernels::log_cost_matrix_serial(pa, pb, 2, 0.1, cost); });
    const double tp =
        time_best_of(3, [&] { kernels::log_cost_matrix_parallel(pa, pb, 2, 0.1, cost); });
    report("log_cost_matrix (1.4M)", ts, tp);
  }

  return 0;
}
