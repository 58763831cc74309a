#include "lpt/grid.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace lpt {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

TorusGrid make_grid(int dim, int n) {
  if (dim != 1 && dim != 2)
    throw std::invalid_argument("TorusGrid: dim must be 1 or 2, got " +
                                std::to_string(dim));
  if (n < 8 || !is_power_of_two(n))
    throw std::invalid_argument("TorusGrid: n must be a power of two >= 8, got " +
                                std::to_string(n));
  return TorusGrid{dim, n};
}

const ModeTable& mode_table(const TorusGrid& g) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<ModeTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{g.dim, g.n}];
  if (!slot) {
    auto tab = std::make_unique<ModeTable>();
    const std::size_t total = g.size();
    tab->freq.resize(total);
    tab->freq_sq.resize(total);
    if (g.dim == 1) {
      for (int i = 0; i < g.n; ++i) {
        const int e = freq_of_index(i, g.n);
        tab->freq[static_cast<std::size_t>(i)] = {e, 0};
        tab->freq_sq[static_cast<std::size_t>(i)] =
            static_cast<std::int64_t>(e) * e;
      }
    } else {
      std::size_t idx = 0;
      for (int i = 0; i < g.n; ++i) {
        const int e1 = freq_of_index(i, g.n);
        for (int j = 0; j < g.n; ++j, ++idx) {
          const int e2 = freq_of_index(j, g.n);
          tab->freq[idx] = {e1, e2};
          tab->freq_sq[idx] = static_cast<std::int64_t>(e1) * e1 +
                              static_cast<std::int64_t>(e2) * e2;
        }
      }
    }
    slot = std::move(tab);
  }
  return *slot;
}

}  // namespace lpt
