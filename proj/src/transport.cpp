#include "lpt/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lpt/fft.hpp"
#include "lpt/kernels.hpp"
#include "lpt/spectral_ops.hpp"

namespace lpt {

double DiscreteMeasure::total() const { return kernels::pairwise_sum(masses); }

double log_cost(double z, double delta) {
  if (delta <= 0.0) throw std::invalid_argument("log_cost: delta must be positive");
  if (z < 0.0) throw std::invalid_argument("log_cost: distance must be nonnegative");
  return std::log1p(z / delta);
}

double torus_distance(const std::array<double, 2>& a, const std::array<double, 2>& b,
                      int dim) {
  auto wrap = [](double d) {
    d = std::fabs(d);
    return d > kTwoPi / 2 ? kTwoPi - d : d;
  };
  const double dx = wrap(a[0] - b[0]);
  if (dim == 1) return dx;
  const double dy = wrap(a[1] - b[1]);
  return std::sqrt(dx * dx + dy * dy);
}

SignedSplit signed_split(const PhysicalField& theta) {
  const TorusGrid& g = theta.grid;
  const double cell = g.cell_volume();
  SignedSplit out;
  out.positive.dim = g.dim;
  out.negative.dim = g.dim;
  const double h = g.spacing();
  std::size_t idx = 0;
  for (int i = 0; i < g.n; ++i) {
    const int jmax = g.dim == 2 ? g.n : 1;
    for (int j = 0; j < jmax; ++j, ++idx) {
      const double v = theta.values[idx];
      if (v == 0.0) continue;
      const std::array<double, 2> pt = {i * h, g.dim == 2 ? j * h : 0.0};
      if (v > 0.0) {
        out.positive.points.push_back(pt);
        out.positive.masses.push_back(v * cell);
      } else {
        out.negative.points.push_back(pt);
        out.negative.masses.push_back(-v * cell);
      }
    }
  }
  if (out.positive.masses.empty() && out.negative.masses.empty())
    throw std::domain_error("signed_split: identically-zero field has no parts");
  const double p = out.positive.total();
  const double n = out.negative.total();
  if (p == 0.0 || n == 0.0)
    throw std::domain_error("signed_split: field is not mean-free (one-sided)");
  out.imbalance = std::fabs(p - n) / std::max(p, n);
  if (out.imbalance > 1e-10)
    throw std::domain_error("signed_split: field is not mean-free (imbalance " +
                            std::to_string(out.imbalance) + ")");
  const double scale = p / n;
  for (auto& m : out.negative.masses) m *= scale;
  return out;
}

DiscreteMeasure coarsen_measure(const DiscreteMeasure& m, int boxes_per_axis) {
  if (boxes_per_axis < 1)
    throw std::invalid_argument("coarsen_measure: need at least one box");
  const double w = kTwoPi / boxes_per_axis;
  const int nboxes = m.dim == 1 ? boxes_per_axis : boxes_per_axis * boxes_per_axis;
  std::vector<double> mass(static_cast<std::size_t>(nboxes), 0.0);
  std::vector<double> cx(static_cast<std::size_t>(nboxes), 0.0);
  std::vector<double> cy(static_cast<std::size_t>(nboxes), 0.0);
  for (std::size_t p = 0; p < m.size(); ++p) {
    int bi = std::min(boxes_per_axis - 1,
                      static_cast<int>(std::floor(m.points[p][0] / w)));
    int bj = m.dim == 2 ? std::min(boxes_per_axis - 1,
                                   static_cast<int>(std::floor(m.points[p][1] / w)))
                        : 0;
    const std::size_t b =
        static_cast<std::size_t>(m.dim == 1 ? bi : bi * boxes_per_axis + bj);
    mass[b] += m.masses[p];
    cx[b] += m.masses[p] * m.points[p][0];
    cy[b] += m.masses[p] * m.points[p][1];
  }
  DiscreteMeasure out;
  out.dim = m.dim;
  for (std::size_t b = 0; b < mass.size(); ++b) {
    if (mass[b] <= 0.0) continue;
    out.points.push_back({cx[b] / mass[b], cy[b] / mass[b]});
    out.masses.push_back(mass[b]);
  }
  return out;
}

namespace {

void check_ot_preconditions(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu.size() == 0 || nu.size() == 0)
    throw std::domain_error("optimal transport: empty measure");
  if (mu.dim != nu.dim)
    throw std::invalid_argument("optimal transport: dimension mismatch");
  const double a = mu.total(), b = nu.total();
  if (std::fabs(a - b) > 1e-9 * std::max(a, b))
    throw std::domain_error("optimal transport: total masses differ (" +
                            std::to_string(a) + " vs " + std::to_string(b) + ")");
}

std::vector<double> pack_points(const DiscreteMeasure& m) {
  std::vector<double> out(2 * m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    out[2 * i] = m.points[i][0];
    out[2 * i + 1] = m.points[i][1];
  }
  return out;
}

// Dense transportation simplex.  Nodes 0..m-1 are sources, m..m+n-1 targets;
// the basis is a spanning tree stored through parent pointers with the flow
// on the arc towards the parent.
class TransportSimplex {
 public:
  TransportSimplex(std::vector<double> supply, std::vector<double> demand,
                   std::vector<double> cost)
      : m_(supply.size()),
        n_(demand.size()),
        nodes_(m_ + n_),
        cost_(std::move(cost)),
        supply_(std::move(supply)),
        demand_(std::move(demand)) {
    parent_.assign(nodes_, -1);
    flow_.assign(nodes_, 0.0);
    pot_.assign(nodes_, 0.0);
    double cmax = 0.0;
    for (double c : cost_) cmax = std::max(cmax, std::fabs(c));
    tol_ = 1e-12 * (1.0 + cmax);
    initialize_northwest();
    recompute_potentials();
  }

  void solve() {
    const long pivot_cap = 200 * static_cast<long>(nodes_) + 10000;
    const std::size_t total_arcs = m_ * n_;
    const std::size_t block = std::min<std::size_t>(total_arcs, 16384);
    std::size_t cursor = 0;
    long pivots = 0;
    while (true) {
      // block pricing with wraparound; optimal when a full sweep finds
      // nothing below -tol
      int best_i = -1, best_j = -1;
      double best_rc = -tol_;
      std::size_t scanned = 0;
      while (scanned < total_arcs) {
        const std::size_t hi = std::min(cursor + block, total_arcs);
        for (std::size_t a = cursor; a < hi; ++a) {
          const std::size_t i = a / n_, j = a % n_;
          const double rc = cost_[a] - pot_[i] - pot_[m_ + j];
          if (rc < best_rc) {
            best_rc = rc;
            best_i = static_cast<int>(i);
            best_j = static_cast<int>(j);
          }
        }
        scanned += hi - cursor;
        cursor = hi == total_arcs ? 0 : hi;
        if (best_i >= 0) break;
      }
      if (best_i < 0) break;  // optimal
      pivot(best_i, best_j);
      if (++pivots > pivot_cap)
        throw std::runtime_error(
            "exact_ot: simplex exceeded the pivot cap (degenerate cycling?)");
    }
  }

  double objective() const {
    double total = 0.0;
    for (std::size_t v = 1; v < nodes_; ++v) {
      if (parent_[v] < 0) continue;
      total += flow_[v] * arc_cost(static_cast<int>(v), parent_[v]);
    }
    return total;
  }

  TransportPlan plan() const {
    TransportPlan p;
    p.rows = m_;
    p.cols = n_;
    for (std::size_t v = 1; v < nodes_; ++v) {
      if (parent_[v] < 0 || flow_[v] <= 0.0) continue;
      const int a = static_cast<int>(v), b = parent_[v];
      const int src = a < static_cast<int>(m_) ? a : b;
      const int tgt = a < static_cast<int>(m_) ? b : a;
      p.entries.push_back({src, tgt - static_cast<int>(m_), flow_[v]});
    }
    return p;
  }

  const std::vector<double>& potentials() const { return pot_; }
  std::size_t sources() const { return m_; }
  std::size_t targets() const { return n_; }

 private:
  double arc_cost(int a, int b) const {
    const int src = a < static_cast<int>(m_) ? a : b;
    const int tgt = a < static_cast<int>(m_) ? b : a;
    return cost_[static_cast<std::size_t>(src) * n_ +
                 static_cast<std::size_t>(tgt - static_cast<int>(m_))];
  }

  void initialize_northwest() {
    std::vector<double> a = supply_, b = demand_;
    std::vector<std::array<int, 2>> arcs;
    std::vector<double> arc_flow;
    std::size_t i = 0, j = 0;
    while (true) {
      const double t = std::max(0.0, std::min(a[i], b[j]));
      arcs.push_back({static_cast<int>(i), static_cast<int>(j)});
      arc_flow.push_back(t);
      a[i] -= t;
      b[j] -= t;
      if (i == m_ - 1 && j == n_ - 1) break;
      if (j == n_ - 1)
        ++i;
      else if (i == m_ - 1)
        ++j;
      else if (a[i] <= b[j])
        ++i;
      else
        ++j;
    }
    // hang the staircase as a tree rooted at source 0
    std::vector<std::vector<std::pair<int, double>>> adj(nodes_);
    for (std::size_t k = 0; k < arcs.size(); ++k) {
      const int s = arcs[k][0];
      const int t = static_cast<int>(m_) + arcs[k][1];
      adj[static_cast<std::size_t>(s)].push_back({t, arc_flow[k]});
      adj[static_cast<std::size_t>(t)].push_back({s, arc_flow[k]});
    }
    std::vector<int> stack = {0};
    std::vector<char> seen(nodes_, 0);
    seen[0] = 1;
    parent_[0] = -1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const auto& [w, f] : adj[static_cast<std::size_t>(v)]) {
        if (seen[static_cast<std::size_t>(w)]) continue;
        seen[static_cast<std::size_t>(w)] = 1;
        parent_[static_cast<std::size_t>(w)] = v;
        flow_[static_cast<std::size_t>(w)] = f;
        stack.push_back(w);
      }
    }
  }

  void recompute_potentials() {
    std::vector<std::vector<int>> children(nodes_);
    for (std::size_t v = 1; v < nodes_; ++v)
      if (parent_[v] >= 0)
        children[static_cast<std::size_t>(parent_[v])].push_back(static_cast<int>(v));
    pot_[0] = 0.0;
    std::vector<int> stack = {0};
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : children[static_cast<std::size_t>(v)]) {
        pot_[static_cast<std::size_t>(w)] = arc_cost(w, v) - pot_[static_cast<std::size_t>(v)];
        stack.push_back(w);
      }
    }
  }

  // Path from v to the root as a node list.
  void path_to_root(int v, std::vector<int>& out) const {
    out.clear();
    while (v >= 0) {
      out.push_back(v);
      v = parent_[static_cast<std::size_t>(v)];
    }
  }

  void pivot(int ie, int je_target) {
    const int je = static_cast<int>(m_) + je_target;
    path_to_root(ie, path_a_);
    path_to_root(je, path_b_);
    // find the lowest common ancestor by trimming the common tail
    std::size_t la = path_a_.size(), lb = path_b_.size();
    while (la > 1 && lb > 1 && path_a_[la - 2] == path_b_[lb - 2]) {
      --la;
      --lb;
    }
    // path_a_[0..la-1] ends at the LCA; same for path_b_
    // Flow orientation: +t on the entering arc (ie -> je).  Walking up from
    // je: arcs hanging below a target node carry flow into it and decrease;
    // below a source node they increase.  Walking up from ie the roles swap.
    double theta = std::numeric_limits<double>::infinity();
    int leave = -1;
    bool leave_on_b = false;
    for (std::size_t k = 0; k + 1 < lb; ++k) {
      const int v = path_b_[k];
      const bool decreases = v >= static_cast<int>(m_);
      if (decreases && flow_[static_cast<std::size_t>(v)] < theta) {
        theta = flow_[static_cast<std::size_t>(v)];
        leave = v;
        leave_on_b = true;
      }
    }
    for (std::size_t k = 0; k + 1 < la; ++k) {
      const int v = path_a_[k];
      const bool decreases = v < static_cast<int>(m_);
      if (decreases && flow_[static_cast<std::size_t>(v)] < theta) {
        theta = flow_[static_cast<std::size_t>(v)];
        leave = v;
        leave_on_b = false;
      }
    }
    if (leave < 0)
      throw std::runtime_error("exact_ot: no leaving arc found (corrupt basis)");

    for (std::size_t k = 0; k + 1 < lb; ++k) {
      const int v = path_b_[k];
      flow_[static_cast<std::size_t>(v)] +=
          v >= static_cast<int>(m_) ? -theta : theta;
    }
    for (std::size_t k = 0; k + 1 < la; ++k) {
      const int v = path_a_[k];
      flow_[static_cast<std::size_t>(v)] += v < static_cast<int>(m_) ? -theta : theta;
    }

    // re-hang the detached subtree: path[0] becomes the child of the entering
    // arc's other endpoint, and parent pointers reverse up to the leaving node
    const std::vector<int>& path = leave_on_b ? path_b_ : path_a_;
    const int new_parent = leave_on_b ? ie : je;
    // reverse parent pointers from new_child up to the leaving node
    int prev = new_parent;
    double carry_flow = theta;
    for (std::size_t k = 0; k < path.size(); ++k) {
      const int v = path[k];
      const int old_parent = parent_[static_cast<std::size_t>(v)];
      const double old_flow = flow_[static_cast<std::size_t>(v)];
      parent_[static_cast<std::size_t>(v)] = prev;
      flow_[static_cast<std::size_t>(v)] = carry_flow;
      if (v == leave) break;
      prev = v;
      carry_flow = old_flow;
      (void)old_parent;
    }
    recompute_potentials();
  }

  std::size_t m_, n_, nodes_;
  std::vector<double> cost_;
  std::vector<double> supply_, demand_;
  std::vector<int> parent_;
  std::vector<double> flow_;
  std::vector<double> pot_;
  std::vector<int> path_a_, path_b_;
  double tol_ = 1e-12;
};

// Lipschitz Kantorovich potential from the simplex duals: the c-transform
// phi(z) = min_j (c(z, y_j) - v_j) is d_delta-Lipschitz and attains the same
// dual value.
void build_potentials(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                      double delta, const std::vector<double>& pot, OTResult& out) {
  const std::size_t m = mu.size(), n = nu.size();
  out.potential_source.resize(m);
  out.potential_target.resize(n);
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = pot[m + j];
  auto ctransform = [&](const std::array<double, 2>& z) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      const double c = log_cost(torus_distance(z, nu.points[j], nu.dim), delta);
      best = std::min(best, c - v[j]);
    }
    return best;
  };
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (kernels::parallel_enabled())
#endif
  for (long long i = 0; i < static_cast<long long>(m); ++i)
    out.potential_source[static_cast<std::size_t>(i)] =
        ctransform(mu.points[static_cast<std::size_t>(i)]);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (kernels::parallel_enabled())
#endif
  for (long long j = 0; j < static_cast<long long>(n); ++j)
    out.potential_target[static_cast<std::size_t>(j)] =
        ctransform(nu.points[static_cast<std::size_t>(j)]);
}

double plan_marginal_violation(const TransportPlan& plan, const DiscreteMeasure& mu,
                               const DiscreteMeasure& nu) {
  std::vector<double> row(mu.size(), 0.0), col(nu.size(), 0.0);
  for (const auto& e : plan.entries) {
    row[static_cast<std::size_t>(e.i)] += e.mass;
    col[static_cast<std::size_t>(e.j)] += e.mass;
  }
  const double scale = std::max(mu.total(), 1e-300);
  double worst = 0.0;
  for (std::size_t i = 0; i < row.size(); ++i)
    worst = std::max(worst, std::fabs(row[i] - mu.masses[i]));
  for (std::size_t j = 0; j < col.size(); ++j)
    worst = std::max(worst, std::fabs(col[j] - nu.masses[j]));
  return worst / scale;
}

}  // namespace

OTResult exact_ot(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double delta) {
  check_ot_preconditions(mu, nu);
  if (mu.size() + nu.size() > 4096)
    throw std::runtime_error("exact_ot: combined support exceeds 4096 points");
  if (delta <= 0.0) throw std::invalid_argument("exact_ot: delta must be positive");

  const std::vector<double> pa = pack_points(mu);
  const std::vector<double> pb = pack_points(nu);
  std::vector<double> cost(mu.size() * nu.size());
  kernels::log_cost_matrix(pa, pb, mu.dim, delta, cost);

  // balance the demand exactly enough for the staircase initialization
  std::vector<double> demand = nu.masses;
  const double scale = mu.total() / nu.total();
  for (auto& d : demand) d *= scale;

  TransportSimplex simplex(mu.masses, demand, cost);
  simplex.solve();

  OTResult out;
  out.method = "exact";
  out.cost = simplex.objective();
  out.plan = simplex.plan();
  build_potentials(mu, nu, delta, simplex.potentials(), out);
  double dual = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i)
    dual += out.potential_source[i] * mu.masses[i];
  for (std::size_t j = 0; j < nu.size(); ++j)
    dual -= out.potential_target[j] * nu.masses[j];
  out.duality_gap = std::fabs(out.cost - dual);
  out.marginal_violation = plan_marginal_violation(out.plan, mu, nu);
  return out;
}

OTResult entropic_ot(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                     double delta, double epsilon, const SinkhornOptions& opts) {
  check_ot_preconditions(mu, nu);
  if (delta <= 0.0 || epsilon <= 0.0)
    throw std::invalid_argument("entropic_ot: delta and epsilon must be positive");
  const std::size_t m = mu.size(), n = nu.size();
  const double total = mu.total();

  const std::vector<double> pa = pack_points(mu);
  const std::vector<double> pb = pack_points(nu);
  std::vector<double> cost(m * n);
  kernels::log_cost_matrix(pa, pb, mu.dim, delta, cost);

  std::vector<double> log_mu(m), log_nu(n);
  for (std::size_t i = 0; i < m; ++i) log_mu[i] = std::log(mu.masses[i] / total);
  for (std::size_t j = 0; j < n; ++j) log_nu[j] = std::log(nu.masses[j] / total);

  std::vector<double> f(m, 0.0), g(n, 0.0);
  auto lse_row = [&](std::size_t i) {
    double mx = -std::numeric_limits<double>::infinity();
    const double* crow = cost.data() + i * n;
    for (std::size_t j = 0; j < n; ++j)
      mx = std::max(mx, (g[j] - crow[j]) / epsilon);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += std::exp((g[j] - crow[j]) / epsilon - mx);
    return mx + std::log(s);
  };
  auto lse_col = [&](std::size_t j) {
    double mx = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i)
      mx = std::max(mx, (f[i] - cost[i * n + j]) / epsilon);
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      s += std::exp((f[i] - cost[i * n + j]) / epsilon - mx);
    return mx + std::log(s);
  };

  double violation = std::numeric_limits<double>::infinity();
  long it = 0;
  for (; it < opts.max_iterations; ++it) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (kernels::parallel_enabled())
#endif
    for (long long i = 0; i < static_cast<long long>(m); ++i)
      f[static_cast<std::size_t>(i)] =
          epsilon * log_mu[static_cast<std::size_t>(i)] -
          epsilon * lse_row(static_cast<std::size_t>(i));
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (kernels::parallel_enabled())
#endif
    for (long long j = 0; j < static_cast<long long>(n); ++j)
      g[static_cast<std::size_t>(j)] =
          epsilon * log_nu[static_cast<std::size_t>(j)] -
          epsilon * lse_col(static_cast<std::size_t>(j));
    // columns are exact after the g-update; rows measure convergence
    violation = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double row = 0.0;
      const double* crow = cost.data() + i * n;
      for (std::size_t j = 0; j < n; ++j)
        row += std::exp((f[i] + g[j] - crow[j]) / epsilon);
      violation = std::max(violation, std::fabs(row - std::exp(log_mu[i])));
    }
    if (violation < opts.tolerance) break;
  }
  if (violation >= opts.tolerance)
    throw std::runtime_error("entropic_ot: no convergence after " +
                             std::to_string(opts.max_iterations) +
                             " iterations (marginal violation " +
                             std::to_string(violation) + ")");

  OTResult out;
  out.method = "entropic";
  out.plan.rows = m;
  out.plan.cols = n;
  double cost_value = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double* crow = cost.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      const double p = std::exp((f[i] + g[j] - crow[j]) / epsilon);
      if (p * total > 1e-14 * total)
        out.plan.entries.push_back(
            {static_cast<int>(i), static_cast<int>(j), p * total});
      cost_value += p * crow[j];
    }
  }
  out.cost = cost_value * total;
  out.potential_source = f;
  out.potential_target.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.potential_target[j] = -g[j];
  out.marginal_violation = violation;
  double dual = 0.0;
  for (std::size_t i = 0; i < m; ++i) dual += f[i] * mu.masses[i] / total;
  for (std::size_t j = 0; j < n; ++j) dual += g[j] * nu.masses[j] / total;
  out.duality_gap = std::fabs(out.cost - dual * total);
  return out;
}

KRResult kr_distance(const PhysicalField& theta1, const PhysicalField& theta2,
                     double delta, const KROptions& options) {
  if (!(theta1.grid == theta2.grid))
    throw std::invalid_argument("kr_distance: fields live on different grids");
  PhysicalField diff = theta1;
  for (std::size_t i = 0; i < diff.values.size(); ++i)
    diff.values[i] -= theta2.values[i];

  KRResult out;
  out.method = options.entropic ? "entropic" : "exact";
  bool all_zero = true;
  for (double v : diff.values)
    if (v != 0.0) {
      all_zero = false;
      break;
    }
  if (all_zero) return out;  // identical fields: zero distance

  SignedSplit split = signed_split(diff);
  DiscreteMeasure mu = std::move(split.positive);
  DiscreteMeasure nu = std::move(split.negative);
  if (std::max(mu.size(), nu.size()) > options.max_support) {
    const int boxes =
        mu.dim == 1
            ? static_cast<int>(options.max_support)
            : static_cast<int>(std::floor(std::sqrt(static_cast<double>(options.max_support))));
    mu = coarsen_measure(mu, boxes);
    nu = coarsen_measure(nu, boxes);
    out.coarsen_radius = (kTwoPi / boxes) * std::sqrt(static_cast<double>(mu.dim)) / 2.0;
  }
  out.support_positive = mu.size();
  out.support_negative = nu.size();
  const OTResult ot = options.entropic ? entropic_ot(mu, nu, delta, options.epsilon)
                                       : exact_ot(mu, nu, delta);
  out.value = ot.cost;
  out.duality_gap = ot.duality_gap;
  return out;
}

TransportInterpolationReport check_l1_transport_interpolation(
    const PhysicalField& sigma, double a, double ell, double delta,
    const LPFamily& fam, const KROptions& options) {
  if (ell < 2.0)
    throw std::invalid_argument("check_l1_transport_interpolation: l >= 2 required");
  TransportInterpolationReport rep;
  rep.l1_norm = lq_norm(sigma, 1.0);
  const PhysicalField zero(sigma.grid);
  rep.kr_value = kr_distance(sigma, zero, delta, options).value;
  rep.transport_term = rep.kr_value / log_cost(1.0 / ell, delta);
  rep.besov_term =
      std::pow(std::log(ell), -a) * besov_norm(forward_transform(sigma), a, fam).value;
  const double rhs = rep.transport_term + rep.besov_term;
  rep.min_constant = rhs > 0.0 ? rep.l1_norm / rhs : 0.0;
  return rep;
}

}  // namespace lpt
