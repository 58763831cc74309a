#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lpt/fft.hpp"
#include "lpt/random_fields.hpp"
#include "lpt/spectral_ops.hpp"
#include "lpt/transport.hpp"

using namespace lpt;

namespace {

// Exhaustive minimum over the vertices of the 3x3 transportation polytope:
// every basis is a 5-subset of the 9 cells whose flows are determined by the
// marginal equations; feasible ones (flows >= 0) are the polytope vertices.
double brute_force_3x3(const std::array<double, 3>& a, const std::array<double, 3>& b,
                       const std::array<std::array<double, 3>, 3>& cost) {
  double best = std::numeric_limits<double>::infinity();
  for (int mask = 0; mask < (1 << 9); ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) != 5) continue;
    // peel degree-one rows/columns to solve for the flows
    std::array<std::array<double, 3>, 3> flow{};
    std::array<double, 3> ra = a, rb = b;
    int remaining[9], cells = 0;
    for (int c = 0; c < 9; ++c)
      if (mask & (1 << c)) remaining[cells++] = c;
    bool alive[9] = {};
    for (int k = 0; k < cells; ++k) alive[remaining[k]] = true;
    bool progress = true, feasible = true;
    int solved = 0;
    while (progress && solved < 5) {
      progress = false;
      for (int c = 0; c < 9; ++c) {
        if (!alive[c]) continue;
        const int i = c / 3, j = c % 3;
        int row_count = 0, col_count = 0;
        for (int jj = 0; jj < 3; ++jj) row_count += alive[i * 3 + jj] ? 1 : 0;
        for (int ii = 0; ii < 3; ++ii) col_count += alive[ii * 3 + j] ? 1 : 0;
        if (row_count == 1) {
          flow[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = ra[static_cast<std::size_t>(i)];
          rb[static_cast<std::size_t>(j)] -= ra[static_cast<std::size_t>(i)];
          ra[static_cast<std::size_t>(i)] = 0.0;
          alive[c] = false;
          ++solved;
          progress = true;
        } else if (col_count == 1) {
          flow[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = rb[static_cast<std::size_t>(j)];
          ra[static_cast<std::size_t>(i)] -= rb[static_cast<std::size_t>(j)];
          rb[static_cast<std::size_t>(j)] = 0.0;
          alive[c] = false;
          ++solved;
          progress = true;
        }
      }
    }
    if (solved < 5) continue;  // contained a cycle: not a tree
    for (int i = 0; i < 3; ++i)
      if (std::fabs(ra[static_cast<std::size_t>(i)]) > 1e-9 ||
          std::fabs(rb[static_cast<std::size_t>(i)]) > 1e-9)
        feasible = false;
    double value = 0.0;
    for (int i = 0; i < 3 && feasible; ++i)
      for (int j = 0; j < 3; ++j) {
        const double f = flow[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (f < -1e-12) {
          feasible = false;
          break;
        }
        value += std::max(0.0, f) * cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      }
    if (feasible) best = std::min(best, value);
  }
  return best;
}

DiscreteMeasure diracs(int dim, std::initializer_list<std::array<double, 2>> pts,
                       std::initializer_list<double> masses) {
  DiscreteMeasure m;
  m.dim = dim;
  m.points.assign(pts);
  m.masses.assign(masses);
  return m;
}

}  // namespace

TEST_CASE("logarithmic cost basics") {
  CHECK(log_cost(0.0, 0.3) == 0.0);
  CHECK(log_cost(0.3, 0.3) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(log_cost(1.0, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(log_cost(1.0, 0.0), std::invalid_argument);

  // subadditivity on random pairs (the metric property behind d_delta)
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uni(0.0, 4.0);
  for (int i = 0; i < 10000; ++i) {
    const double z1 = uni(rng), z2 = uni(rng);
    CHECK(log_cost(z1 + z2, 0.2) <= log_cost(z1, 0.2) + log_cost(z2, 0.2) + 1e-12);
  }
}

TEST_CASE("d_delta is a metric on random triples") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> uni(0.0, kTwoPi);
  for (int i = 0; i < 10000; ++i) {
    const std::array<double, 2> x = {uni(rng), uni(rng)};
    const std::array<double, 2> y = {uni(rng), uni(rng)};
    const std::array<double, 2> z = {uni(rng), uni(rng)};
    const double dxy = log_cost(torus_distance(x, y, 2), 0.15);
    const double dyx = log_cost(torus_distance(y, x, 2), 0.15);
    const double dxz = log_cost(torus_distance(x, z, 2), 0.15);
    const double dzy = log_cost(torus_distance(z, y, 2), 0.15);
    CHECK(std::fabs(dxy - dyx) <= 1e-12);
    CHECK(dxy <= dxz + dzy + 1e-12);
  }
  const std::array<double, 2> p = {1.0, 2.0};
  CHECK(log_cost(torus_distance(p, p, 2), 0.15) == 0.0);
}

TEST_CASE("signed split of cos x") {
  const TorusGrid g = make_grid(1, 64);
  const PhysicalField f = inverse_transform(spectral_harmonic(g, 1));
  const SignedSplit s = signed_split(f);
  CHECK(s.positive.total() == doctest::Approx(2.0).epsilon(1e-3));  // int cos^+ = 2
  CHECK(s.positive.total() == doctest::Approx(s.negative.total()).epsilon(1e-14));
  CHECK(s.imbalance <= 1e-10);
  for (const auto& pt : s.positive.points) {
    const double c = std::cos(pt[0]);
    CHECK(c > 0.0);
  }

  // antisymmetry
  PhysicalField neg = f;
  for (auto& v : neg.values) v = -v;
  const SignedSplit sn = signed_split(neg);
  CHECK(sn.positive.size() == s.negative.size());
  CHECK(sn.negative.size() == s.positive.size());

  const PhysicalField zero(g);
  CHECK_THROWS_AS(signed_split(zero), std::domain_error);

  PhysicalField biased = f;
  for (auto& v : biased.values) v += 0.5;
  CHECK_THROWS_AS(signed_split(biased), std::domain_error);

  // mass balance enforced after rescale on random mean-free fields
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PhysicalField r = inverse_transform(random_band_limited(g, seed, 16));
    const SignedSplit sr = signed_split(r);
    CHECK(sr.positive.total() ==
          doctest::Approx(sr.negative.total()).epsilon(1e-13));
  }
}

TEST_CASE("exact OT: identical measures and two Diracs") {
  const auto mu = diracs(2, {{1.0, 2.0}, {4.0, 0.5}}, {0.3, 0.7});
  const OTResult same = exact_ot(mu, mu, 0.2);
  CHECK(same.cost == doctest::Approx(0.0).epsilon(1e-15));

  const std::array<double, 2> x = {1.0, 1.0};
  const std::array<double, 2> y = {2.5, 5.3};
  const auto a = diracs(2, {x}, {1.0});
  const auto b = diracs(2, {y}, {1.0});
  const OTResult r = exact_ot(a, b, 0.25);
  const double z = torus_distance(x, y, 2);
  CHECK(std::fabs(r.cost - log_cost(z, 0.25)) <= 1e-12);
  CHECK(r.plan.entries.size() == 1);
  CHECK(r.duality_gap <= 1e-8);
}

TEST_CASE("exact OT preconditions") {
  const auto a = diracs(1, {{0.0, 0.0}}, {1.0});
  const auto b = diracs(1, {{1.0, 0.0}}, {2.0});
  CHECK_THROWS_AS(exact_ot(a, b, 0.1), std::domain_error);
  DiscreteMeasure big;
  big.dim = 1;
  for (int i = 0; i < 3000; ++i) {
    big.points.push_back({i * 1e-3, 0.0});
    big.masses.push_back(1.0);
  }
  CHECK_THROWS_AS(exact_ot(big, big, 0.1), std::runtime_error);
}

TEST_CASE("exact OT matches the 3x3 vertex enumeration oracle") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> uni(0.1, 1.0);
  std::uniform_real_distribution<double> pos(0.0, kTwoPi);
  for (int trial = 0; trial < 25; ++trial) {
    DiscreteMeasure mu, nu;
    mu.dim = nu.dim = 2;
    std::array<double, 3> a{}, b{};
    double ta = 0.0, tb = 0.0;
    for (int i = 0; i < 3; ++i) {
      mu.points.push_back({pos(rng), pos(rng)});
      nu.points.push_back({pos(rng), pos(rng)});
      a[static_cast<std::size_t>(i)] = uni(rng);
      b[static_cast<std::size_t>(i)] = uni(rng);
      ta += a[static_cast<std::size_t>(i)];
      tb += b[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < 3; ++i) b[static_cast<std::size_t>(i)] *= ta / tb;
    mu.masses.assign(a.begin(), a.end());
    nu.masses.assign(b.begin(), b.end());

    std::array<std::array<double, 3>, 3> cost{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = log_cost(
            torus_distance(mu.points[static_cast<std::size_t>(i)],
                           nu.points[static_cast<std::size_t>(j)], 2),
            0.2);

    const double oracle = brute_force_3x3(a, b, cost);
    const OTResult r = exact_ot(mu, nu, 0.2);
    CHECK(std::fabs(r.cost - oracle) <= 1e-9 * std::max(1.0, oracle));
  }
}

TEST_CASE("exact OT duality certificate on random instances") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> uni(0.1, 1.0);
  std::uniform_real_distribution<double> pos(0.0, kTwoPi);
  DiscreteMeasure mu, nu;
  mu.dim = nu.dim = 2;
  double ta = 0.0, tb = 0.0;
  for (int i = 0; i < 50; ++i) {
    mu.points.push_back({pos(rng), pos(rng)});
    nu.points.push_back({pos(rng), pos(rng)});
    mu.masses.push_back(uni(rng));
    nu.masses.push_back(uni(rng));
    ta += mu.masses.back();
    tb += nu.masses.back();
  }
  for (auto& m : nu.masses) m *= ta / tb;
  const OTResult r = exact_ot(mu, nu, 0.15);
  CHECK(r.duality_gap <= 1e-8 * std::max(1.0, r.cost));
  CHECK(r.marginal_violation <= 1e-9);

  // the potential is d_delta-Lipschitz across all support pairs
  std::vector<std::array<double, 2>> pts = mu.points;
  pts.insert(pts.end(), nu.points.begin(), nu.points.end());
  std::vector<double> phi = r.potential_source;
  phi.insert(phi.end(), r.potential_target.begin(), r.potential_target.end());
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const double d = log_cost(torus_distance(pts[i], pts[j], 2), 0.15);
      CHECK(phi[i] - phi[j] <= d + 1e-8);
    }

  // complementary slackness: positive plan entries sit on tight arcs
  for (const auto& e : r.plan.entries) {
    const double c = log_cost(
        torus_distance(mu.points[static_cast<std::size_t>(e.i)],
                       nu.points[static_cast<std::size_t>(e.j)], 2),
        0.15);
    const double dual = r.potential_source[static_cast<std::size_t>(e.i)] -
                        r.potential_target[static_cast<std::size_t>(e.j)];
    CHECK(std::fabs(c - dual) <= 1e-8);
  }
}

TEST_CASE("entropic OT approaches the exact cost monotonically") {
  const auto a = diracs(1, {{0.5, 0.0}, {2.0, 0.0}, {4.0, 0.0}}, {0.4, 0.3, 0.3});
  const auto b = diracs(1, {{1.0, 0.0}, {3.0, 0.0}, {5.5, 0.0}}, {0.2, 0.5, 0.3});
  const OTResult exact = exact_ot(a, b, 0.2);
  double prev_err = std::numeric_limits<double>::infinity();
  for (double eps : {0.5, 0.2, 0.1, 0.05, 0.02, 0.01}) {
    const OTResult ent = entropic_ot(a, b, 0.2, eps);
    const double err = std::fabs(ent.cost - exact.cost);
    CHECK(ent.cost >= exact.cost - 1e-9);  // plan cost dominates the optimum
    CHECK(err <= prev_err + 1e-9);
    prev_err = err;
  }
  CHECK(prev_err < 1e-3);

  // mu = nu: cost tends to zero with eps
  const OTResult self = entropic_ot(a, a, 0.2, 1e-3);
  CHECK(self.cost < 1e-2);

  // two-Dirac instance within 1% at small epsilon
  const auto da = diracs(1, {{1.0, 0.0}}, {1.0});
  const auto db = diracs(1, {{2.2, 0.0}}, {1.0});
  const OTResult two = entropic_ot(da, db, 0.3, 1e-3 * std::log(2.0));
  CHECK(std::fabs(two.cost - log_cost(1.2, 0.3)) <= 0.01 * log_cost(1.2, 0.3));
}

TEST_CASE("entropic OT marginal violation on random 50-point instances") {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> uni(0.1, 1.0);
  std::uniform_real_distribution<double> pos(0.0, kTwoPi);
  DiscreteMeasure mu, nu;
  mu.dim = nu.dim = 2;
  double ta = 0.0, tb = 0.0;
  for (int i = 0; i < 50; ++i) {
    mu.points.push_back({pos(rng), pos(rng)});
    nu.points.push_back({pos(rng), pos(rng)});
    mu.masses.push_back(uni(rng));
    nu.masses.push_back(uni(rng));
    ta += mu.masses.back();
    tb += nu.masses.back();
  }
  for (auto& m : nu.masses) m *= ta / tb;
  const OTResult r = entropic_ot(mu, nu, 0.2, 0.05);
  CHECK(r.marginal_violation < 1e-8);
  CHECK(r.cost >= exact_ot(mu, nu, 0.2).cost - 1e-9);
}

TEST_CASE("kr distance on fields") {
  const TorusGrid g = make_grid(1, 64);
  const PhysicalField f = inverse_transform(spectral_harmonic(g, 1));

  CHECK(kr_distance(f, f, 0.1).value == 0.0);

  // theta1 = cos x, theta2 = cos(x - pi) = -cos x: sigma = 2 cos x
  PhysicalField shifted = f;
  for (auto& v : shifted.values) v = -v;
  const KRResult r = kr_distance(f, shifted, 0.1);
  CHECK(r.value > 0.0);
  const double mass = 4.0;  // integral of (2 cos x)^+
  CHECK(r.value <= log_cost(kTwoPi / 2.0, 0.1) * mass * 1.01);

  // monotone in delta
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const PhysicalField p1 = inverse_transform(random_band_limited(g, seed, 8));
    const PhysicalField p2 = inverse_transform(random_band_limited(g, seed + 50, 8));
    const double d1 = kr_distance(p1, p2, 0.05).value;
    const double d2 = kr_distance(p1, p2, 0.2).value;
    CHECK(d1 >= d2 - 1e-12);
  }

  // symmetry and subadditivity of the induced functional on mean-free fields
  const TorusGrid g2 = make_grid(2, 16);
  const PhysicalField zero2(g2);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const PhysicalField s1 = inverse_transform(random_band_limited(g2, seed, 4));
    const PhysicalField s2 = inverse_transform(random_band_limited(g2, seed + 9, 4));
    const double d12 = kr_distance(s1, s2, 0.1).value;
    const double d21 = kr_distance(s2, s1, 0.1).value;
    CHECK(d12 == doctest::Approx(d21).epsilon(1e-8));
    PhysicalField sum(g2);
    for (std::size_t i = 0; i < sum.values.size(); ++i)
      sum.values[i] = s1.values[i] + s2.values[i];
    const double dsum = kr_distance(sum, zero2, 0.1).value;
    const double d1 = kr_distance(s1, zero2, 0.1).value;
    const double d2 = kr_distance(s2, zero2, 0.1).value;
    CHECK(dsum <= d1 + d2 + 1e-8);
  }
}

TEST_CASE("coarsening preserves mass and reduces support") {
  const TorusGrid g = make_grid(2, 64);
  const PhysicalField f = inverse_transform(random_band_limited(g, 4, 12));
  const SignedSplit s = signed_split(f);
  const DiscreteMeasure c = coarsen_measure(s.positive, 16);
  CHECK(c.size() <= 256);
  CHECK(c.total() == doctest::Approx(s.positive.total()).epsilon(1e-12));

  KROptions opts;
  opts.max_support = 128;
  const KRResult r = kr_distance(f, PhysicalField(g), 0.1, opts);
  CHECK(r.coarsen_radius > 0.0);
  CHECK(r.support_positive <= 128);
}

TEST_CASE("L1 norm interpolates between transport distance and tail smoothness") {
  const TorusGrid g = make_grid(1, 128);
  const LPFamily fam = build_family(GeneratorSpec::smooth_bump(), g);
  const PhysicalField sigma = inverse_transform(spectral_harmonic(g, 1));

  const auto rep = check_l1_transport_interpolation(sigma, 1.0, 8.0, 0.1, fam);
  CHECK(rep.l1_norm == doctest::Approx(4.0).epsilon(1e-3));
  CHECK(rep.min_constant > 0.0);
  CHECK(rep.l1_norm <= rep.min_constant * (rep.transport_term + rep.besov_term) + 1e-12);

  CHECK_THROWS_AS(check_l1_transport_interpolation(sigma, 1.0, 1.5, 0.1, fam),
                  std::invalid_argument);

  // stability of the fitted constant under grid doubling
  std::vector<double> consts;
  for (int n : {128, 256}) {
    const TorusGrid gn = make_grid(1, n);
    const LPFamily famn = build_family(GeneratorSpec::smooth_bump(), gn);
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const PhysicalField s = inverse_transform(random_band_limited(gn, seed, 16));
      worst = std::max(
          worst, check_l1_transport_interpolation(s, 0.9, 8.0, 0.1, famn).min_constant);
    }
    consts.push_back(worst);
  }
  CHECK(std::fabs(consts[1] / consts[0] - 1.0) <= 0.25);
}
