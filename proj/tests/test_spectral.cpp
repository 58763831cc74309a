#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lpt/fft.hpp"
#include "lpt/kernels.hpp"
#include "lpt/random_fields.hpp"
#include "lpt/snapshot.hpp"
#include "lpt/spectral_ops.hpp"

using namespace lpt;
namespace num = std::numbers;

namespace {

double max_coeff_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    m = std::max(m, std::abs(a.coeffs[i] - b.coeffs[i]));
  return m;
}

double max_value_diff(const PhysicalField& a, const PhysicalField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    m = std::max(m, std::fabs(a.values[i] - b.values[i]));
  return m;
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(make_grid(3, 64), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1, 4), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(2, 100), std::invalid_argument);
  const TorusGrid g = make_grid(2, 64);
  CHECK(g.size() == 4096);
  CHECK(g.spacing() == doctest::Approx(kTwoPi / 64));
}

TEST_CASE("forward transform of constants and single harmonics") {
  const TorusGrid g = make_grid(1, 64);
  PhysicalField f(g);
  for (auto& v : f.values) v = 3.0;
  SpectralField F = forward_transform(f);
  CHECK(std::abs(F.mode(0) - 3.0) < 1e-13);
  for (int e = 1; e <= 32; ++e) {
    CHECK(std::abs(F.mode(e)) < 1e-13);
    CHECK(std::abs(F.mode(-e)) < 1e-13);
  }

  const PhysicalField c4 = single_harmonic(g, 4);
  SpectralField C4 = forward_transform(c4);
  CHECK(std::abs(C4.mode(4) - 0.5) < 1e-13);
  CHECK(std::abs(C4.mode(-4) - 0.5) < 1e-13);
  C4.mode(4) = 0.0;
  C4.mode(-4) = 0.0;
  for (const auto& c : C4.coeffs) CHECK(std::abs(c) < 1e-13);
}

TEST_CASE("inverse transform synthesizes single modes") {
  const TorusGrid g = make_grid(1, 32);
  SpectralField F(g);
  F.mode(1) = 0.5;
  F.mode(-1) = 0.5;
  const PhysicalField f = inverse_transform(F);
  for (int i = 0; i < g.n; ++i)
    CHECK(f.values[static_cast<std::size_t>(i)] ==
          doctest::Approx(std::cos(i * g.spacing())).epsilon(1e-12));

  const SpectralField zero(g);
  const PhysicalField z = inverse_transform(zero);
  for (double v : z.values) CHECK(v == 0.0);
}

TEST_CASE("inverse transform rejects non-Hermitian input") {
  const TorusGrid g = make_grid(1, 32);
  SpectralField F(g);
  F.mode(3) = {0.0, 1.0};  // missing conjugate partner
  CHECK_THROWS_AS(inverse_transform(F), std::domain_error);
}

TEST_CASE("round trip is exact to 1e-12 on random fields") {
  for (int dim : {1, 2}) {
    const TorusGrid g = make_grid(dim, dim == 1 ? 256 : 64);
    std::mt19937_64 rng(7 + dim);
    std::normal_distribution<double> dist;
    PhysicalField f(g);
    for (auto& v : f.values) v = dist(rng);
    const PhysicalField back = inverse_transform(forward_transform(f));
    CHECK(max_value_diff(f, back) < 1e-12 * kernels::max_abs(f.values));

    // inverse then forward on the Hermitian side
    const SpectralField F = random_band_limited(g, 5, g.n / 4);
    const SpectralField F2 = forward_transform(inverse_transform(F));
    CHECK(max_coeff_diff(F, F2) < 1e-12);
  }
}

TEST_CASE("lq norms: closed forms and Parseval") {
  const TorusGrid g = make_grid(1, 128);
  const PhysicalField c4 = single_harmonic(g, 4);
  CHECK(lq_norm(c4, 2.0) == doctest::Approx(std::sqrt(num::pi)).epsilon(1e-12));

  PhysicalField one(g);
  for (auto& v : one.values) v = 1.0;
  for (double q : {1.0, 2.0, 3.0}) {
    CHECK(lq_norm(one, q) == doctest::Approx(std::pow(kTwoPi, 1.0 / q)).epsilon(1e-12));
  }
  CHECK(lq_norm(one, std::numeric_limits<double>::infinity()) == 1.0);
  CHECK_THROWS_AS(lq_norm(one, 0.5), std::invalid_argument);

  // Parseval: physical L2 quadrature vs coefficient sum with (2pi)^d factor
  const SpectralField F = random_band_limited(g, 11, 40);
  const PhysicalField f = inverse_transform(F);
  CHECK(lq_norm(f, 2.0) == doctest::Approx(l2_norm(F)).epsilon(1e-12));

  const TorusGrid g2 = make_grid(2, 64);
  PhysicalField one2(g2);
  for (auto& v : one2.values) v = 1.0;
  CHECK(lq_norm(one2, 1.0) == doctest::Approx(kTwoPi * kTwoPi).epsilon(1e-12));
}

TEST_CASE("gradient: harmonics, constants, finite-difference oracle") {
  const TorusGrid g = make_grid(1, 256);
  const SpectralField C4 = forward_transform(single_harmonic(g, 4));
  const PhysicalField d = inverse_transform(gradient(C4)[0]);
  for (int i = 0; i < g.n; ++i)
    CHECK(d.values[static_cast<std::size_t>(i)] ==
          doctest::Approx(-4.0 * std::sin(4 * i * g.spacing())).epsilon(1e-10));

  PhysicalField cst(g);
  for (auto& v : cst.values) v = 2.5;
  const auto cst_grad = gradient(forward_transform(cst));
  for (const auto& c : cst_grad[0].coeffs) CHECK(std::abs(c) < 1e-12);

  // 6th-order centered differences as the independent oracle
  const SpectralField F = random_band_limited(g, 3, 8);
  const PhysicalField f = inverse_transform(F);
  const PhysicalField fx = inverse_transform(gradient(F)[0]);
  const double h = g.spacing();
  double worst = 0.0, scale = 0.0;
  for (int i = 0; i < g.n; ++i) {
    auto at = [&](int j) { return f.values[static_cast<std::size_t>((j % g.n + g.n) % g.n)]; };
    const double fd = (at(i + 3) - at(i - 3) - 9.0 * (at(i + 2) - at(i - 2)) +
                       45.0 * (at(i + 1) - at(i - 1))) /
                      (60.0 * h);
    worst = std::max(worst, std::fabs(fd - fx.values[static_cast<std::size_t>(i)]));
    scale = std::max(scale, std::fabs(fx.values[static_cast<std::size_t>(i)]));
  }
  CHECK(worst < 1e-6 * scale);
}

TEST_CASE("divergence-free projection") {
  const TorusGrid g = make_grid(2, 64);

  // shear (sin x2, 0) is already divergence-free: projector keeps it
  VectorField shear;
  shear.comps.assign(2, PhysicalField(g));
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      shear.comps[0].values[flat_index(g, i, j)] = std::sin(j * g.spacing());
  const VectorField pshear = project_divergence_free(shear);
  CHECK(max_value_diff(pshear.comps[0], shear.comps[0]) < 1e-12);
  CHECK(kernels::max_abs(pshear.comps[1].values) < 1e-12);

  // pure gradient field is annihilated
  const SpectralField H = random_band_limited(g, 9, 10);
  auto grad_h = gradient(H);
  VectorField gradient_field;
  gradient_field.comps.push_back(inverse_transform(grad_h[0]));
  gradient_field.comps.push_back(inverse_transform(grad_h[1]));
  const VectorField killed = project_divergence_free(gradient_field);
  const double scale = std::max(kernels::max_abs(gradient_field.comps[0].values),
                                kernels::max_abs(gradient_field.comps[1].values));
  CHECK(kernels::max_abs(killed.comps[0].values) < 1e-12 * scale);
  CHECK(kernels::max_abs(killed.comps[1].values) < 1e-12 * scale);

  // random field: output divergence below 1e-12 of output scale; projector
  // idempotent and self-adjoint
  std::mt19937_64 rng(123);
  std::normal_distribution<double> dist;
  VectorField v;
  v.comps.assign(2, PhysicalField(g));
  for (auto& comp : v.comps)
    for (auto& val : comp.values) val = dist(rng);
  const VectorField p = project_divergence_free(v);
  CHECK(divergence_residual(p) < 1e-12);
  const VectorField pp = project_divergence_free(p);
  CHECK(max_value_diff(pp.comps[0], p.comps[0]) < 1e-10);
  CHECK(max_value_diff(pp.comps[1], p.comps[1]) < 1e-10);

  // self-adjointness in the L2 inner product: <Pv, w> = <v, Pw>
  VectorField w;
  w.comps.assign(2, PhysicalField(g));
  for (auto& comp : w.comps)
    for (auto& val : comp.values) val = dist(rng);
  const VectorField pw = project_divergence_free(w);
  const double lhs = l2_inner_product(p.comps[0], w.comps[0]) +
                     l2_inner_product(p.comps[1], w.comps[1]);
  const double rhs = l2_inner_product(v.comps[0], pw.comps[0]) +
                     l2_inner_product(v.comps[1], pw.comps[1]);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("remove_mean") {
  const TorusGrid g = make_grid(1, 64);
  PhysicalField f(g);
  for (auto& v : f.values) v = 5.0;
  const PhysicalField z = remove_mean(f);
  for (double v : z.values) CHECK(v == 0.0);  // exact: pairwise mean of a constant

  PhysicalField shifted = single_harmonic(g, 1);
  for (auto& v : shifted.values) v += 2.0;
  const PhysicalField c = remove_mean(shifted);
  const PhysicalField expect = single_harmonic(g, 1);
  CHECK(max_value_diff(c, expect) < 1e-12);

  // idempotence
  std::mt19937_64 rng(77);
  std::normal_distribution<double> dist;
  PhysicalField r(g);
  for (auto& v : r.values) v = dist(rng);
  const PhysicalField once = remove_mean(r);
  const PhysicalField twice = remove_mean(once);
  CHECK(max_value_diff(once, twice) < 1e-13);

  // spectral version zeroes exactly the zero mode
  SpectralField F = random_band_limited(g, 2, 8);
  F.coeffs[0] = {3.0, 0.0};
  const SpectralField G = remove_mean(F);
  CHECK(G.coeffs[0] == std::complex<double>(0.0, 0.0));
  F.coeffs[0] = 0.0;
  CHECK(max_coeff_diff(F, G) == 0.0);
}

TEST_CASE("gradient commutes with remove_mean") {
  const TorusGrid g = make_grid(1, 64);
  SpectralField F = random_band_limited(g, 21, 16);
  F.coeffs[0] = {1.0, 0.0};
  const SpectralField a = gradient(remove_mean(F))[0];
  const SpectralField b = remove_mean(gradient(F)[0]);
  CHECK(max_coeff_diff(a, b) == 0.0);
}

TEST_CASE("dealias") {
  const TorusGrid g1 = make_grid(1, 64);
  SpectralField F = random_band_limited(g1, 4, g1.n / 3);
  const SpectralField D = dealias(F);
  CHECK(max_coeff_diff(F, D) == 0.0);  // band-limited input untouched

  SpectralField nyq(g1);
  nyq.mode(g1.n / 2) = 1.0;
  const SpectralField dn = dealias(nyq);
  for (const auto& c : dn.coeffs) CHECK(c == std::complex<double>(0.0, 0.0));

  // product of two n/3-band-limited fields, dealiased, matches the exact
  // product computed on a 2n grid
  const TorusGrid fine = make_grid(1, 128);
  const int band = 64 / 3;
  const SpectralField A = random_band_limited(g1, 1, band);
  const SpectralField B = random_band_limited(g1, 2, band);
  PhysicalField pa = inverse_transform(A), pb = inverse_transform(B);
  PhysicalField prod(g1);
  for (std::size_t i = 0; i < prod.values.size(); ++i)
    prod.values[i] = pa.values[i] * pb.values[i];
  const SpectralField coarse = dealias(forward_transform(prod));

  const SpectralField Af = random_band_limited(fine, 1, band);
  const SpectralField Bf = random_band_limited(fine, 2, band);
  PhysicalField paf = inverse_transform(Af), pbf = inverse_transform(Bf);
  PhysicalField prodf(fine);
  for (std::size_t i = 0; i < prodf.values.size(); ++i)
    prodf.values[i] = paf.values[i] * pbf.values[i];
  const SpectralField exact = forward_transform(prodf);
  double worst = 0.0;
  for (int e = -band; e <= band; ++e)
    worst = std::max(worst, std::abs(coarse.mode(e) - exact.mode(e)));
  CHECK(worst < 1e-12);
}

TEST_CASE("snapshot round trip and validation") {
  const TorusGrid g = make_grid(2, 32);
  const PhysicalField f = inverse_transform(random_band_limited(g, 31, 8));
  const std::string path = "snapshot_test.lptf";
  write_snapshot(path, f);
  const PhysicalField back = read_snapshot(path);
  CHECK(back.grid == g);
  CHECK(max_value_diff(f, back) == 0.0);
  CHECK_THROWS_AS(read_snapshot("does_not_exist.lptf"), std::runtime_error);
  std::remove(path.c_str());
}
