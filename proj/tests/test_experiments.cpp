#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>

#include <fstream>

#include "lpt/besov.hpp"
#include "lpt/experiments.hpp"
#include "lpt/random_fields.hpp"

using namespace lpt;
namespace num = std::numbers;

namespace {

ExperimentConfig base_config() {
  ExperimentConfig cfg;
  cfg.kind = "regularity";
  cfg.model = "zero";
  cfg.ic = "harmonic";
  cfg.ic_mode = 4;
  cfg.n = 64;
  cfg.d = 1;
  cfg.a = 0.9;
  cfg.p = 2.0;
  cfg.t_end = 1.0;
  cfg.dt = 0.01;
  cfg.samples = 10;
  return cfg;
}

}  // namespace

TEST_CASE("config text parsing") {
  const std::string text = R"(
# comment lines are ignored
kind      zerodiff
model     alternating_shear
period    1.0
n         128
d         2
a         0.9
p         2
kappa     1e-3,1e-4,1e-5,1e-6
t_end     1.0
dt        0.005
seed      42
band      4
samples   10
out_csv   sweep.csv
)";
  const ExperimentConfig cfg = parse_config_text(text);
  CHECK(cfg.kind == "zerodiff");
  CHECK(cfg.model == "alternating_shear");
  CHECK(cfg.kappas.size() == 4);
  CHECK(cfg.kappas[3] == 1e-6);
  CHECK(cfg.seed == 42);
  CHECK(cfg.out_csv == "sweep.csv");
  cfg.validate();

  CHECK_THROWS_AS(parse_config_text("unknown_key 3\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("n notanumber\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("n\n"), std::invalid_argument);
}

TEST_CASE("config validation catches bad parameter ranges") {
  ExperimentConfig cfg = base_config();
  cfg.a = 1.2;  // >= p/2 = 1
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("config error"),
                       std::invalid_argument);
  cfg = base_config();
  cfg.a = 0.3;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = base_config();
  cfg.kind = "zerodiff";
  cfg.kappas = {1e-3, 1e-4};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.kappas = {1e-3, 5e-4, 2e-4, 1e-4};  // not enough decades
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = base_config();
  cfg.kind = "diffusive";
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);  // no kappa
  cfg = base_config();
  cfg.model = "steady_shear";  // needs d = 2
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = base_config();
  cfg.d = 2;
  cfg.model = "alternating_shear";
  cfg.period = 1.0;
  cfg.dt = 0.003;  // does not divide the half period
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("regularity run with zero velocity gives constant C = 1") {
  const ExperimentResult res = run_regularity(base_config());
  CHECK(res.summary.at("sup_min_c") == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t r = 0; r < res.series.rows.size(); ++r)
    CHECK(res.series.at(r, "min_c") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.summary.at("besov0") ==
        doctest::Approx(std::pow(3.0, 0.9) * std::sqrt(num::pi)).epsilon(1e-10));
}

TEST_CASE("regularity run with uniform velocity matches the zero-velocity run") {
  ExperimentConfig cfg = base_config();
  cfg.model = "uniform";
  cfg.ux = 1.0;
  const ExperimentResult res = run_regularity(cfg);
  CHECK(std::fabs(res.summary.at("sup_min_c") - 1.0) < 1e-6);
}

TEST_CASE("diffusive run reproduces the single-mode closed form") {
  ExperimentConfig cfg = base_config();
  cfg.kind = "diffusive";
  cfg.kappas = {1e-2};
  cfg.dt = 1e-3;
  const double kappa = cfg.kappas[0];
  const double a = cfg.a;
  const ExperimentResult res = run_diffusive(cfg);
  for (std::size_t r = 0; r < res.series.times.size(); ++r) {
    const double t = res.series.times[r];
    const double besov_exact =
        std::pow(3.0, a) * std::sqrt(num::pi) * std::exp(-16.0 * kappa * t);
    const double diss_exact = std::pow(3.0, a) * 4.0 *
                              std::sqrt(num::pi * (1.0 - std::exp(-32.0 * kappa * t)) / 32.0);
    CHECK(res.series.at(r, "besov") ==
          doctest::Approx(besov_exact).epsilon(1e-8));
    CHECK(res.series.at(r, "dissipation") ==
          doctest::Approx(diss_exact).epsilon(1e-6));
  }
}

TEST_CASE("diffusive records approach regularity records as kappa -> 0") {
  ExperimentConfig cfg = base_config();
  cfg.d = 2;
  cfg.n = 64;
  cfg.model = "steady_shear";
  cfg.ic = "random";
  cfg.band = 6;
  cfg.dt = 0.005;
  cfg.t_end = 0.5;
  const ExperimentResult reference = run_regularity(cfg);
  double prev_gap = std::numeric_limits<double>::infinity();
  for (double kappa : {1e-3, 1e-5}) {
    ExperimentConfig dcfg = cfg;
    dcfg.kind = "diffusive";
    dcfg.kappas = {kappa};
    const ExperimentResult res = run_diffusive(dcfg);
    double gap = 0.0;
    for (std::size_t r = 0; r < res.series.times.size(); ++r)
      gap = std::max(gap, std::fabs(res.series.at(r, "besov") -
                                    reference.series.at(r, "besov")));
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 1e-2);
}

TEST_CASE("zero-diffusivity sweep reproduces the pure-diffusion closed form") {
  ExperimentConfig cfg = base_config();
  cfg.kind = "zerodiff";
  cfg.kappas = {1e-2, 1e-3, 1e-4, 1e-5};
  cfg.dt = 1e-3;
  cfg.samples = 5;
  const ExperimentResult res = run_zero_diffusivity_sweep(cfg);
  REQUIRE(res.series.times.size() == 4);
  for (std::size_t r = 0; r < res.series.times.size(); ++r) {
    const double kappa = res.series.times[r];
    const double strong_exact =
        (1.0 - std::exp(-16.0 * kappa * cfg.t_end)) * std::sqrt(num::pi);
    CHECK(res.series.at(r, "strong_error") ==
          doctest::Approx(strong_exact).epsilon(1e-7));
    // bound direction: every row sits below its fitted-constant envelope
    CHECK(res.series.at(r, "strong_error") <=
          res.summary.at("c_strong") * res.series.at(r, "rhs_strong") * (1.0 + 1e-12));
    CHECK(res.series.at(r, "dissipation") <=
          res.summary.at("c_diss") * res.series.at(r, "rhs_diss") * (1.0 + 1e-12));
    CHECK(res.series.at(r, "weak_error") <=
          res.summary.at("c_weak") * res.series.at(r, "rhs_weak") * (1.0 + 1e-12));
  }
  // pure diffusion decays faster than the logarithmic envelope
  CHECK(res.summary.at("fit_slope") < -cfg.a);
}

TEST_CASE("mixing run: zero velocity has flat H^{-1}") {
  ExperimentConfig cfg = base_config();
  cfg.kind = "mixing";
  cfg.ic = "random";
  cfg.band = 8;
  cfg.t_end = 2.0;
  cfg.dt = 0.01;
  cfg.samples = 20;
  const ExperimentResult res = run_mixing(cfg);
  CHECK(std::fabs(res.summary.at("lambda")) < 1e-8);
  CHECK(res.summary.at("envelope_deviation") < 1e-8);
  CHECK(res.summary.at("subexponential") == 0.0);
}

TEST_CASE("mixing run: steady shear flagged sub-exponential, half-energy times recorded") {
  ExperimentConfig cfg = base_config();
  cfg.kind = "mixing";
  cfg.d = 2;
  cfg.n = 64;
  cfg.model = "steady_shear";
  cfg.ic = "random";
  cfg.band = 4;
  cfg.seed = 3;
  cfg.t_end = 10.0;
  cfg.dt = 0.01;
  cfg.samples = 40;
  cfg.kappas = {0.1};
  const ExperimentResult res = run_mixing(cfg);
  CHECK(res.summary.at("lambda") > 0.0);
  CHECK(res.summary.at("subexponential") == 1.0);
  CHECK(res.summary.at("half_time_0") > 0.0);
  CHECK(res.summary.at("log_inv_kappa_0") ==
        doctest::Approx(std::log(1.0 / 0.1)).epsilon(1e-12));
}

TEST_CASE("emit and reload round trip") {
  ExperimentConfig cfg = base_config();
  cfg.out_csv = "test_emit.csv";
  cfg.out_json = "test_emit.json";
  const ExperimentResult res = run_regularity(cfg);
  emit_csv(res, cfg.out_csv);
  emit_json(res, cfg.out_json);

  // CSV row count equals the number of observer times (plus a header)
  std::ifstream csv(cfg.out_csv);
  std::string line;
  std::size_t lines = 0;
  std::string header;
  while (std::getline(csv, line)) {
    if (lines == 0) header = line;
    ++lines;
  }
  CHECK(lines == res.series.times.size() + 1);
  CHECK(header == "t,besov,bound,min_c");

  const ExperimentResult back = load_json(cfg.out_json);
  CHECK(back.series.times == res.series.times);
  CHECK(back.series.rows == res.series.rows);
  CHECK(back.series.columns == res.series.columns);
  CHECK(back.summary == res.summary);
  CHECK(back.config.kind == res.config.kind);
  CHECK(back.config.seed == res.config.seed);
  CHECK(back.config.dt == res.config.dt);

  ExperimentResult empty;
  CHECK_THROWS_AS(emit_csv(empty, "nope.csv"), std::invalid_argument);
  CHECK_THROWS_AS(emit_json(empty, "nope.json"), std::invalid_argument);
  CHECK_THROWS_AS(load_json("missing_file.json"), std::runtime_error);
  std::remove(cfg.out_csv.c_str());
  std::remove(cfg.out_json.c_str());
}

TEST_CASE("reruns are bitwise reproducible") {
  ExperimentConfig cfg = base_config();
  cfg.d = 2;
  cfg.n = 32;
  cfg.model = "steady_shear";
  cfg.ic = "random";
  cfg.seed = 99;
  cfg.band = 4;
  cfg.dt = 0.02;
  cfg.t_end = 0.4;
  const ExperimentResult r1 = run_regularity(cfg);
  const ExperimentResult r2 = run_regularity(cfg);
  CHECK(r1.series.rows == r2.series.rows);
  CHECK(r1.summary == r2.summary);
}

TEST_CASE("rate bound inputs") {
  ExperimentConfig cfg = base_config();
  cfg.d = 2;
  cfg.n = 64;
  cfg.model = "steady_shear";
  cfg.t_end = 1.0;
  const RateBoundInputs in = rate_bound_inputs(cfg);
  CHECK(in.linf0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(in.grad_lp_integral ==
        doctest::Approx(std::numbers::pi * std::sqrt(2.0)).epsilon(1e-10));
  CHECK(in.lambda == doctest::Approx(std::pow(in.grad_lp_integral, cfg.a) * in.linf0 +
                                     in.besov0)
                         .epsilon(1e-12));
}

TEST_CASE("observer-attached dissipation weights accumulate through solve") {
  const TorusGrid g = make_grid(1, 64);
  SolverConfig cfg;
  cfg.kappa = 0.01;
  cfg.dt = 1e-3;
  ObserverSet obs;
  obs.times = {1.0};
  obs.dissipation_weights.push_back(gradient_weight(g));
  Diagnostic diag{"wdiss", [](const Simulation& s) { return s.weighted_dissipation(0); }};
  obs.diagnostics.push_back(diag);
  const TimeSeries ts =
      solve(spectral_harmonic(g, 4), VelocityModel::zero(), cfg, 1.0, obs);
  // exact: int_0^1 16 pi e^{-32 kappa s} ds
  const double exact =
      16.0 * std::numbers::pi * (1.0 - std::exp(-32.0 * cfg.kappa)) / (32.0 * cfg.kappa);
  CHECK(ts.rows[0][0] == doctest::Approx(exact).epsilon(1e-7));
}

TEST_CASE("diagnostic specs parse and reject unknown names") {
  const TorusGrid g = make_grid(1, 64);
  CHECK(make_diagnostic("l2", g).name == "l2");
  CHECK(make_diagnostic("besov:a=0.9", g).name == "besov:a=0.9");
  CHECK(make_diagnostic("hs:s=-2", g).name == "hs:s=-2");
  CHECK(make_diagnostic("lq:q=3", g).name == "lq:q=3");
  CHECK_THROWS_AS(make_diagnostic("nonsense", g), std::invalid_argument);
  CHECK_THROWS_AS(make_diagnostic("besov", g), std::invalid_argument);  // missing a
  CHECK_THROWS_AS(make_diagnostic("besov:b=1", g), std::invalid_argument);
}
