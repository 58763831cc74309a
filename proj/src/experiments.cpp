#include "lpt/experiments.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "lpt/besov.hpp"
#include "lpt/fft.hpp"
#include "lpt/kernels.hpp"
#include "lpt/random_fields.hpp"
#include "lpt/spectral_ops.hpp"

namespace lpt {

using nlohmann::json;

const LPFamily& family_for(const TorusGrid& grid) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<LPFamily>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{grid.dim, grid.n}];
  if (!slot)
    slot = std::make_unique<LPFamily>(GeneratorSpec::smooth_bump(), grid);
  return *slot;
}

// --- configuration -----------------------------------------------------------

namespace {

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

bool nearly_integer(double x) { return std::fabs(x - std::lround(x)) < 1e-9; }

}  // namespace

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& msg) {
    throw std::invalid_argument("config error: " + msg);
  };
  if (kind != "regularity" && kind != "diffusive" && kind != "zerodiff" &&
      kind != "mixing")
    fail("unknown experiment kind '" + kind + "'");
  if (!(p > 1.0) || std::isinf(p)) fail("p must lie in (1, infinity)");
  if (a < 0.5 || a >= p / 2.0) fail("a must lie in [1/2, p/2)");
  if (t_end <= 0.0) fail("t_end must be positive");
  if (dt <= 0.0 || dt > t_end) fail("dt must lie in (0, t_end]");
  if (samples < 1) fail("samples must be >= 1");
  if (ic != "harmonic" && ic != "random" && ic != "checker")
    fail("unknown initial datum preset '" + ic + "'");
  if (band < 1 || ic_mode < 1) fail("band and ic_mode must be >= 1");
  make_grid(d, n);  // validates d, n

  const VelocityModel m = make_model(*this);
  if (m.required_dim() != 0 && m.required_dim() != d)
    fail("model '" + model + "' requires d = " + std::to_string(m.required_dim()));
  if (m.time_dependent() && !nearly_integer(period / 2.0 / dt))
    fail("dt must divide half the alternating-shear period");

  if (kind == "diffusive") {
    if (kappas.empty() || kappas[0] <= 0.0) fail("diffusive requires kappa > 0");
  } else if (kind == "zerodiff") {
    if (kappas.size() < 4) fail("zerodiff requires a kappa list of at least 4 values");
    double lo = kappas[0], hi = kappas[0];
    for (double k : kappas) {
      if (k <= 0.0) fail("zerodiff kappas must be positive");
      lo = std::min(lo, k);
      hi = std::max(hi, k);
    }
    if (hi / lo < 999.0) fail("zerodiff kappa list must span at least three decades");
  }
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::stringstream stream(text);
  std::string line;
  int lineno = 0;
  while (std::getline(stream, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::stringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    std::string value;
    ls >> value;
    if (value == "=") ls >> value;
    if (value.empty())
      throw std::invalid_argument("config error: missing value for '" + key +
                                  "' on line " + std::to_string(lineno));
    try {
      if (key == "kind") cfg.kind = value;
      else if (key == "model") cfg.model = value;
      else if (key == "ux") cfg.ux = std::stod(value);
      else if (key == "uy") cfg.uy = std::stod(value);
      else if (key == "period") cfg.period = std::stod(value);
      else if (key == "beta") cfg.beta = std::stod(value);
      else if (key == "r0") cfg.r0 = std::stod(value);
      else if (key == "ic") cfg.ic = value;
      else if (key == "ic_mode") cfg.ic_mode = std::stoi(value);
      else if (key == "seed") cfg.seed = std::stoull(value);
      else if (key == "band") cfg.band = std::stoi(value);
      else if (key == "slope") cfg.slope = std::stod(value);
      else if (key == "ic_sigma") cfg.ic_sigma = std::stod(value);
      else if (key == "n") cfg.n = std::stoi(value);
      else if (key == "d") cfg.d = std::stoi(value);
      else if (key == "a") cfg.a = std::stod(value);
      else if (key == "p") cfg.p = std::stod(value);
      else if (key == "kappa") cfg.kappas = parse_double_list(value);
      else if (key == "t_end") cfg.t_end = std::stod(value);
      else if (key == "dt") cfg.dt = std::stod(value);
      else if (key == "samples") cfg.samples = std::stoi(value);
      else if (key == "out_csv") cfg.out_csv = value;
      else if (key == "out_json") cfg.out_json = value;
      else
        throw std::invalid_argument("config error: unknown key '" + key +
                                    "' on line " + std::to_string(lineno));
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("config error: bad value '" + value + "' for '" +
                                  key + "' on line " + std::to_string(lineno));
    }
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

VelocityModel make_model(const ExperimentConfig& cfg) {
  if (cfg.model == "zero") return VelocityModel::zero();
  if (cfg.model == "uniform") return VelocityModel::uniform_flow(cfg.ux, cfg.uy);
  if (cfg.model == "steady_shear") return VelocityModel::steady_shear();
  if (cfg.model == "alternating_shear")
    return VelocityModel::alternating_shear(cfg.period);
  if (cfg.model == "cellular") return VelocityModel::cellular();
  if (cfg.model == "power_vortex")
    return VelocityModel::power_vortex(cfg.beta, cfg.r0);
  throw std::invalid_argument("config error: unknown velocity model '" + cfg.model +
                              "'");
}

SpectralField make_initial_datum(const ExperimentConfig& cfg, const TorusGrid& grid) {
  SpectralField theta(grid);
  if (cfg.ic == "harmonic") {
    theta = spectral_harmonic(grid, cfg.ic_mode);
  } else if (cfg.ic == "random") {
    theta = random_band_limited(grid, cfg.seed, cfg.band, cfg.slope);
  } else if (cfg.ic == "checker") {
    theta = checkerboard_smoothed(grid, cfg.ic_mode, cfg.ic_sigma);
  } else {
    throw std::invalid_argument("config error: unknown preset '" + cfg.ic + "'");
  }
  theta.coeffs[0] = 0.0;
  return normalize_sup(theta);
}

// --- fits ---------------------------------------------------------------------

RateFit fit_affine(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_affine: need two or more paired samples");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  RateFit fit;
  if (std::fabs(denom) < 1e-300) {
    fit.slope = 0.0;
    fit.intercept = sy / n;
  } else {
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
  }
  for (std::size_t i = 0; i < x.size(); ++i)
    fit.residual =
        std::max(fit.residual, std::fabs(fit.intercept + fit.slope * x[i] - y[i]));
  return fit;
}

// --- runners ------------------------------------------------------------------

namespace {

std::vector<double> sample_times(const ExperimentConfig& cfg) {
  const long total = std::lround(cfg.t_end / cfg.dt);
  std::vector<long> idx;
  for (int s = 0; s <= cfg.samples; ++s)
    idx.push_back(std::lround(static_cast<double>(s) * total / cfg.samples));
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  std::vector<double> times;
  for (long i : idx) times.push_back(static_cast<double>(i) * cfg.dt);
  return times;
}

// Integral of ||grad u||_p over [0, t]: the Jacobian norm is constant per
// shear phase and equal across phases, so this is exact.
double grad_lp_integral_to(const VelocityModel& model, double p, double t,
                           const TorusGrid& grid) {
  const std::vector<double> ts = {0.0, std::max(t, 0.0)};
  return gradient_lp_time_integral(model, p, ts, grid);
}

ExperimentResult run_bound_experiment(const ExperimentConfig& cfg, bool diffusive) {
  const TorusGrid grid = make_grid(cfg.d, cfg.n);
  const LPFamily& fam = family_for(grid);
  const SpectralField theta0 = make_initial_datum(cfg, grid);
  const VelocityModel model = make_model(cfg);
  const double kappa = diffusive ? cfg.kappas.at(0) : 0.0;

  const double b0 = besov_norm(theta0, cfg.a, fam).value;
  const double linf0 =
      lq_norm(inverse_transform_unchecked(theta0), std::numeric_limits<double>::infinity());

  SolverConfig scfg;
  scfg.kappa = kappa;
  scfg.dt = cfg.dt;

  const std::vector<double> besov_w = besov_block_weight(fam, cfg.a);
  std::vector<double> besov_grad_w;
  if (diffusive) {
    const std::vector<double> gw = gradient_weight(grid);
    besov_grad_w.resize(gw.size());
    for (std::size_t i = 0; i < gw.size(); ++i) besov_grad_w[i] = besov_w[i] * gw[i];
  }

  Simulation sim(theta0, model, scfg);
  std::size_t diss_handle = 0;
  if (diffusive) diss_handle = sim.attach_weighted_dissipation(besov_grad_w);

  ExperimentResult out;
  out.config = cfg;
  out.series.columns = diffusive
                           ? std::vector<std::string>{"besov", "dissipation", "lhs",
                                                      "bound", "min_c"}
                           : std::vector<std::string>{"besov", "bound", "min_c"};

  const std::vector<double> times = sample_times(cfg);
  double sup_c = 0.0;
  double last_c = 0.0;
  std::size_t next = 0;
  auto record = [&]() {
    const double t = sim.time();
    const double b =
        std::sqrt(grid.volume() * kernels::weighted_sumsq(sim.theta().coeffs, besov_w));
    const double ip = grad_lp_integral_to(model, cfg.p, t, grid);
    const double bound = std::pow(ip, cfg.a) * linf0 + b0;
    double lhs = b;
    std::vector<double> row;
    row.push_back(b);
    if (diffusive) {
      const double diss = std::sqrt(kappa * sim.weighted_dissipation(diss_handle));
      lhs = b + diss;
      row.push_back(diss);
      row.push_back(lhs);
    }
    const double c = lhs / bound;
    sup_c = std::max(sup_c, c);
    last_c = c;
    row.push_back(bound);
    row.push_back(c);
    out.series.times.push_back(t);
    out.series.rows.push_back(std::move(row));
  };

  const long total = std::lround(cfg.t_end / cfg.dt);
  if (next < times.size() && times[next] == 0.0) {
    record();
    ++next;
  }
  for (long s = 1; s <= total; ++s) {
    sim.step();
    while (next < times.size() &&
           std::lround(times[next] / cfg.dt) == s) {
      record();
      ++next;
    }
  }

  out.summary["sup_min_c"] = sup_c;
  out.summary["final_min_c"] = last_c;
  out.summary["besov0"] = b0;
  out.summary["linf0"] = linf0;
  out.summary["grad_lp_integral"] = grad_lp_integral_to(model, cfg.p, cfg.t_end, grid);
  out.summary["kappa"] = kappa;
  return out;
}

}  // namespace

RateBoundInputs rate_bound_inputs(const ExperimentConfig& cfg) {
  const TorusGrid grid = make_grid(cfg.d, cfg.n);
  const SpectralField theta0 = make_initial_datum(cfg, grid);
  RateBoundInputs in;
  in.besov0 = besov_norm(theta0, cfg.a, family_for(grid)).value;
  in.linf0 = lq_norm(inverse_transform_unchecked(theta0),
                     std::numeric_limits<double>::infinity());
  in.grad_lp_integral =
      grad_lp_integral_to(make_model(cfg), cfg.p, cfg.t_end, grid);
  in.lambda = std::pow(in.grad_lp_integral, cfg.a) * in.linf0 + in.besov0;
  return in;
}

ExperimentResult run_regularity(const ExperimentConfig& cfg) {
  ExperimentConfig c = cfg;
  c.kind = "regularity";
  c.validate();
  return run_bound_experiment(c, false);
}

ExperimentResult run_diffusive(const ExperimentConfig& cfg) {
  ExperimentConfig c = cfg;
  c.kind = "diffusive";
  c.validate();
  return run_bound_experiment(c, true);
}

ExperimentResult run_zero_diffusivity_sweep(const ExperimentConfig& cfg) {
  ExperimentConfig c = cfg;
  c.kind = "zerodiff";
  c.validate();
  const TorusGrid grid = make_grid(c.d, c.n);
  const LPFamily& fam = family_for(grid);
  const SpectralField theta0 = make_initial_datum(c, grid);
  const VelocityModel model = make_model(c);

  const double b0 = besov_norm(theta0, c.a, fam).value;
  const double linf0 =
      lq_norm(inverse_transform_unchecked(theta0), std::numeric_limits<double>::infinity());
  const double ip = grad_lp_integral_to(model, c.p, c.t_end, grid);
  const double lambda_bound = std::pow(ip, c.a) * linf0 + b0;  // Lambda(t)
  const double q = c.p / (c.p - 1.0);

  const std::vector<double> times = sample_times(c);
  const long total_steps = std::lround(c.t_end / c.dt);
  std::vector<long> sample_idx;
  for (double t : times) sample_idx.push_back(std::lround(t / c.dt));

  // reference advective solution with physical snapshots at the sample times
  SolverConfig ref_cfg;
  ref_cfg.kappa = 0.0;
  ref_cfg.dt = c.dt;
  std::vector<PhysicalField> ref_snapshots;
  SpectralField ref_final(grid);
  {
    Simulation ref(theta0, model, ref_cfg);
    std::size_t next = 0;
    auto snap = [&]() { ref_snapshots.push_back(ref.theta_physical()); };
    if (next < sample_idx.size() && sample_idx[next] == 0) {
      snap();
      ++next;
    }
    for (long s = 1; s <= total_steps; ++s) {
      ref.step();
      while (next < sample_idx.size() && sample_idx[next] == s) {
        snap();
        ++next;
      }
    }
    ref_final = ref.theta();
  }

  ExperimentResult out;
  out.config = c;
  out.series.abscissa = "kappa";
  out.series.columns = {"strong_error",  "dissipation", "weak_error",
                        "rhs_strong",    "rhs_diss",    "rhs_weak",
                        "delta",         "sup_lq_diff", "coarsen_radius"};

  double c_strong = 0.0, c_diss = 0.0, c_weak = 0.0;
  std::vector<double> fit_x, fit_y;
  for (double kappa : c.kappas) {
    SolverConfig kcfg;
    kcfg.kappa = kappa;
    kcfg.dt = c.dt;
    Simulation sim(theta0, model, kcfg);
    double sup_lq = 0.0;
    std::size_t next = 0;
    auto measure = [&]() {
      const PhysicalField cur = sim.theta_physical();
      PhysicalField diff = cur;
      const PhysicalField& ref = ref_snapshots.at(next);
      for (std::size_t i = 0; i < diff.values.size(); ++i)
        diff.values[i] -= ref.values[i];
      sup_lq = std::max(sup_lq, lq_norm(diff, q));
    };
    if (next < sample_idx.size() && sample_idx[next] == 0) {
      measure();
      ++next;
    }
    for (long s = 1; s <= total_steps; ++s) {
      sim.step();
      while (next < sample_idx.size() && sample_idx[next] == s) {
        measure();
        ++next;
      }
    }

    // strong error and dissipation at t_end
    double strong_sq = 0.0;
    for (std::size_t i = 0; i < ref_final.coeffs.size(); ++i)
      strong_sq += std::norm(sim.theta().coeffs[i] - ref_final.coeffs[i]);
    const double strong = std::sqrt(grid.volume() * strong_sq);
    const double diss = std::sqrt(kappa * sim.l2_dissipation_integral());

    const double kt = kappa * c.t_end;
    const double logfac = std::pow(std::log(2.0 + 1.0 / kt), -c.a);
    const double delta = std::sqrt(kt) * logfac;
    const double rhs_strong =
        logfac * ((1.0 + std::pow(ip, c.p)) * linf0 + b0);
    const double rhs_diss = logfac * lambda_bound;

    const KRResult weak =
        kr_distance(sim.theta_physical(), ref_snapshots.back(), delta);
    const double rhs_weak = sup_lq * ip + lambda_bound;

    c_strong = std::max(c_strong, strong / rhs_strong);
    c_diss = std::max(c_diss, diss / rhs_diss);
    c_weak = std::max(c_weak, weak.value / rhs_weak);
    if (strong > 0.0) {
      fit_x.push_back(std::log(std::log(2.0 + 1.0 / kt)));
      fit_y.push_back(std::log(strong));
    }

    out.series.times.push_back(kappa);
    out.series.rows.push_back({strong, diss, weak.value, rhs_strong, rhs_diss,
                               rhs_weak, delta, sup_lq, weak.coarsen_radius});
  }

  out.summary["c_strong"] = c_strong;
  out.summary["c_diss"] = c_diss;
  out.summary["c_weak"] = c_weak;
  out.summary["lambda_bound"] = lambda_bound;
  out.summary["besov0"] = b0;
  out.summary["linf0"] = linf0;
  out.summary["grad_lp_integral"] = ip;
  if (fit_x.size() >= 2) {
    const RateFit fit = fit_affine(fit_x, fit_y);
    out.summary["fit_slope"] = fit.slope;
    out.summary["fit_intercept"] = fit.intercept;
    out.summary["fit_residual"] = fit.residual;
  }
  return out;
}

ExperimentResult run_mixing(const ExperimentConfig& cfg) {
  ExperimentConfig c = cfg;
  c.kind = "mixing";
  c.validate();
  const TorusGrid grid = make_grid(c.d, c.n);
  const SpectralField theta0 = make_initial_datum(c, grid);
  const VelocityModel model = make_model(c);

  SolverConfig scfg;
  scfg.kappa = 0.0;
  scfg.dt = c.dt;

  ObserverSet obs;
  obs.times = sample_times(c);
  obs.diagnostics.push_back(make_diagnostic("hminus1", grid));
  obs.diagnostics.push_back(make_diagnostic("l2", grid));
  const TimeSeries series = solve(theta0, model, scfg, c.t_end, obs);

  ExperimentResult out;
  out.config = c;
  out.series = series;

  std::vector<double> ts, logs;
  for (std::size_t r = 0; r < series.times.size(); ++r) {
    const double h = series.rows[r][0];
    if (h > 0.0) {
      ts.push_back(series.times[r]);
      logs.push_back(std::log(h));
    }
  }
  const RateFit fit = fit_affine(ts, logs);
  double envelope = 0.0;  // how far the series dips below the affine fit
  for (std::size_t i = 0; i < ts.size(); ++i)
    envelope = std::max(envelope, (fit.intercept + fit.slope * ts[i]) - logs[i]);

  const std::size_t half = ts.size() / 2;
  RateFit early = fit_affine(std::span<const double>(ts.data(), half),
                             std::span<const double>(logs.data(), half));
  RateFit late = fit_affine(std::span<const double>(ts.data() + half, ts.size() - half),
                            std::span<const double>(logs.data() + half, ts.size() - half));
  const bool decaying = fit.slope < -1e-6;
  const bool subexponential =
      decaying && std::fabs(late.slope) < 0.5 * std::fabs(early.slope);

  out.summary["lambda"] = -fit.slope;
  out.summary["fit_intercept"] = fit.intercept;
  out.summary["fit_residual"] = fit.residual;
  out.summary["envelope_deviation"] = envelope;
  out.summary["slope_early"] = early.slope;
  out.summary["slope_late"] = late.slope;
  out.summary["subexponential"] = subexponential ? 1.0 : 0.0;

  // optional diffusive half-energy diagnostic
  for (std::size_t k = 0; k < c.kappas.size(); ++k) {
    SolverConfig kcfg;
    kcfg.kappa = c.kappas[k];
    kcfg.dt = c.dt;
    Simulation sim(theta0, model, kcfg);
    const double half_energy = 0.5 * std::pow(l2_norm(theta0), 2.0);
    double t_half = -1.0;
    const long total = std::lround(c.t_end / c.dt);
    for (long s = 1; s <= total; ++s) {
      sim.step();
      const double e = std::pow(l2_norm(sim.theta()), 2.0);
      if (e <= half_energy) {
        t_half = sim.time();
        break;
      }
    }
    const std::string tag = std::to_string(k);
    out.summary["half_time_" + tag] = t_half;
    out.summary["log_inv_kappa_" + tag] = std::log(1.0 / c.kappas[k]);
  }
  return out;
}

// --- emission -----------------------------------------------------------------

void emit_csv(const ExperimentResult& result, const std::string& path) {
  if (result.series.rows.empty())
    throw std::invalid_argument("emit_csv: empty record set");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
  out << result.series.abscissa;
  for (const auto& c : result.series.columns) out << "," << c;
  out << "\n";
  out.precision(17);
  for (std::size_t r = 0; r < result.series.rows.size(); ++r) {
    out << result.series.times[r];
    for (double v : result.series.rows[r]) out << "," << v;
    out << "\n";
  }
  if (!out) throw std::runtime_error("emit_csv: write failed for " + path);
}

namespace {

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["kind"] = c.kind;
  j["model"] = c.model;
  j["ux"] = c.ux;
  j["uy"] = c.uy;
  j["period"] = c.period;
  j["beta"] = c.beta;
  j["r0"] = c.r0;
  j["ic"] = c.ic;
  j["ic_mode"] = c.ic_mode;
  j["seed"] = c.seed;
  j["band"] = c.band;
  j["slope"] = c.slope;
  j["ic_sigma"] = c.ic_sigma;
  j["n"] = c.n;
  j["d"] = c.d;
  j["a"] = c.a;
  j["p"] = c.p;
  j["kappa"] = c.kappas;
  j["t_end"] = c.t_end;
  j["dt"] = c.dt;
  j["samples"] = c.samples;
  j["out_csv"] = c.out_csv;
  j["out_json"] = c.out_json;
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  c.kind = j.at("kind").get<std::string>();
  c.model = j.at("model").get<std::string>();
  c.ux = j.at("ux").get<double>();
  c.uy = j.at("uy").get<double>();
  c.period = j.at("period").get<double>();
  c.beta = j.at("beta").get<double>();
  c.r0 = j.at("r0").get<double>();
  c.ic = j.at("ic").get<std::string>();
  c.ic_mode = j.at("ic_mode").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.band = j.at("band").get<int>();
  c.slope = j.at("slope").get<double>();
  c.ic_sigma = j.at("ic_sigma").get<double>();
  c.n = j.at("n").get<int>();
  c.d = j.at("d").get<int>();
  c.a = j.at("a").get<double>();
  c.p = j.at("p").get<double>();
  c.kappas = j.at("kappa").get<std::vector<double>>();
  c.t_end = j.at("t_end").get<double>();
  c.dt = j.at("dt").get<double>();
  c.samples = j.at("samples").get<int>();
  c.out_csv = j.at("out_csv").get<std::string>();
  c.out_json = j.at("out_json").get<std::string>();
  return c;
}

}  // namespace

void emit_json(const ExperimentResult& result, const std::string& path) {
  if (result.series.rows.empty())
    throw std::invalid_argument("emit_json: empty record set");
  json j;
  j["config"] = config_to_json(result.config);
  j["abscissa"] = result.series.abscissa;
  j["columns"] = result.series.columns;
  j["times"] = result.series.times;
  j["rows"] = result.series.rows;
  j["summary"] = result.summary;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_json: cannot open " + path);
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("emit_json: write failed for " + path);
}

ExperimentResult load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_json: cannot open " + path);
  json j;
  in >> j;
  ExperimentResult res;
  res.config = config_from_json(j.at("config"));
  res.series.abscissa = j.at("abscissa").get<std::string>();
  res.series.columns = j.at("columns").get<std::vector<std::string>>();
  res.series.times = j.at("times").get<std::vector<double>>();
  res.series.rows = j.at("rows").get<std::vector<std::vector<double>>>();
  res.summary = j.at("summary").get<std::map<std::string, double>>();
  return res;
}

// --- diagnostics ----------------------------------------------------------------

Diagnostic make_diagnostic(const std::string& spec, const TorusGrid& grid) {
  std::string name = spec;
  std::map<std::string, double> params;
  const std::size_t colon = spec.find(':');
  if (colon != std::string::npos) {
    name = spec.substr(0, colon);
    std::stringstream ps(spec.substr(colon + 1));
    std::string kv;
    while (std::getline(ps, kv, ',')) {
      const std::size_t eq = kv.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("diagnostic '" + spec + "': expected key=value");
      params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }
  }
  auto param = [&](const std::string& key) {
    auto it = params.find(key);
    if (it == params.end())
      throw std::invalid_argument("diagnostic '" + spec + "': missing " + key);
    return it->second;
  };

  Diagnostic d;
  d.name = spec;
  if (name == "l2") {
    d.eval = [](const Simulation& sim) { return l2_norm(sim.theta()); };
  } else if (name == "linf") {
    d.eval = [](const Simulation& sim) {
      return lq_norm(sim.theta_physical(), std::numeric_limits<double>::infinity());
    };
  } else if (name == "lq") {
    const double qv = param("q");
    d.eval = [qv](const Simulation& sim) {
      return lq_norm(sim.theta_physical(), qv);
    };
  } else if (name == "besov" || name == "boldbesov") {
    const double av = param("a");
    const LPFamily& fam = family_for(grid);
    auto w = std::make_shared<std::vector<double>>(
        name == "besov" ? besov_block_weight(fam, av) : besov_tail_weight(fam, av));
    d.eval = [w](const Simulation& sim) { return weighted_l2(sim.theta(), *w); };
  } else if (name == "logsum") {
    const double av = param("a");
    d.eval = [av](const Simulation& sim) {
      return log_sobolev_norm(sim.theta(), av).value;
    };
  } else if (name == "hminus1") {
    auto w = std::make_shared<std::vector<double>>(sobolev_weight(grid, -1.0));
    d.eval = [w](const Simulation& sim) { return weighted_l2(sim.theta(), *w); };
  } else if (name == "hs") {
    const double sv = param("s");
    auto w = std::make_shared<std::vector<double>>(sobolev_weight(grid, sv));
    d.eval = [w](const Simulation& sim) { return weighted_l2(sim.theta(), *w); };
  } else if (name == "gradl2") {
    auto w = std::make_shared<std::vector<double>>(gradient_weight(grid));
    d.eval = [w](const Simulation& sim) { return weighted_l2(sim.theta(), *w); };
  } else if (name == "diss") {
    d.eval = [](const Simulation& sim) {
      return 2.0 * sim.config().kappa * sim.l2_dissipation_integral();
    };
  } else {
    throw std::invalid_argument("unknown diagnostic '" + spec + "'");
  }
  return d;
}

}  // namespace lpt
