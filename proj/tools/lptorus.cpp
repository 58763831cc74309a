// Command-line front end: Littlewood-Paley decompositions, norm reports,
// advection(-diffusion) runs, logarithmic transport distances, and the batch
// experiment runners.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "lpt/besov.hpp"
#include "lpt/experiments.hpp"
#include "lpt/fft.hpp"
#include "lpt/random_fields.hpp"
#include "lpt/snapshot.hpp"
#include "lpt/solver.hpp"
#include "lpt/spectral_ops.hpp"
#include "lpt/transport.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lpt;

namespace {

std::map<std::string, double> parse_kv(const std::string& text) {
  std::map<std::string, double> out;
  std::stringstream ss(text);
  std::string kv;
  while (std::getline(ss, kv, ',')) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("expected key=value in '" + text + "'");
    out[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  return out;
}

// Either a snapshot path or a preset such as harmonic:m=4, random:seed=1,band=8.
SpectralField load_initial(const std::string& spec, const TorusGrid& grid) {
  if (fs::exists(spec)) {
    const PhysicalField f = read_snapshot(spec);
    if (!(f.grid == grid))
      throw std::invalid_argument("initial datum grid does not match --n/--d");
    return remove_mean(forward_transform(f));
  }
  const std::size_t colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const auto params =
      colon == std::string::npos ? std::map<std::string, double>{}
                                 : parse_kv(spec.substr(colon + 1));
  auto get = [&](const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  SpectralField theta(grid);
  if (name == "harmonic") {
    theta = spectral_harmonic(grid, static_cast<int>(get("m", 4)));
  } else if (name == "random") {
    theta = random_band_limited(grid, static_cast<std::uint64_t>(get("seed", 1)),
                                static_cast<int>(get("band", 8)), get("slope", 1.0));
  } else if (name == "checker") {
    theta = checkerboard_smoothed(grid, static_cast<int>(get("m", 4)),
                                  get("sigma", 8.0));
  } else {
    throw std::invalid_argument("unknown initial datum '" + spec +
                                "' (no such file, no such preset)");
  }
  theta.coeffs[0] = 0.0;
  return normalize_sup(theta);
}

VelocityModel model_from_flags(const std::string& name, double ux, double uy,
                               double period, double beta, double r0) {
  ExperimentConfig tmp;
  tmp.model = name;
  tmp.ux = ux;
  tmp.uy = uy;
  tmp.period = period;
  tmp.beta = beta;
  tmp.r0 = r0;
  return make_model(tmp);
}

int cmd_lp_decompose(const std::string& input, double a, const std::string& outdir) {
  const PhysicalField f = read_snapshot(input);
  const SpectralField theta = remove_mean(forward_transform(f));
  const LPFamily& fam = family_for(f.grid);
  fs::create_directories(outdir);

  json manifest;
  manifest["input"] = input;
  manifest["a"] = a;
  manifest["k_max"] = fam.k_max();
  json blocks = json::array();
  for (int k = 1; k <= fam.k_max(); ++k) {
    const SpectralField b = block(theta, k, fam);
    char name[32];
    std::snprintf(name, sizeof(name), "block_%02d.lptf", k);
    const fs::path path = fs::path(outdir) / name;
    write_snapshot(path.string(), inverse_transform_unchecked(b));
    const double energy = std::pow(l2_norm(b), 2.0);
    json entry;
    entry["k"] = k;
    entry["file"] = name;
    entry["l2_energy"] = energy;
    entry["weighted_energy"] = std::pow(static_cast<double>(k), 2.0 * a) * energy;
    blocks.push_back(entry);
  }
  manifest["blocks"] = blocks;
  std::ofstream out(fs::path(outdir) / "manifest.json");
  out << manifest.dump(2) << "\n";
  std::cout << "wrote " << fam.k_max() << " blocks to " << outdir << "\n";
  return 0;
}

int cmd_norms(const std::string& input, double a, const std::string& flavors,
              const std::string& out_json) {
  const PhysicalField f = read_snapshot(input);
  const SpectralField theta = remove_mean(forward_transform(f));
  const LPFamily& fam = family_for(f.grid);

  json out;
  out["input"] = input;
  out["a"] = a;
  std::stringstream ss(flavors);
  std::string flavor;
  while (std::getline(ss, flavor, ',')) {
    json rep;
    if (flavor == "block") {
      const NormReport r = besov_norm(theta, a, fam);
      rep["value"] = r.value;
      rep["per_k"] = r.per_k;
      rep["k_max"] = r.k_max;
    } else if (flavor == "highpass") {
      const NormReport r = besov_tail_norm(theta, a, fam);
      rep["value"] = r.value;
      rep["per_k"] = r.per_k;
      rep["k_max"] = r.k_max;
    } else if (flavor == "logsum") {
      rep["value"] = log_sobolev_norm(theta, a).value;
    } else if (flavor == "gagliardo") {
      rep["value"] = gagliardo_seminorm(f, a);
    } else {
      throw std::invalid_argument("unknown norm flavor '" + flavor + "'");
    }
    out[flavor] = rep;
    std::cout << flavor << " = " << rep["value"].get<double>() << "\n";
  }
  if (!out_json.empty()) {
    std::ofstream file(out_json);
    file << out.dump(2) << "\n";
  }
  return 0;
}

int cmd_solve(const std::string& model_name, double ux, double uy, double period,
              double beta, double r0, double kappa, int n, int d, double dt,
              double tend, const std::string& ic, const std::string& observe,
              int samples, bool no_dealias, const std::string& out_csv) {
  const TorusGrid grid = make_grid(d, n);
  const SpectralField theta0 = load_initial(ic, grid);
  const VelocityModel model = model_from_flags(model_name, ux, uy, period, beta, r0);

  SolverConfig cfg;
  cfg.kappa = kappa;
  cfg.dt = dt;
  cfg.dealias = !no_dealias;

  ObserverSet obs;
  for (int s = 0; s <= samples; ++s) obs.times.push_back(tend * s / samples);
  std::stringstream ss(observe);
  std::string diag;
  while (std::getline(ss, diag, ','))
    if (!diag.empty()) obs.diagnostics.push_back(make_diagnostic(diag, grid));
  if (obs.diagnostics.empty())
    obs.diagnostics.push_back(make_diagnostic("l2", grid));

  const TimeSeries series = solve(theta0, model, cfg, tend, obs);

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_csv.empty()) {
    file.open(out_csv);
    if (!file) throw std::runtime_error("cannot open " + out_csv);
    out = &file;
  }
  (*out) << "t";
  for (const auto& c : series.columns) (*out) << "," << c;
  (*out) << "\n";
  out->precision(17);
  for (std::size_t r = 0; r < series.rows.size(); ++r) {
    (*out) << series.times[r];
    for (double v : series.rows[r]) (*out) << "," << v;
    (*out) << "\n";
  }
  return 0;
}

int cmd_otdist(const std::string& file_a, const std::string& file_b, double delta,
               const std::string& method, double epsilon, const std::string& out_json) {
  const PhysicalField fa = read_snapshot(file_a);
  const PhysicalField fb = read_snapshot(file_b);
  KROptions opts;
  opts.entropic = method == "entropic";
  opts.epsilon = epsilon;
  const KRResult r = kr_distance(fa, fb, delta, opts);

  json out;
  out["a"] = file_a;
  out["b"] = file_b;
  out["delta"] = delta;
  out["method"] = r.method;
  out["cost"] = r.value;
  out["duality_gap"] = r.duality_gap;
  out["support_positive"] = r.support_positive;
  out["support_negative"] = r.support_negative;
  out["coarsen_radius"] = r.coarsen_radius;
  std::cout << "D_delta = " << r.value << "  (gap " << r.duality_gap << ", supports "
            << r.support_positive << "/" << r.support_negative << ")\n";
  if (!out_json.empty()) {
    std::ofstream file(out_json);
    file << out.dump(2) << "\n";
  }
  return 0;
}

int run_experiment(const std::string& kind, const std::string& config_path) {
  ExperimentConfig cfg = parse_config_file(config_path);
  cfg.kind = kind;
  ExperimentResult result;
  if (kind == "regularity")
    result = run_regularity(cfg);
  else if (kind == "diffusive")
    result = run_diffusive(cfg);
  else if (kind == "zerodiff")
    result = run_zero_diffusivity_sweep(cfg);
  else
    result = run_mixing(cfg);

  for (const auto& [key, value] : result.summary)
    std::cout << key << " = " << value << "\n";
  if (!cfg.out_csv.empty()) emit_csv(result, cfg.out_csv);
  if (!cfg.out_json.empty()) emit_json(result, cfg.out_json);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Littlewood-Paley transport toolbox on the periodic torus"};
  app.require_subcommand(1);

  // lp decompose
  auto* lp = app.add_subcommand("lp", "Littlewood-Paley operations");
  lp->require_subcommand(1);
  auto* decompose = lp->add_subcommand("decompose", "write dyadic blocks + manifest");
  std::string dec_input, dec_out;
  double dec_a = 1.0;
  decompose->add_option("--input", dec_input, "field snapshot")->required();
  decompose->add_option("--a", dec_a, "smoothness exponent");
  decompose->add_option("--out", dec_out, "output directory")->required();

  // norms
  auto* norms = app.add_subcommand("norms", "norm reports for a field");
  std::string norms_input, norms_flavors = "block,highpass,logsum", norms_json;
  double norms_a = 1.0;
  norms->add_option("--input", norms_input)->required();
  norms->add_option("--a", norms_a);
  norms->add_option("--flavors", norms_flavors,
                    "comma list: block,highpass,logsum,gagliardo");
  norms->add_option("--json", norms_json, "write the report here");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "integrate the advection(-diffusion) equation");
  std::string sv_model = "steady_shear", sv_ic = "random:seed=1,band=8";
  std::string sv_observe = "l2,linf", sv_csv;
  double sv_ux = 1.0, sv_uy = 0.0, sv_period = 1.0, sv_beta = 0.5, sv_r0 = 2.0;
  double sv_kappa = 0.0, sv_dt = 1e-3, sv_tend = 1.0;
  int sv_n = 128, sv_d = 2, sv_samples = 50;
  bool sv_no_dealias = false;
  solve_cmd->add_option("--model", sv_model,
                        "zero|uniform|steady_shear|alternating_shear|cellular|power_vortex");
  solve_cmd->add_option("--ux", sv_ux);
  solve_cmd->add_option("--uy", sv_uy);
  solve_cmd->add_option("--period", sv_period);
  solve_cmd->add_option("--beta", sv_beta);
  solve_cmd->add_option("--r0", sv_r0);
  solve_cmd->add_option("--kappa", sv_kappa);
  solve_cmd->add_option("--n", sv_n);
  solve_cmd->add_option("--d", sv_d);
  solve_cmd->add_option("--dt", sv_dt);
  solve_cmd->add_option("--tend", sv_tend);
  solve_cmd->add_option("--ic", sv_ic, "snapshot path or preset");
  solve_cmd->add_option("--observe", sv_observe, "comma list of diagnostics");
  solve_cmd->add_option("--samples", sv_samples);
  solve_cmd->add_flag("--no-dealias", sv_no_dealias);
  solve_cmd->add_option("--csv", sv_csv, "output CSV (stdout if omitted)");

  // otdist
  auto* ot = app.add_subcommand("otdist", "logarithmic transport distance of two fields");
  std::string ot_a, ot_b, ot_method = "exact", ot_json;
  double ot_delta = 0.1, ot_eps = 1e-2;
  ot->add_option("--a", ot_a, "first field snapshot")->required();
  ot->add_option("--b", ot_b, "second field snapshot")->required();
  ot->add_option("--delta", ot_delta)->required();
  ot->add_option("--method", ot_method, "exact|entropic");
  ot->add_option("--epsilon", ot_eps, "entropic regularization");
  ot->add_option("--json", ot_json);

  // experiments
  std::string cfg_regularity, cfg_diffusive, cfg_zerodiff, cfg_mixing;
  app.add_subcommand("regularity", "transport regularity bound experiment")
      ->add_option("--config", cfg_regularity)
      ->required();
  app.add_subcommand("diffusive", "diffusive regularity bound experiment")
      ->add_option("--config", cfg_diffusive)
      ->required();
  app.add_subcommand("zerodiff", "vanishing-diffusivity sweep")
      ->add_option("--config", cfg_zerodiff)
      ->required();
  app.add_subcommand("mixing", "H^{-1} mixing diagnostic")
      ->add_option("--config", cfg_mixing)
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (decompose->parsed()) return cmd_lp_decompose(dec_input, dec_a, dec_out);
    if (norms->parsed()) return cmd_norms(norms_input, norms_a, norms_flavors, norms_json);
    if (solve_cmd->parsed())
      return cmd_solve(sv_model, sv_ux, sv_uy, sv_period, sv_beta, sv_r0, sv_kappa,
                       sv_n, sv_d, sv_dt, sv_tend, sv_ic, sv_observe, sv_samples,
                       sv_no_dealias, sv_csv);
    if (ot->parsed()) return cmd_otdist(ot_a, ot_b, ot_delta, ot_method, ot_eps, ot_json);
    if (app.got_subcommand("regularity")) return run_experiment("regularity", cfg_regularity);
    if (app.got_subcommand("diffusive")) return run_experiment("diffusive", cfg_diffusive);
    if (app.got_subcommand("zerodiff")) return run_experiment("zerodiff", cfg_zerodiff);
    if (app.got_subcommand("mixing")) return run_experiment("mixing", cfg_mixing);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
