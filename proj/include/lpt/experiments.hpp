#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "lpt/solver.hpp"
#include "lpt/transport.hpp"

namespace lpt {

/// Configuration shared by the experiment runners; parsed from plain
/// `key value` text (one pair per line, `#` comments).
struct ExperimentConfig {
  std::string kind;  // regularity | diffusive | zerodiff | mixing

  std::string model = "alternating_shear";
  double ux = 1.0, uy = 0.0;   // uniform flow components
  double period = 1.0;         // alternating shear period
  double beta = 0.5;           // power vortex exponent
  double r0 = 2.0;             // power vortex cutoff radius

  std::string ic = "random";   // harmonic | random | checker
  int ic_mode = 4;             // harmonic / checker mode index
  std::uint64_t seed = 1;
  int band = 4;                // random band limit
  double slope = 1.0;          // random spectral slope
  double ic_sigma = 8.0;       // checker smoothing width

  int n = 128;
  int d = 2;
  double a = 0.9;
  double p = 2.0;
  std::vector<double> kappas;  // zerodiff list; first entry elsewhere
  double t_end = 1.0;
  double dt = 0.005;
  int samples = 50;

  std::string out_csv;
  std::string out_json;

  void validate() const;  // throws std::invalid_argument on a config error
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

VelocityModel make_model(const ExperimentConfig& cfg);
/// Initial datum per the configured preset, mean-free with sup norm 1.
SpectralField make_initial_datum(const ExperimentConfig& cfg, const TorusGrid& grid);

/// Ordinary least squares y ~ intercept + slope x; residual is max |fit - y|.
struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
};
RateFit fit_affine(std::span<const double> x, std::span<const double> y);

/// Ingredients of the regularity and convergence bounds.
struct RateBoundInputs {
  double linf0 = 0.0;             // ||theta0||_inf
  double besov0 = 0.0;            // ||theta0||_B
  double grad_lp_integral = 0.0;  // int_0^t ||grad u||_p
  double lambda = 0.0;            // (integral)^a linf0 + besov0
};
RateBoundInputs rate_bound_inputs(const ExperimentConfig& cfg);

struct ExperimentResult {
  ExperimentConfig config;
  TimeSeries series;
  std::map<std::string, double> summary;
};

/// Advective regularity bound: ||theta(t)||_B against C (int ||grad u||_p)^a
/// ||theta0||_inf + C ||theta0||_B with kappa = 0; reports the minimal
/// admissible C(t) series and its supremum.
ExperimentResult run_regularity(const ExperimentConfig& cfg);

/// Diffusive regularity bound: adds the dissipation term (kappa int
/// ||grad theta||_B^2)^{1/2} to the left-hand side; kappa > 0.
ExperimentResult run_diffusive(const ExperimentConfig& cfg);

/// Vanishing-diffusivity sweep over the kappa list at fixed t_end:
/// strong L2 error, dissipation, and the logarithmic transport distance at
/// delta(t) = sqrt(kappa t)/log^a(2 + 1/(kappa t)), each against its bound;
/// fits log(error) against log log(2 + 1/(kappa t)).
ExperimentResult run_zero_diffusivity_sweep(const ExperimentConfig& cfg);

/// H^{-1} mixing diagnostic: affine fit of the log norm, lower-envelope
/// deviation, and sub-exponential classification; optional kappa list adds
/// half-energy times.
ExperimentResult run_mixing(const ExperimentConfig& cfg);

void emit_csv(const ExperimentResult& result, const std::string& path);
void emit_json(const ExperimentResult& result, const std::string& path);
/// Reloads a result emitted by emit_json (bit-exact round trip).
ExperimentResult load_json(const std::string& path);

/// Builds a named diagnostic ("l2", "linf", "lq:q=3", "besov:a=0.9",
/// "boldbesov:a=0.9", "logsum:a=0.9", "hminus1", "hs:s=-2", "gradl2",
/// "diss") for the observer machinery.
Diagnostic make_diagnostic(const std::string& spec, const TorusGrid& grid);

/// Shared Littlewood-Paley family per grid (built once).
const LPFamily& family_for(const TorusGrid& grid);

}  // namespace lpt
