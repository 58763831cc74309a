#pragma once

#include <functional>
#include <memory>
#include <string>

#include "lpt/littlewood_paley.hpp"
#include "lpt/velocity.hpp"

namespace lpt {

struct SolverConfig {
  double kappa = 0.0;  // diffusivity >= 0
  double dt = 1e-3;
  bool dealias = true;
  double cfl_limit = 0.5;  // require dt <= cfl_limit * h / max|u|
};

/// Pseudo-spectral integrator for  d theta/dt + u.grad theta = kappa Lap theta
/// on the torus: classical RK4 for the dealiased advection term composed with
/// the exact diffusion multiplier exp(-kappa |eta|^2 dt) (integrating factor).
/// The zero mode is pinned to 0 after every step, so the mean is conserved
/// exactly.  For the alternating shear the velocity phase is frozen per step
/// at the step midpoint; experiment configurations choose dt dividing the
/// half period so that steps never straddle a switch.
class Simulation {
 public:
  Simulation(SpectralField theta0, const VelocityModel& model, const SolverConfig& cfg);
  /// Frozen-velocity variant (the commutator check integrates micro-steps
  /// against a fixed sampled field).
  Simulation(SpectralField theta0, VectorField frozen_velocity, const SolverConfig& cfg);
  ~Simulation();

  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  void step();
  void advance(long steps);

  double time() const;
  long step_count() const;
  const SpectralField& theta() const;
  PhysicalField theta_physical() const;
  const SolverConfig& config() const;

  /// int_0^t ||grad theta||_{L2}^2 ds, accumulated per step by the
  /// trapezoidal rule.
  double l2_dissipation_integral() const;

  /// Registers an extra quadratic functional (2pi)^d sum w(eta)|theta_hat|^2
  /// whose time integral is accumulated alongside; returns its handle.
  std::size_t attach_weighted_dissipation(std::vector<double> weight);
  double weighted_dissipation(std::size_t handle) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct Diagnostic {
  std::string name;
  std::function<double(const Simulation&)> eval;
};

struct ObserverSet {
  std::vector<double> times;  // snapped to step multiples
  std::vector<Diagnostic> diagnostics;
  /// Weight tables attached to the simulation before stepping (handles are
  /// their indices here); diagnostics read them via weighted_dissipation().
  std::vector<std::vector<double>> dissipation_weights;
};

struct TimeSeries {
  std::string abscissa = "t";
  std::vector<std::string> columns;  // diagnostic names (abscissa excluded)
  std::vector<double> times;
  std::vector<std::vector<double>> rows;  // one row per time, one entry per column

  double at(std::size_t row, const std::string& column) const;
};

/// Integrates to t_end, evaluating the diagnostics at the observer times
/// (snapped to the step grid).  Detects non-finite states and reports the
/// offending step.
TimeSeries solve(const SpectralField& theta0, const VelocityModel& model,
                 const SolverConfig& cfg, double t_end, const ObserverSet& observers);

/// Phase-block commutator decomposition: the rate of change
/// of the weighted tail energy against the three displayed sums.
struct CommutatorReport {
  double term_i = 0.0;
  double term_ii = 0.0;
  double term_iii = 0.0;
  double kappa_term = 0.0;   // kappa ||grad theta||_{tail,a}^2 at the center state
  double denergy_dt = 0.0;   // centered difference of (1/2)||theta||_{tail,a}^2
  double residual = 0.0;     // |denergy_dt + kappa_term - (II - I - III)|
  int k_max = 0;
};

/// Evaluates the three phase-block sums at theta advanced one micro-step of
/// size dt (centered difference over two micro-steps gives the energy rate).
/// The velocity enters mean-removed, so zero and uniform fields yield exact
/// zeros.  alpha = 2a - 1 must be nonnegative.
CommutatorReport commutator_terms(const SpectralField& theta, const VectorField& u,
                                  double a, double kappa, const LPFamily& fam,
                                  double dt);

}  // namespace lpt
