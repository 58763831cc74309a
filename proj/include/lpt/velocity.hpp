#pragma once

#include <array>
#include <span>

#include "lpt/field.hpp"

namespace lpt {

/// Parametric divergence-free velocity fields.  All models are smooth in
/// time except the alternating shear, which switches between (sin x2, 0) and
/// (0, sin x1) every half period.
struct VelocityModel {
  enum class Kind { Zero, Uniform, SteadyShear, AlternatingShear, Cellular, PowerVortex };

  Kind kind = Kind::Zero;
  std::array<double, 2> uniform = {0.0, 0.0};
  double period = 1.0;         // alternating shear full period
  double beta = 0.5;           // power vortex exponent, in (0,1)
  double cutoff_radius = 2.0;  // power vortex support radius, < pi

  static VelocityModel zero();
  static VelocityModel uniform_flow(double cx, double cy = 0.0);
  static VelocityModel steady_shear();
  static VelocityModel alternating_shear(double period);
  static VelocityModel cellular();
  static VelocityModel power_vortex(double beta, double cutoff_radius);

  /// 0 when the model works in any dimension, otherwise the required one.
  int required_dim() const;
  bool time_dependent() const { return kind == Kind::AlternatingShear; }

  /// Shear phase at time t: 0 during the first half period, 1 during the
  /// second.  Boundaries belong to the phase they open.
  int phase(double t) const;
};

/// Samples the model on the grid at time t; the result carries the
/// divergence-free certificate by construction (verified in tests).
VectorField sample_velocity(const VelocityModel& model, double t, const TorusGrid& grid);

/// Supremum of |u| over the grid and over time (for CFL checks).
double max_speed(const VelocityModel& model, const TorusGrid& grid);

/// Spatial L^p norm of the velocity Jacobian (pointwise Frobenius norm,
/// spectral differentiation) at time t.
double velocity_gradient_lp(const VelocityModel& model, double t,
                            const TorusGrid& grid, double p);

/// Trapezoidal quadrature in time of t -> ||grad u(t)||_{L^p} over the given
/// time grid.  p must lie in (1, infinity).
double gradient_lp_time_integral(const VelocityModel& model, double p,
                                 std::span<const double> t_grid,
                                 const TorusGrid& grid);

}  // namespace lpt
