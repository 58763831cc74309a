#include "lpt/velocity.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lpt/fft.hpp"
#include "lpt/kernels.hpp"
#include "lpt/spectral_ops.hpp"

namespace lpt {

namespace {
constexpr double kPi = std::numbers::pi;
}

VelocityModel VelocityModel::zero() { return {}; }

VelocityModel VelocityModel::uniform_flow(double cx, double cy) {
  VelocityModel m;
  m.kind = Kind::Uniform;
  m.uniform = {cx, cy};
  return m;
}

VelocityModel VelocityModel::steady_shear() {
  VelocityModel m;
  m.kind = Kind::SteadyShear;
  return m;
}

VelocityModel VelocityModel::alternating_shear(double period) {
  if (period <= 0.0)
    throw std::invalid_argument("alternating_shear: period must be positive");
  VelocityModel m;
  m.kind = Kind::AlternatingShear;
  m.period = period;
  return m;
}

VelocityModel VelocityModel::cellular() {
  VelocityModel m;
  m.kind = Kind::Cellular;
  return m;
}

VelocityModel VelocityModel::power_vortex(double beta, double cutoff_radius) {
  if (beta <= 0.0 || beta >= 1.0)
    throw std::invalid_argument("power_vortex: beta must lie in (0,1)");
  if (cutoff_radius <= 0.0 || cutoff_radius >= kPi)
    throw std::invalid_argument("power_vortex: cutoff radius must lie in (0,pi)");
  VelocityModel m;
  m.kind = Kind::PowerVortex;
  m.beta = beta;
  m.cutoff_radius = cutoff_radius;
  return m;
}

int VelocityModel::required_dim() const {
  switch (kind) {
    case Kind::Zero:
    case Kind::Uniform:
      return 0;
    default:
      return 2;
  }
}

int VelocityModel::phase(double t) const {
  if (kind != Kind::AlternatingShear) return 0;
  const double half = period / 2.0;
  const long long idx = static_cast<long long>(std::floor(t / half));
  return static_cast<int>(((idx % 2) + 2) % 2);
}

namespace {

// Smooth cutoff with chi(s) = 1 for s <= 1/2 and chi(s) = 0 for s >= 1.
double smooth_cutoff(double s) {
  if (s <= 0.5) return 1.0;
  if (s >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / (2.0 - 2.0 * s));
  const double b = std::exp(-1.0 / (2.0 * s - 1.0));
  return a / (a + b);
}

VectorField sample_power_vortex(const VelocityModel& m, const TorusGrid& g) {
  // Stream function H(r) = chi(r/r0) r^{2-beta} about the center (pi,pi);
  // u = grad^perp H taken spectrally so the certificate is exact.
  PhysicalField stream(g);
  const double h = g.spacing();
  std::size_t idx = 0;
  for (int i = 0; i < g.n; ++i) {
    const double dx = i * h - kPi;
    for (int j = 0; j < g.n; ++j, ++idx) {
      const double dy = j * h - kPi;
      const double r = std::sqrt(dx * dx + dy * dy);
      stream.values[idx] =
          smooth_cutoff(r / m.cutoff_radius) * std::pow(r, 2.0 - m.beta);
    }
  }
  const SpectralField H = forward_transform(stream);
  const auto grad = gradient(H);
  VectorField u;
  u.comps.reserve(2);
  // grad^perp = (-d2, d1)
  SpectralField u1(g), u2(g);
  for (std::size_t k = 0; k < H.coeffs.size(); ++k) {
    u1.coeffs[k] = -grad[1].coeffs[k];
    u2.coeffs[k] = grad[0].coeffs[k];
  }
  u.comps.push_back(inverse_transform_unchecked(u1));
  u.comps.push_back(inverse_transform_unchecked(u2));
  u.divergence_free = true;
  return u;
}

}  // namespace

VectorField sample_velocity(const VelocityModel& m, double t, const TorusGrid& g) {
  if (m.required_dim() != 0 && m.required_dim() != g.dim)
    throw std::invalid_argument("sample_velocity: model requires dim " +
                                std::to_string(m.required_dim()));
  VectorField u;
  u.divergence_free = true;
  const double h = g.spacing();
  switch (m.kind) {
    case VelocityModel::Kind::Zero: {
      u.comps.assign(static_cast<std::size_t>(g.dim), PhysicalField(g));
      return u;
    }
    case VelocityModel::Kind::Uniform: {
      u.comps.assign(static_cast<std::size_t>(g.dim), PhysicalField(g));
      for (int c = 0; c < g.dim; ++c)
        for (auto& v : u.comps[static_cast<std::size_t>(c)].values)
          v = m.uniform[static_cast<std::size_t>(c)];
      return u;
    }
    case VelocityModel::Kind::SteadyShear:
    case VelocityModel::Kind::AlternatingShear: {
      u.comps.assign(2, PhysicalField(g));
      const int ph = m.kind == VelocityModel::Kind::AlternatingShear ? m.phase(t) : 0;
      std::size_t idx = 0;
      for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j, ++idx) {
          if (ph == 0)
            u.comps[0].values[idx] = std::sin(j * h);  // (sin x2, 0)
          else
            u.comps[1].values[idx] = std::sin(i * h);  // (0, sin x1)
        }
      return u;
    }
    case VelocityModel::Kind::Cellular: {
      u.comps.assign(2, PhysicalField(g));
      std::size_t idx = 0;
      for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j, ++idx) {
          const double x = i * h, y = j * h;
          u.comps[0].values[idx] = std::sin(x) * std::cos(y);
          u.comps[1].values[idx] = -std::cos(x) * std::sin(y);
        }
      return u;
    }
    case VelocityModel::Kind::PowerVortex:
      return sample_power_vortex(m, g);
  }
  throw std::logic_error("sample_velocity: unreachable");
}

double max_speed(const VelocityModel& m, const TorusGrid& g) {
  switch (m.kind) {
    case VelocityModel::Kind::Zero:
      return 0.0;
    case VelocityModel::Kind::Uniform:
      return std::sqrt(m.uniform[0] * m.uniform[0] + m.uniform[1] * m.uniform[1]);
    case VelocityModel::Kind::SteadyShear:
    case VelocityModel::Kind::AlternatingShear:
      return 1.0;
    default: {
      const VectorField u = sample_velocity(m, 0.0, g);
      double worst = 0.0;
      for (std::size_t i = 0; i < u.comps[0].values.size(); ++i) {
        double s = 0.0;
        for (const auto& comp : u.comps) s += comp.values[i] * comp.values[i];
        worst = std::max(worst, s);
      }
      return std::sqrt(worst);
    }
  }
}

double velocity_gradient_lp(const VelocityModel& m, double t, const TorusGrid& g,
                            double p) {
  if (m.kind == VelocityModel::Kind::Zero) return 0.0;
  if (m.kind == VelocityModel::Kind::Uniform) return 0.0;
  const VectorField u = sample_velocity(m, t, g);
  PhysicalField frob(g);
  for (const auto& comp : u.comps) {
    const auto grad = gradient(forward_transform(comp));
    for (const auto& dcomp : grad) {
      const PhysicalField d = inverse_transform_unchecked(dcomp);
      for (std::size_t i = 0; i < frob.values.size(); ++i)
        frob.values[i] += d.values[i] * d.values[i];
    }
  }
  for (auto& v : frob.values) v = std::sqrt(v);
  return lq_norm(frob, p);
}

double gradient_lp_time_integral(const VelocityModel& m, double p,
                                 std::span<const double> t_grid,
                                 const TorusGrid& g) {
  if (p <= 1.0 || std::isinf(p))
    throw std::invalid_argument("gradient_lp_time_integral: p must lie in (1,inf)");
  if (t_grid.size() < 2) return 0.0;
  // Every model is piecewise steady, so the Jacobian norm only depends on the
  // shear phase; cache one evaluation per phase.
  double cached[2] = {-1.0, -1.0};
  auto norm_at = [&](double t) {
    const int ph = m.phase(t);
    if (cached[ph] < 0.0) cached[ph] = velocity_gradient_lp(m, t, g, p);
    return cached[ph];
  };
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
    const double dt = t_grid[i + 1] - t_grid[i];
    integral += 0.5 * dt * (norm_at(t_grid[i]) + norm_at(t_grid[i + 1]));
  }
  return integral;
}

}  // namespace lpt
