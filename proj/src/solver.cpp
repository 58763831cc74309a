#include "lpt/solver.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

#include "lpt/besov.hpp"
#include "lpt/fft.hpp"
#include "lpt/kernels.hpp"
#include "lpt/spectral_ops.hpp"

namespace lpt {

namespace {

using Complex = std::complex<double>;

double max_speed_of(const VectorField& u) {
  double worst = 0.0;
  for (std::size_t i = 0; i < u.comps[0].values.size(); ++i) {
    double s = 0.0;
    for (const auto& comp : u.comps) s += comp.values[i] * comp.values[i];
    worst = std::max(worst, s);
  }
  return std::sqrt(worst);
}

}  // namespace

struct Simulation::Impl {
  TorusGrid grid;
  SolverConfig cfg;
  SpectralField theta;
  double t = 0.0;
  long steps = 0;

  std::optional<VelocityModel> model;
  std::vector<VectorField> phase_velocity;  // one entry per shear phase

  std::vector<double> half_decay;  // exp(-kappa |eta|^2 dt/2)
  std::vector<double> full_decay;
  std::vector<double> grad_w;       // |eta|^2, Nyquist dropped
  std::vector<double> dealias_mask;

  // scratch buffers
  std::vector<Complex> k1, k2, k3, k4, stage, cbuf;
  std::vector<std::vector<double>> gphys;  // gradient components in physical space
  std::vector<double> wphys;

  double l2_diss = 0.0;
  double prev_gradsq = 0.0;
  std::vector<std::vector<double>> extra_w;
  std::vector<double> extra_int;
  std::vector<double> extra_prev;

  Impl(SpectralField theta0, const SolverConfig& c)
      : grid(theta0.grid), cfg(c), theta(std::move(theta0)) {
    if (cfg.kappa < 0.0)
      throw std::invalid_argument("SolverConfig: kappa must be >= 0");
    if (cfg.dt <= 0.0) throw std::invalid_argument("SolverConfig: dt must be > 0");
    require_mean_free(theta, "Simulation");
    theta.coeffs[0] = 0.0;

    const ModeTable& tab = mode_table(grid);
    const std::size_t total = grid.size();
    grad_w = gradient_weight(grid);
    half_decay.resize(total);
    full_decay.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
      const double lam = cfg.kappa * static_cast<double>(tab.freq_sq[i]);
      half_decay[i] = std::exp(-lam * cfg.dt / 2.0);
      full_decay[i] = half_decay[i] * half_decay[i];
    }
    dealias_mask.assign(total, 1.0);
    const int cutoff = grid.n / 3;
    for (std::size_t i = 0; i < total; ++i)
      if (std::abs(tab.freq[i][0]) > cutoff || std::abs(tab.freq[i][1]) > cutoff)
        dealias_mask[i] = 0.0;

    k1.resize(total);
    k2.resize(total);
    k3.resize(total);
    k4.resize(total);
    stage.resize(total);
    cbuf.resize(total);
    gphys.assign(static_cast<std::size_t>(grid.dim), std::vector<double>(total));
    wphys.resize(total);
    prev_gradsq = grad_sq(theta.coeffs);
  }

  void check_cfl(double maxu) const {
    if (maxu <= 0.0) return;
    const double limit = cfg.cfl_limit * grid.spacing() / maxu;
    if (cfg.dt > limit * (1.0 + 1e-12))
      throw std::invalid_argument(
          "Simulation: dt violates the CFL bound (dt = " + std::to_string(cfg.dt) +
          ", limit = " + std::to_string(limit) + ")");
  }

  double grad_sq(const std::vector<Complex>& c) const {
    const double s = kernels::weighted_sumsq(c, grad_w);
    if (!std::isfinite(s))
      throw std::runtime_error("solve diverged: non-finite state at step " +
                               std::to_string(steps) + " (t = " + std::to_string(t) +
                               ")");
    return grid.volume() * s;
  }

  const VectorField& velocity_for_step() {
    if (phase_velocity.size() == 1) return phase_velocity[0];
    const int ph = model->phase(t + cfg.dt / 2.0);
    return phase_velocity[static_cast<std::size_t>(ph)];
  }

  // out = -Dealias(F[u . grad theta]), zero mode pinned
  void advection(const std::vector<Complex>& theta_hat, const VectorField& u,
                 std::vector<Complex>& out) {
    const ModeTable& tab = mode_table(grid);
    const std::size_t total = grid.size();
    const int nyq = grid.nyquist();
    for (int c = 0; c < grid.dim; ++c) {
      for (std::size_t i = 0; i < total; ++i) {
        const int e = c == 0 ? tab.freq[i][0] : tab.freq[i][1];
        cbuf[i] = e == nyq ? Complex(0.0, 0.0)
                           : Complex(0.0, static_cast<double>(e)) * theta_hat[i];
      }
      detail::fft_raw(grid, false, cbuf.data(), cbuf.data());
      auto& g = gphys[static_cast<std::size_t>(c)];
      for (std::size_t i = 0; i < total; ++i) g[i] = cbuf[i].real();
    }
    for (std::size_t i = 0; i < total; ++i) {
      double s = 0.0;
      for (int c = 0; c < grid.dim; ++c)
        s += u.comps[static_cast<std::size_t>(c)].values[i] *
             gphys[static_cast<std::size_t>(c)][i];
      cbuf[i] = s;
    }
    detail::fft_raw(grid, true, cbuf.data(), cbuf.data());
    const double scale = -1.0 / static_cast<double>(total);
    if (cfg.dealias) {
      for (std::size_t i = 0; i < total; ++i)
        out[i] = cbuf[i] * (scale * dealias_mask[i]);
    } else {
      for (std::size_t i = 0; i < total; ++i) out[i] = cbuf[i] * scale;
    }
    out[0] = 0.0;
  }

  void do_step() {
    const VectorField& u = velocity_for_step();
    auto& th = theta.coeffs;
    const std::size_t total = grid.size();

    // integrating-factor RK4 (diffusion handled exactly by the multiplier)
    advection(th, u, k1);
    for (std::size_t i = 0; i < total; ++i)
      stage[i] = half_decay[i] * (th[i] + 0.5 * cfg.dt * k1[i]);
    advection(stage, u, k2);
    for (std::size_t i = 0; i < total; ++i)
      stage[i] = half_decay[i] * th[i] + 0.5 * cfg.dt * k2[i];
    advection(stage, u, k3);
    for (std::size_t i = 0; i < total; ++i)
      stage[i] = full_decay[i] * th[i] + cfg.dt * half_decay[i] * k3[i];
    advection(stage, u, k4);
    for (std::size_t i = 0; i < total; ++i) {
      th[i] = full_decay[i] * th[i] +
              (cfg.dt / 6.0) * (full_decay[i] * k1[i] +
                                2.0 * half_decay[i] * (k2[i] + k3[i]) + k4[i]);
    }
    th[0] = 0.0;
    ++steps;
    t = static_cast<double>(steps) * cfg.dt;

    const double cur = grad_sq(th);
    l2_diss += 0.5 * cfg.dt * (prev_gradsq + cur);
    prev_gradsq = cur;
    for (std::size_t w = 0; w < extra_w.size(); ++w) {
      const double val = grid.volume() * kernels::weighted_sumsq(th, extra_w[w]);
      extra_int[w] += 0.5 * cfg.dt * (extra_prev[w] + val);
      extra_prev[w] = val;
    }
  }
};

Simulation::Simulation(SpectralField theta0, const VelocityModel& model,
                       const SolverConfig& cfg)
    : impl_(std::make_unique<Impl>(std::move(theta0), cfg)) {
  if (model.required_dim() != 0 && model.required_dim() != impl_->grid.dim)
    throw std::invalid_argument("Simulation: velocity model requires dim " +
                                std::to_string(model.required_dim()));
  impl_->model = model;
  impl_->phase_velocity.push_back(sample_velocity(model, 0.0, impl_->grid));
  if (model.time_dependent())
    impl_->phase_velocity.push_back(
        sample_velocity(model, model.period / 2.0, impl_->grid));
  impl_->check_cfl(max_speed(model, impl_->grid));
}

Simulation::Simulation(SpectralField theta0, VectorField frozen_velocity,
                       const SolverConfig& cfg)
    : impl_(std::make_unique<Impl>(std::move(theta0), cfg)) {
  if (frozen_velocity.dim() != impl_->grid.dim)
    throw std::invalid_argument("Simulation: velocity dimension mismatch");
  impl_->check_cfl(max_speed_of(frozen_velocity));
  impl_->phase_velocity.push_back(std::move(frozen_velocity));
}

Simulation::~Simulation() = default;

void Simulation::step() { impl_->do_step(); }

void Simulation::advance(long steps) {
  for (long i = 0; i < steps; ++i) impl_->do_step();
}

double Simulation::time() const { return impl_->t; }
long Simulation::step_count() const { return impl_->steps; }
const SpectralField& Simulation::theta() const { return impl_->theta; }
PhysicalField Simulation::theta_physical() const {
  return inverse_transform_unchecked(impl_->theta);
}
const SolverConfig& Simulation::config() const { return impl_->cfg; }

double Simulation::l2_dissipation_integral() const { return impl_->l2_diss; }

std::size_t Simulation::attach_weighted_dissipation(std::vector<double> weight) {
  if (impl_->steps != 0)
    throw std::logic_error("attach_weighted_dissipation: attach before stepping");
  impl_->extra_w.push_back(std::move(weight));
  impl_->extra_int.push_back(0.0);
  impl_->extra_prev.push_back(
      impl_->grid.volume() *
      kernels::weighted_sumsq(impl_->theta.coeffs, impl_->extra_w.back()));
  return impl_->extra_w.size() - 1;
}

double Simulation::weighted_dissipation(std::size_t handle) const {
  return impl_->extra_int.at(handle);
}

double TimeSeries::at(std::size_t row, const std::string& column) const {
  for (std::size_t c = 0; c < columns.size(); ++c)
    if (columns[c] == column) return rows.at(row).at(c);
  throw std::out_of_range("TimeSeries: no column named " + column);
}

TimeSeries solve(const SpectralField& theta0, const VelocityModel& model,
                 const SolverConfig& cfg, double t_end, const ObserverSet& observers) {
  if (t_end <= 0.0) throw std::invalid_argument("solve: t_end must be positive");
  Simulation sim(theta0, model, cfg);
  for (const auto& w : observers.dissipation_weights)
    sim.attach_weighted_dissipation(w);

  std::vector<long> sample_steps;
  for (double t : observers.times) {
    long idx = std::lround(t / cfg.dt);
    if (idx < 0) idx = 0;
    sample_steps.push_back(idx);
  }
  std::sort(sample_steps.begin(), sample_steps.end());
  sample_steps.erase(std::unique(sample_steps.begin(), sample_steps.end()),
                     sample_steps.end());

  TimeSeries out;
  for (const auto& d : observers.diagnostics) out.columns.push_back(d.name);

  const long total_steps = std::lround(t_end / cfg.dt);
  auto sample = [&]() {
    out.times.push_back(sim.time());
    std::vector<double> row;
    row.reserve(observers.diagnostics.size());
    for (const auto& d : observers.diagnostics) row.push_back(d.eval(sim));
    out.rows.push_back(std::move(row));
  };
  std::size_t next = 0;
  if (next < sample_steps.size() && sample_steps[next] == 0) {
    sample();
    ++next;
  }
  for (long s = 1; s <= total_steps; ++s) {
    sim.step();
    if (next < sample_steps.size() && sample_steps[next] == s) {
      sample();
      ++next;
    }
  }
  return out;
}

// --- commutator decomposition ------------------------------------------------

namespace {

// psi multiplier values for arbitrary k (k may exceed k_max near the top of
// the resolved range).
std::vector<double> psi_table(const LPFamily& fam, int k) {
  const std::size_t total = fam.grid().size();
  std::vector<double> v(total);
  for (std::size_t i = 0; i < total; ++i) v[i] = fam.psi_value(k, i);
  return v;
}

class CommutatorWorkspace {
 public:
  CommutatorWorkspace(const TorusGrid& g) : grid_(g), cbuf_(g.size()) {}

  // physical = IFFT(multiplier .* hat)
  void filter(const std::vector<Complex>& hat, const std::vector<double>& mult,
              std::vector<double>& out) {
    const std::size_t total = grid_.size();
    for (std::size_t i = 0; i < total; ++i) cbuf_[i] = mult[i] * hat[i];
    detail::fft_raw(grid_, false, cbuf_.data(), cbuf_.data());
    out.resize(total);
    for (std::size_t i = 0; i < total; ++i) out[i] = cbuf_[i].real();
  }

  // physical = IFFT(i eta_c .* multiplier .* hat)   (gradient convention)
  void filter_grad(const std::vector<Complex>& hat, const std::vector<double>& mult,
                   int c, std::vector<double>& out) {
    const ModeTable& tab = mode_table(grid_);
    const std::size_t total = grid_.size();
    const int nyq = grid_.nyquist();
    for (std::size_t i = 0; i < total; ++i) {
      const int e = c == 0 ? tab.freq[i][0] : tab.freq[i][1];
      cbuf_[i] = e == nyq ? Complex(0.0, 0.0)
                          : Complex(0.0, static_cast<double>(e)) * (mult[i] * hat[i]);
    }
    detail::fft_raw(grid_, false, cbuf_.data(), cbuf_.data());
    out.resize(total);
    for (std::size_t i = 0; i < total; ++i) out[i] = cbuf_[i].real();
  }

  // hat of a physical product (normalized forward transform)
  void product_hat(const std::vector<double>& a, const std::vector<double>& b,
                   std::vector<Complex>& out) {
    const std::size_t total = grid_.size();
    for (std::size_t i = 0; i < total; ++i) cbuf_[i] = a[i] * b[i];
    detail::fft_raw(grid_, true, cbuf_.data(), cbuf_.data());
    out.resize(total);
    const double scale = 1.0 / static_cast<double>(total);
    for (std::size_t i = 0; i < total; ++i) out[i] = cbuf_[i] * scale;
  }

  // physical = IFFT(sum_c i eta_c .* mult .* hat_c): divergence of a filtered
  // vector of coefficient arrays
  void filtered_divergence(const std::vector<std::vector<Complex>>& hats,
                           const std::vector<double>& mult, std::vector<double>& out) {
    const ModeTable& tab = mode_table(grid_);
    const std::size_t total = grid_.size();
    const int nyq = grid_.nyquist();
    std::vector<Complex> acc(total, Complex(0.0, 0.0));
    for (int c = 0; c < grid_.dim; ++c) {
      const auto& hat = hats[static_cast<std::size_t>(c)];
      for (std::size_t i = 0; i < total; ++i) {
        const int e = c == 0 ? tab.freq[i][0] : tab.freq[i][1];
        if (e != nyq)
          acc[i] += Complex(0.0, static_cast<double>(e)) * (mult[i] * hat[i]);
      }
    }
    detail::fft_raw(grid_, false, acc.data(), acc.data());
    out.resize(total);
    for (std::size_t i = 0; i < total; ++i) out[i] = acc[i].real();
  }

 private:
  TorusGrid grid_;
  std::vector<Complex> cbuf_;
};

}  // namespace

CommutatorReport commutator_terms(const SpectralField& theta, const VectorField& u,
                                  double a, double kappa, const LPFamily& fam,
                                  double dt) {
  if (2.0 * a - 1.0 < 0.0)
    throw std::invalid_argument("commutator_terms: requires 2a - 1 >= 0");
  require_mean_free(theta, "commutator_terms");
  const TorusGrid& g = theta.grid;
  if (!(g == fam.grid()))
    throw std::invalid_argument("commutator_terms: family grid mismatch");
  const double alpha = 2.0 * a - 1.0;
  const std::size_t total = g.size();
  const double cell = g.cell_volume();

  // Two solver micro-steps with the frozen velocity; terms are evaluated at
  // the mid state so the centered difference matches.
  const std::vector<double> tail_w = besov_tail_weight(fam, a);
  const std::vector<double> grad_w = gradient_weight(g);
  SolverConfig cfg;
  cfg.kappa = kappa;
  cfg.dt = dt;
  auto tail_energy = [&](const SpectralField& f) {
    return 0.5 * g.volume() * kernels::weighted_sumsq(f.coeffs, tail_w);
  };

  Simulation sim(theta, u, cfg);
  const double e0 = tail_energy(sim.theta());
  sim.step();
  const SpectralField mid = sim.theta();
  sim.step();
  const double e2 = tail_energy(sim.theta());

  CommutatorReport rep;
  rep.k_max = fam.k_max();
  rep.denergy_dt = (e2 - e0) / (2.0 * dt);
  {
    std::vector<double> w(total);
    for (std::size_t i = 0; i < total; ++i) w[i] = tail_w[i] * grad_w[i];
    rep.kappa_term = kappa * g.volume() * kernels::weighted_sumsq(mid.coeffs, w);
  }

  // Velocity enters mean-removed: the pairwise mean is exact for constant
  // fields, so uniform flows contribute exact zeros.
  std::vector<std::vector<double>> uprime(static_cast<std::size_t>(g.dim));
  std::vector<std::vector<Complex>> uhat(static_cast<std::size_t>(g.dim));
  bool velocity_vanishes = true;
  for (int c = 0; c < g.dim; ++c) {
    const auto& comp = u.comps[static_cast<std::size_t>(c)];
    const double m = kernels::pairwise_sum(comp.values) /
                     static_cast<double>(comp.values.size());
    auto& up = uprime[static_cast<std::size_t>(c)];
    up.resize(total);
    for (std::size_t i = 0; i < total; ++i) up[i] = comp.values[i] - m;
    for (double v : up)
      if (v != 0.0) {
        velocity_vanishes = false;
        break;
      }
  }
  if (velocity_vanishes) {
    rep.residual = std::fabs(rep.denergy_dt + rep.kappa_term);
    return rep;
  }

  CommutatorWorkspace ws(g);
  for (int c = 0; c < g.dim; ++c) {
    std::vector<Complex> hat(total);
    for (std::size_t i = 0; i < total; ++i)
      hat[static_cast<std::size_t>(i)] = uprime[static_cast<std::size_t>(c)][i];
    detail::fft_raw(g, true, hat.data(), hat.data());
    const double scale = 1.0 / static_cast<double>(total);
    for (auto& v : hat) v *= scale;
    uhat[static_cast<std::size_t>(c)] = std::move(hat);
  }

  std::vector<double> theta_phys;
  ws.filter(mid.coeffs, std::vector<double>(total, 1.0), theta_phys);

  std::vector<double> T, S, tmp, dsum;
  std::vector<std::vector<double>> A(static_cast<std::size_t>(g.dim));
  std::vector<std::vector<double>> U(static_cast<std::size_t>(g.dim));
  std::vector<std::vector<double>> V(static_cast<std::size_t>(g.dim));
  std::vector<std::vector<Complex>> prod_hats(static_cast<std::size_t>(g.dim));

  for (int k = 1; k <= fam.k_max(); ++k) {
    const double wk = std::pow(static_cast<double>(k), alpha);
    const std::vector<double>& psi_km1 = fam.psi_hat(k - 1);
    std::vector<double> hp(total);
    for (std::size_t i = 0; i < total; ++i) hp[i] = 1.0 - psi_km1[i];
    const std::vector<double> psi_k2 = psi_table(fam, k + 2);
    const std::vector<double> psi_k4 = psi_table(fam, k + 4);

    ws.filter(mid.coeffs, hp, T);
    for (int c = 0; c < g.dim; ++c)
      ws.filter_grad(mid.coeffs, psi_km1, c, A[static_cast<std::size_t>(c)]);

    // I: high-pass velocity against grad of the low-passed theta
    std::vector<double> hp_u(total);
    for (std::size_t i = 0; i < total; ++i) hp_u[i] = 1.0 - psi_k2[i];
    for (int c = 0; c < g.dim; ++c) {
      std::vector<Complex> filt(total);
      const auto& hat = uhat[static_cast<std::size_t>(c)];
      for (std::size_t i = 0; i < total; ++i) filt[i] = hp_u[i] * hat[i];
      detail::fft_raw(g, false, filt.data(), filt.data());
      auto& dst = U[static_cast<std::size_t>(c)];
      dst.resize(total);
      for (std::size_t i = 0; i < total; ++i) dst[i] = filt[i].real();
    }
    double term_i = 0.0;
    {
      tmp.resize(total);
      for (std::size_t i = 0; i < total; ++i) {
        double s = 0.0;
        for (int c = 0; c < g.dim; ++c)
          s += U[static_cast<std::size_t>(c)][i] * A[static_cast<std::size_t>(c)][i];
        tmp[i] = s;
      }
      term_i = cell * kernels::dot(T, tmp);
    }

    // II: (theta u_hp) * grad psi_{k-1} against theta_k^>=
    for (int c = 0; c < g.dim; ++c)
      ws.product_hat(theta_phys, U[static_cast<std::size_t>(c)],
                     prod_hats[static_cast<std::size_t>(c)]);
    ws.filtered_divergence(prod_hats, psi_km1, dsum);
    const double term_ii = cell * kernels::dot(T, dsum);

    // III: commutator of the low-passed velocity on the low-passed theta
    for (int c = 0; c < g.dim; ++c) {
      std::vector<Complex> filt(total);
      const auto& hat = uhat[static_cast<std::size_t>(c)];
      for (std::size_t i = 0; i < total; ++i) filt[i] = psi_k2[i] * hat[i];
      detail::fft_raw(g, false, filt.data(), filt.data());
      auto& dst = V[static_cast<std::size_t>(c)];
      dst.resize(total);
      for (std::size_t i = 0; i < total; ++i) dst[i] = filt[i].real();
    }
    ws.filter(mid.coeffs, psi_k4, S);
    for (int c = 0; c < g.dim; ++c)
      ws.product_hat(S, V[static_cast<std::size_t>(c)],
                     prod_hats[static_cast<std::size_t>(c)]);
    ws.filtered_divergence(prod_hats, psi_km1, dsum);
    double term_iii = 0.0;
    {
      tmp.resize(total);
      for (std::size_t i = 0; i < total; ++i) {
        double s = 0.0;
        for (int c = 0; c < g.dim; ++c)
          s += V[static_cast<std::size_t>(c)][i] * A[static_cast<std::size_t>(c)][i];
        tmp[i] = s - dsum[i];
      }
      term_iii = cell * kernels::dot(T, tmp);
    }

    rep.term_i += wk * term_i;
    rep.term_ii += wk * term_ii;
    rep.term_iii += wk * term_iii;
  }

  rep.residual = std::fabs(rep.denergy_dt + rep.kappa_term -
                           (rep.term_ii - rep.term_i - rep.term_iii));
  return rep;
}

}  // namespace lpt
