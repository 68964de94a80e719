#include "qtur/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qtur/errors.hpp"

namespace qtur {

namespace {

DensityMatrix axpy(const DensityMatrix& x, double a, const DensityMatrix& k) {
  return {x.rho_ee + a * k.rho_ee, x.rho_eg + a * k.rho_eg, x.rho_ge + a * k.rho_ge, x.rho_gg + a * k.rho_gg};
}

DensityMatrix rk4_combine(const DensityMatrix& x, double h, const DensityMatrix& k1, const DensityMatrix& k2,
                          const DensityMatrix& k3, const DensityMatrix& k4) {
  const double s = h / 6.0;
  return {x.rho_ee + s * (k1.rho_ee + 2.0 * k2.rho_ee + 2.0 * k3.rho_ee + k4.rho_ee),
          x.rho_eg + s * (k1.rho_eg + 2.0 * k2.rho_eg + 2.0 * k3.rho_eg + k4.rho_eg),
          x.rho_ge + s * (k1.rho_ge + 2.0 * k2.rho_ge + 2.0 * k3.rho_ge + k4.rho_ge),
          x.rho_gg + s * (k1.rho_gg + 2.0 * k2.rho_gg + 2.0 * k3.rho_gg + k4.rho_gg)};
}

template <typename Rhs>
DensityMatrix rk4_step(const DensityMatrix& x, double tau, double h, const Rhs& f) {
  const DensityMatrix k1 = f(x, tau);
  const DensityMatrix k2 = f(axpy(x, 0.5 * h, k1), tau + 0.5 * h);
  const DensityMatrix k3 = f(axpy(x, 0.5 * h, k2), tau + 0.5 * h);
  const DensityMatrix k4 = f(axpy(x, h, k3), tau + h);
  return rk4_combine(x, h, k1, k2, k3, k4);
}

template <typename Rhs>
Trajectory integrate(const DensityMatrix& rho0, double tau_end, double dt, std::size_t stride, const Rhs& f) {
  if (stride == 0) stride = 1;
  Trajectory tr;
  const auto steps = static_cast<std::size_t>(std::ceil(tau_end / dt - 1e-9));
  tr.times.reserve(steps / stride + 2);
  tr.states.reserve(steps / stride + 2);
  tr.times.push_back(0.0);
  tr.states.push_back(rho0);

  DensityMatrix x = rho0;
  for (std::size_t k = 0; k < steps; ++k) {
    const double tau = static_cast<double>(k) * dt;
    const double h = std::min(dt, tau_end - tau);
    x = rk4_step(x, tau, h, f);
    if ((k + 1) % stride == 0 || k + 1 == steps) {
      tr.times.push_back(k + 1 == steps ? tau_end : tau + h);
      tr.states.push_back(x);
    }
  }
  return tr;
}

void check_horizon(double tau_end, double dt) {
  if (!(tau_end >= 0.0) || !std::isfinite(tau_end)) throw DomainError("tau_end must be finite and >= 0");
  if (!(dt > 0.0)) throw StepSizeError("dt must be positive");
}

}  // namespace

double rwa_max_step(const ModelParams& p) { return 0.1 / (p.coth() + 4.0 * p.omega_gamma); }

double lab_max_step(const LabFrameParams& lp) { return 0.05 / lp.omega_gamma_field; }

Trajectory propagate_rwa(const DensityMatrix& rho0, const ModelParams& p, double tau_end, double dt,
                         std::size_t stride) {
  check_horizon(tau_end, dt);
  if (dt > rwa_max_step(p)) {
    throw StepSizeError("dt = " + std::to_string(dt) + " exceeds the stability bound " +
                        std::to_string(rwa_max_step(p)));
  }
  const Generator L = rwa_generator(p);
  auto f = [&L](const DensityMatrix& x, double) {
    return L.apply(x.to_liouville()).to_density_matrix();
  };
  return integrate(rho0, tau_end, dt, stride, f);
}

Trajectory propagate_lab(const DensityMatrix& rho0, const LabFrameParams& lp, double tau_end, double dt,
                         std::size_t stride) {
  check_horizon(tau_end, dt);
  if (dt > lab_max_step(lp)) {
    throw StepSizeError("dt = " + std::to_string(dt) + " does not resolve the drive; need dt <= " +
                        std::to_string(lab_max_step(lp)));
  }
  auto f = [&lp](const DensityMatrix& x, double tau) { return lab_frame_rhs(x, tau, lp); };
  return integrate(rho0, tau_end, dt, stride, f);
}

DensityMatrix cycle_averaged_state(const DensityMatrix& rho0, const LabFrameParams& lp, double tau_settle,
                                   std::size_t cycles, double dt_max) {
  if (cycles == 0) throw DomainError("cycle average needs at least one cycle");
  if (!(tau_settle >= 0.0)) throw DomainError("tau_settle must be >= 0");
  dt_max = std::min(dt_max, lab_max_step(lp));
  if (!(dt_max > 0.0)) throw StepSizeError("dt_max must be positive");

  const double w = lp.omega_gamma_field;
  const double period = 2.0 * M_PI / w;
  const auto per_cycle = static_cast<std::size_t>(std::ceil(period / dt_max));
  const double h = period / static_cast<double>(per_cycle);
  // Start the window on a whole number of steps so tau stays on the grid.
  const auto settle_steps = static_cast<std::size_t>(std::ceil(tau_settle / h));

  auto f = [&lp](const DensityMatrix& x, double tau) { return lab_frame_rhs(x, tau, lp); };
  DensityMatrix x = rho0;
  std::size_t k = 0;
  for (; k < settle_steps; ++k) x = rk4_step(x, static_cast<double>(k) * h, h, f);

  // Trapezoid rule over whole periods.
  const std::size_t window = cycles * per_cycle;
  DensityMatrix sum{{0.0, 0.0}, {}, {}, {0.0, 0.0}};
  for (std::size_t s = 0; s <= window; ++s, ++k) {
    const double tau = static_cast<double>(k) * h;
    const DensityMatrix r = rotate_to_frame(x, tau, w);
    const double weight = (s == 0 || s == window) ? 0.5 : 1.0;
    sum = axpy(sum, weight, r);
    if (s < window) x = rk4_step(x, tau, h, f);
  }
  const double inv = 1.0 / static_cast<double>(window);
  return {sum.rho_ee * inv, sum.rho_eg * inv, sum.rho_ge * inv, sum.rho_gg * inv};
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const double a = rho.rho_ee.real();
  const double d = rho.rho_gg.real();
  const double mean = 0.5 * (a + d);
  const double radius = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(rho.rho_eg));
  const double lambdas[2] = {mean + radius, mean - radius};
  double s = 0.0;
  for (double l : lambdas) {
    if (l < -1e-8) {
      throw DomainError("density matrix has eigenvalue " + std::to_string(l) + " < -1e-8");
    }
    if (l > 0.0) s -= l * std::log(l);
  }
  return s;
}

}  // namespace qtur
