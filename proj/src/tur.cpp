#include "qtur/tur.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <omp.h>

#include "qtur/errors.hpp"
#include "qtur/rng.hpp"

namespace qtur {

double entropy_production_rate(const ModelParams& p) { return p.A * mean_current(p); }

double entropy_production_rate_trace(const ModelParams& p) {
  const DensityMatrix ss = analytic_steady_state(p);
  return p.A * ((p.nbar + 1.0) * ss.rho_ee.real() - p.nbar * ss.rho_gg.real());
}

UncertaintyProduct uncertainty_product(const ModelParams& p) {
  return {p.A * p.coth() * current_f_factor(p), mean_current(p) == 0.0};
}

double uncertainty_product_ratio(const ModelParams& p) {
  const double j = mean_current(p);
  if (j == 0.0) {
    throw ZeroCurrentError("uncertainty product ratio is 0/0 at zero mean current (omega_gamma = 0)");
  }
  return (entropy_production_rate(p) / j) * (current_variance(p) / j);
}

FanoBounds fano_bounds(double A) {
  return {2.0 / A, 2.0 * bath_occupation(A), 1.25 * coth_half(A)};
}

TurPoint evaluate_point(const ModelParams& p) {
  return {p, coherence_parts(p), counting_statistics(p), fano_bounds(p.A)};
}

double AxisRange::at(std::size_t k) const {
  if (n <= 1) return lo;
  return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
}

SweepSpec SweepSpec::random_scatter(std::size_t samples, std::uint64_t seed) {
  SweepSpec s;
  s.mode = Mode::kRandom;
  s.A = {0.1, 12.0, 1};
  s.omega_gamma = {0.0, 5.0, 1};
  s.delta_gamma = {-5.0, 5.0, 1};
  s.samples = samples;
  s.seed = seed;
  return s;
}

std::size_t SweepSpec::size() const {
  if (mode == Mode::kRandom) return samples;
  return A.n * omega_gamma.n * delta_gamma.n;
}

ModelParams SweepSpec::point(std::size_t index) const {
  if (mode == Mode::kRandom) {
    CounterRng rng(seed, index);
    const double A_value = std::exp(rng.uniform(std::log(A.lo), std::log(A.hi)));
    const double w = rng.uniform(omega_gamma.lo, omega_gamma.hi);
    const double d = rng.uniform(delta_gamma.lo, delta_gamma.hi);
    return make_params(A_value, w, d);
  }
  const std::size_t id = index % delta_gamma.n;
  const std::size_t iw = (index / delta_gamma.n) % omega_gamma.n;
  const std::size_t ia = index / (delta_gamma.n * omega_gamma.n);
  return make_params(A.at(ia), omega_gamma.at(iw), delta_gamma.at(id));
}

void SweepSpec::validate() const {
  auto check_axis = [](const AxisRange& r, const char* name) {
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi) {
      throw DomainError(std::string(name) + " range must satisfy lo <= hi");
    }
    if (r.n < 1) throw DomainError(std::string(name) + " range needs at least one point");
  };
  check_axis(A, "A");
  check_axis(omega_gamma, "omega_gamma");
  check_axis(delta_gamma, "delta_gamma");
  if (A.lo < kMinGap) throw DomainError("A range must lie above the cutoff 1e-8");
  if (omega_gamma.lo < 0.0) throw DomainError("omega_gamma range must be non-negative");
  if (mode == Mode::kRandom && samples < 1) throw DomainError("random sweep needs samples >= 1");
}

std::vector<TurPoint> sweep_serial(const SweepSpec& spec) {
  spec.validate();
  std::vector<TurPoint> out(spec.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = evaluate_point(spec.point(i));
  }
  return out;
}

std::vector<TurPoint> sweep(const SweepSpec& spec, int threads) {
  spec.validate();
  const auto n = static_cast<std::ptrdiff_t>(spec.size());
  std::vector<TurPoint> out(static_cast<std::size_t>(n));
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = evaluate_point(spec.point(static_cast<std::size_t>(i)));
  }
  return out;
}

double resonant_q(double A, double omega_gamma) {
  return uncertainty_product(make_params(A, omega_gamma, 0.0)).value;
}

namespace {

void validate(const MinimizeControl& ctl) {
  if (!(ctl.A_lo >= kMinGap && ctl.A_lo < ctl.A_hi)) throw DomainError("minimize: need 1e-8 <= A_lo < A_hi");
  if (!(ctl.omega_lo >= 0.0 && ctl.omega_lo < ctl.omega_hi)) {
    throw DomainError("minimize: need 0 <= omega_lo < omega_hi");
  }
  if (ctl.grid_A < 2 || ctl.grid_omega < 2) throw DomainError("minimize: grid needs >= 2 points per axis");
  if (!(ctl.tolerance > 0.0)) throw DomainError("minimize: tolerance must be positive");
}

double grid_coord(double lo, double hi, std::size_t n, std::size_t k) {
  return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
}

// Compass search from the best grid cell; shared by the serial and parallel paths.
MinimizeResult refine(const MinimizeControl& ctl, const std::vector<double>& grid_values) {
  const std::size_t best =
      static_cast<std::size_t>(std::min_element(grid_values.begin(), grid_values.end()) - grid_values.begin());
  double a = grid_coord(ctl.A_lo, ctl.A_hi, ctl.grid_A, best / ctl.grid_omega);
  double w = grid_coord(ctl.omega_lo, ctl.omega_hi, ctl.grid_omega, best % ctl.grid_omega);
  double q = grid_values[best];
  double step_a = (ctl.A_hi - ctl.A_lo) / static_cast<double>(ctl.grid_A - 1);
  double step_w = (ctl.omega_hi - ctl.omega_lo) / static_cast<double>(ctl.grid_omega - 1);
  std::size_t evals = grid_values.size();

  while (std::max(step_a, step_w) >= ctl.tolerance) {
    const double cand[4][2] = {{a + step_a, w}, {a - step_a, w}, {a, w + step_w}, {a, w - step_w}};
    int pick = -1;
    double q_pick = q;
    for (int k = 0; k < 4; ++k) {
      const double ca = std::clamp(cand[k][0], ctl.A_lo, ctl.A_hi);
      const double cw = std::clamp(cand[k][1], ctl.omega_lo, ctl.omega_hi);
      const double cq = resonant_q(ca, cw);
      ++evals;
      if (cq < q_pick) {
        q_pick = cq;
        pick = k;
      }
    }
    if (pick >= 0) {
      a = std::clamp(cand[pick][0], ctl.A_lo, ctl.A_hi);
      w = std::clamp(cand[pick][1], ctl.omega_lo, ctl.omega_hi);
      q = q_pick;
    } else {
      step_a *= 0.5;
      step_w *= 0.5;
    }
  }

  MinimizeResult r;
  r.A_star = a;
  r.omega_star = w;
  r.q_min = q;
  r.evaluations = evals;
  const double tol = ctl.tolerance;
  r.on_boundary = a - ctl.A_lo < tol || ctl.A_hi - a < tol || w - ctl.omega_lo < tol || ctl.omega_hi - w < tol;
  return r;
}

}  // namespace

MinimizeResult minimize_q_resonant_serial(const MinimizeControl& ctl) {
  validate(ctl);
  std::vector<double> values(ctl.grid_A * ctl.grid_omega);
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = resonant_q(grid_coord(ctl.A_lo, ctl.A_hi, ctl.grid_A, i / ctl.grid_omega),
                           grid_coord(ctl.omega_lo, ctl.omega_hi, ctl.grid_omega, i % ctl.grid_omega));
  }
  return refine(ctl, values);
}

MinimizeResult minimize_q_resonant(const MinimizeControl& ctl, int threads) {
  validate(ctl);
  const auto n = static_cast<std::ptrdiff_t>(ctl.grid_A * ctl.grid_omega);
  std::vector<double> values(static_cast<std::size_t>(n));
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    values[k] = resonant_q(grid_coord(ctl.A_lo, ctl.A_hi, ctl.grid_A, k / ctl.grid_omega),
                           grid_coord(ctl.omega_lo, ctl.omega_hi, ctl.grid_omega, k % ctl.grid_omega));
  }
  return refine(ctl, values);
}

}  // namespace qtur
