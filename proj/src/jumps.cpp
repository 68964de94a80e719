#include "qtur/jumps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <omp.h>

#include "qtur/errors.hpp"
#include "qtur/rng.hpp"
#include "qtur/steady_state.hpp"

namespace qtur {

std::array<Complex, 4> expm2(const std::array<Complex, 4>& m, double s) {
  // exp(sM) = e^{s mu} [cosh(s q) I + sinh(s q)/q (M - mu I)],  q^2 = a^2 + bc
  const Complex mu = 0.5 * (m[0] + m[3]);
  const Complex a = 0.5 * (m[0] - m[3]);
  const Complex q = std::sqrt(a * a + m[1] * m[2]);
  const Complex sq = s * q;
  Complex ch, sh_over_q;
  if (std::abs(sq) < 1e-4) {
    const Complex sq2 = sq * sq;
    ch = 1.0 + sq2 / 2.0 + sq2 * sq2 / 24.0;
    sh_over_q = s * (1.0 + sq2 / 6.0 + sq2 * sq2 / 120.0);
  } else {
    ch = std::cosh(sq);
    sh_over_q = std::sinh(sq) / q;
  }
  const Complex e = std::exp(s * mu);
  return {e * (ch + sh_over_q * a), e * sh_over_q * m[1], e * sh_over_q * m[2], e * (ch - sh_over_q * a)};
}

namespace {

struct Spinor {
  Complex e;
  Complex g;

  double norm2() const { return std::norm(e) + std::norm(g); }
};

Spinor mat_vec(const std::array<Complex, 4>& u, const Spinor& psi) {
  return {u[0] * psi.e + u[1] * psi.g, u[2] * psi.e + u[3] * psi.g};
}

// No-jump evolution and jump bookkeeping for one parameter point.
class JumpKernel {
 public:
  explicit JumpKernel(const ModelParams& p)
      : emit_rate_(p.nbar + 1.0), absorb_rate_(p.nbar), dt_(jump_detection_step(p)) {
    const Complex i(0.0, 1.0);
    // -i H_eff
    generator_ = {i * 0.5 * p.delta_gamma - 0.5 * emit_rate_, i * p.omega_gamma, i * p.omega_gamma,
                  -i * 0.5 * p.delta_gamma - 0.5 * absorb_rate_};
    step_ = expm2(generator_, dt_);

    const DensityMatrix ss = analytic_steady_state(p);
    init_states(ss);
  }

  double dt() const { return dt_; }

  Spinor step(const Spinor& psi) const { return mat_vec(step_, psi); }

  Spinor propagate(const Spinor& psi, double s) const { return mat_vec(expm2(generator_, s), psi); }

  // d/ds |psi(s)|^2 = -[(nbar+1)|c_e|^2 + nbar |c_g|^2]
  double decay(const Spinor& psi) const { return emit_rate_ * std::norm(psi.e) + absorb_rate_ * std::norm(psi.g); }

  double emit_weight(const Spinor& psi) const { return emit_rate_ * std::norm(psi.e); }

  Spinor initial_state(CounterRng& rng) const {
    return rng.uniform() < init_prob_ ? init_[0] : init_[1];
  }

  // Locates s in (0, h] with |U(s) psi|^2 = threshold, given |psi|^2 > threshold >= |U(h) psi|^2.
  double crossing_time(const Spinor& psi, double h, double threshold) const {
    double lo = 0.0;
    double hi = h;
    const double g_lo = psi.norm2() - threshold;
    const double g_hi = propagate(psi, h).norm2() - threshold;
    double s = h * g_lo / (g_lo - g_hi);
    for (int it = 0; it < 100; ++it) {
      const Spinor x = propagate(psi, s);
      const double g = x.norm2() - threshold;
      if (g > 0.0) {
        lo = s;
      } else {
        hi = s;
      }
      const double slope = -decay(x);
      double next = slope < 0.0 ? s - g / slope : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - s) <= 1e-15 * std::max(1.0, h) || hi - lo <= 1e-15) {
        return next;
      }
      s = next;
    }
    return s;
  }

 private:
  void init_states(const DensityMatrix& ss) {
    // Eigen-decomposition of the 2x2 Hermitian steady state.
    const double a = ss.rho_ee.real();
    const double d = ss.rho_gg.real();
    const Complex b = ss.rho_eg;
    const double mean = 0.5 * (a + d);
    const double radius = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
    const double l_plus = mean + radius;
    Spinor v_plus;
    Spinor v_minus;
    if (std::abs(b) > 0.0) {
      // (rho - l I) v = 0  =>  v = (b, l - a) or (l - d, conj(b))
      const Spinor cand1{b, l_plus - a};
      const Spinor cand2{l_plus - d, std::conj(b)};
      v_plus = cand1.norm2() >= cand2.norm2() ? cand1 : cand2;
      const double nrm = std::sqrt(v_plus.norm2());
      v_plus = {v_plus.e / nrm, v_plus.g / nrm};
      v_minus = {-std::conj(v_plus.g), std::conj(v_plus.e)};
    } else if (a >= d) {
      v_plus = {1.0, 0.0};
      v_minus = {0.0, 1.0};
    } else {
      v_plus = {0.0, 1.0};
      v_minus = {1.0, 0.0};
    }
    init_ = {v_plus, v_minus};
    init_prob_ = std::clamp(l_plus, 0.0, 1.0);
  }

  double emit_rate_;
  double absorb_rate_;
  double dt_;
  std::array<Complex, 4> generator_{};
  std::array<Complex, 4> step_{};
  std::array<Spinor, 2> init_{};
  double init_prob_ = 1.0;
};

// Runs one trajectory on [0, tau]; `sample` is called with (k, psi) at each
// requested time in `times` (ascending). Returns the net count.
template <typename Sample>
std::int64_t run_trajectory(const JumpKernel& kernel, Spinor psi, double tau, CounterRng& rng,
                            const std::vector<double>& times, Sample&& sample) {
  std::int64_t count = 0;
  double t = 0.0;
  double threshold = rng.uniform();
  std::size_t next_sample = 0;
  while (next_sample < times.size() && times[next_sample] <= 0.0) sample(next_sample++, psi);

  while (t < tau) {
    double stop = t + kernel.dt();
    bool full_step = true;
    const double limit = next_sample < times.size() ? std::min(tau, times[next_sample]) : tau;
    if (stop > limit) {
      stop = limit;
      full_step = false;
    }
    const double h = full_step ? kernel.dt() : stop - t;
    const Spinor trial = full_step ? kernel.step(psi) : kernel.propagate(psi, h);
    if (trial.norm2() > threshold) {
      psi = trial;
      t = stop;
      while (next_sample < times.size() && times[next_sample] <= t) sample(next_sample++, psi);
      continue;
    }
    const double s = kernel.crossing_time(psi, h, threshold);
    const Spinor at_jump = kernel.propagate(psi, s);
    t += s;
    const double total = kernel.decay(at_jump);
    if (rng.uniform() * total < kernel.emit_weight(at_jump)) {
      psi = {0.0, 1.0};
      ++count;
    } else {
      psi = {1.0, 0.0};
      --count;
    }
    threshold = rng.uniform();
    while (next_sample < times.size() && times[next_sample] <= t) sample(next_sample++, psi);
  }
  return count;
}

void validate_batch(double tau, std::size_t n_traj) {
  if (!(tau >= 10.0) || !std::isfinite(tau)) {
    throw DomainError("trajectory duration tau must be >= 10, got " + std::to_string(tau));
  }
  if (n_traj < 1) throw DomainError("n_traj must be >= 1");
}

}  // namespace

double jump_detection_step(const ModelParams& p) {
  return std::min(0.01, 0.1 / (p.coth() + 4.0 * p.omega_gamma));
}

std::int64_t simulate_net_count(const ModelParams& p, double tau, std::uint64_t seed, std::uint64_t index) {
  const JumpKernel kernel(p);
  CounterRng rng(seed, index);
  const Spinor psi0 = kernel.initial_state(rng);
  return run_trajectory(kernel, psi0, tau, rng, {}, [](std::size_t, const Spinor&) {});
}

TrajectoryBatch sample_jump_trajectories_serial(const ModelParams& p, double tau, std::size_t n_traj,
                                                std::uint64_t seed) {
  validate_batch(tau, n_traj);
  const JumpKernel kernel(p);
  const std::vector<double> no_samples;
  TrajectoryBatch batch{std::vector<std::int64_t>(n_traj), tau, seed, n_traj};
  for (std::size_t k = 0; k < n_traj; ++k) {
    CounterRng rng(seed, k);
    const Spinor psi0 = kernel.initial_state(rng);
    batch.counts[k] = run_trajectory(kernel, psi0, tau, rng, no_samples, [](std::size_t, const Spinor&) {});
  }
  return batch;
}

TrajectoryBatch sample_jump_trajectories(const ModelParams& p, double tau, std::size_t n_traj, std::uint64_t seed,
                                         int threads) {
  validate_batch(tau, n_traj);
  const JumpKernel kernel(p);
  const std::vector<double> no_samples;
  TrajectoryBatch batch{std::vector<std::int64_t>(n_traj), tau, seed, n_traj};
  const auto n = static_cast<std::ptrdiff_t>(n_traj);
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 64) num_threads(nt)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    CounterRng rng(seed, static_cast<std::uint64_t>(k));
    const Spinor psi0 = kernel.initial_state(rng);
    batch.counts[static_cast<std::size_t>(k)] =
        run_trajectory(kernel, psi0, tau, rng, no_samples, [](std::size_t, const Spinor&) {});
  }
  return batch;
}

PopulationEstimate jump_ensemble_excited_population(const ModelParams& p, const std::vector<double>& times,
                                                    std::size_t n_traj, std::uint64_t seed, int threads) {
  if (n_traj < 2) throw DomainError("population estimate needs n_traj >= 2");
  if (!std::is_sorted(times.begin(), times.end())) throw DomainError("sample times must be ascending");
  const JumpKernel kernel(p);
  const double horizon = times.empty() ? 0.0 : times.back();
  const std::size_t m = times.size();
  std::vector<double> samples(n_traj * m);

  const auto n = static_cast<std::ptrdiff_t>(n_traj);
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 64) num_threads(nt)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    CounterRng rng(seed, static_cast<std::uint64_t>(k));
    double* row = samples.data() + static_cast<std::size_t>(k) * m;
    run_trajectory(kernel, Spinor{0.0, 1.0}, horizon, rng, times,
                   [row](std::size_t i, const Spinor& psi) { row[i] = std::norm(psi.e) / psi.norm2(); });
  }

  PopulationEstimate est{std::vector<double>(m, 0.0), std::vector<double>(m, 0.0)};
  for (std::size_t i = 0; i < m; ++i) {
    double sum = 0.0;
    double sum2 = 0.0;
    for (std::size_t k = 0; k < n_traj; ++k) {
      const double x = samples[k * m + i];
      sum += x;
      sum2 += x * x;
    }
    const double nn = static_cast<double>(n_traj);
    const double mean = sum / nn;
    const double var = std::max(0.0, (sum2 - nn * mean * mean) / (nn - 1.0));
    est.mean[i] = mean;
    est.se[i] = std::sqrt(var / nn);
  }
  return est;
}

BatchSummary summarize(const TrajectoryBatch& batch) {
  const std::size_t n = batch.counts.size();
  BatchSummary s;
  if (n == 0) return s;
  const double nn = static_cast<double>(n);
  double mean = 0.0;
  for (auto c : batch.counts) mean += static_cast<double>(c);
  mean /= nn;
  double m2 = 0.0;
  double m4 = 0.0;
  for (auto c : batch.counts) {
    const double d = static_cast<double>(c) - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  const double var = n > 1 ? m2 / (nn - 1.0) : 0.0;
  m4 /= nn;
  s.mean_current = mean / batch.tau;
  s.mean_current_se = std::sqrt(var / nn) / batch.tau;
  s.variance_rate = var / batch.tau;
  // Var(s^2) = (mu4 - sigma^4 (n - 3) / (n - 1)) / n
  const double var_of_var = n > 3 ? std::max(0.0, (m4 - var * var * (nn - 3.0) / (nn - 1.0)) / nn) : 0.0;
  s.variance_rate_se = std::sqrt(var_of_var) / batch.tau;
  return s;
}

}  // namespace qtur
