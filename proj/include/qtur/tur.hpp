#pragma once

// Thermodynamic-uncertainty diagnostics: entropy production, the
// uncertainty product Q, Fano-factor bounds, parameter sweeps and the
// resonant minimisation of Q.

#include <cstdint>
#include <optional>
#include <vector>

#include "qtur/counting.hpp"
#include "qtur/model.hpp"
#include "qtur/steady_state.hpp"

namespace qtur {

/// Sigma_ss / k_B = A <j>.
double entropy_production_rate(const ModelParams& p);

/// A [(nbar + 1) rho_ee - nbar rho_gg] evaluated on the analytic steady state.
double entropy_production_rate_trace(const ModelParams& p);

struct UncertaintyProduct {
  double value = 0.0;
  /// Set at <j> = 0, where value is the Omega -> 0 limit A coth(A/2).
  bool zero_current_limit = false;
};

/// Q = A coth(A/2) f.
UncertaintyProduct uncertainty_product(const ModelParams& p);

/// Q = (Sigma / <j>) (Var[j] / <j>). Throws ZeroCurrentError at <j> = 0.
double uncertainty_product_ratio(const ModelParams& p);

struct FanoBounds {
  double phi_o = 0.0;     ///< 2 / A
  double phi_p = 0.0;     ///< 2 / (e^A - 1)
  double envelope = 0.0;  ///< (5/4) coth(A/2)
};

FanoBounds fano_bounds(double A);

struct TurPoint {
  ModelParams params;
  CoherenceParts coherence;
  CountingStatistics stats;
  FanoBounds bounds;
};

TurPoint evaluate_point(const ModelParams& p);

/// Closed interval with a point count (grid mode) or just bounds (random mode).
struct AxisRange {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t n = 1;

  double at(std::size_t k) const;
};

struct SweepSpec {
  enum class Mode { kGrid, kRandom };

  Mode mode = Mode::kGrid;
  AxisRange A{1.0, 1.0, 1};
  AxisRange omega_gamma{0.0, 0.0, 1};
  AxisRange delta_gamma{0.0, 0.0, 1};
  std::size_t samples = 0;  ///< random mode only
  std::uint64_t seed = 42;  ///< random mode only

  /// Default random scatter: A log-uniform on [0.1, 12],
  /// Omega uniform on [0, 5], delta uniform on [-5, 5].
  static SweepSpec random_scatter(std::size_t samples, std::uint64_t seed);

  std::size_t size() const;

  /// Parameters of point `index`; pure in (spec, index).
  ModelParams point(std::size_t index) const;

  /// Throws DomainError for empty or invalid ranges.
  void validate() const;
};

/// Evaluates every point of the grid in index order (OpenMP across points).
std::vector<TurPoint> sweep(const SweepSpec& spec, int threads = 0);

/// Single-threaded reference for sweep().
std::vector<TurPoint> sweep_serial(const SweepSpec& spec);

struct MinimizeControl {
  double A_lo = 0.5;
  double A_hi = 10.0;
  double omega_lo = 0.01;
  double omega_hi = 3.0;
  std::size_t grid_A = 96;
  std::size_t grid_omega = 96;
  double tolerance = 1e-4;  ///< final pattern-search cell size
};

struct MinimizeResult {
  double A_star = 0.0;
  double omega_star = 0.0;
  double q_min = 0.0;
  bool on_boundary = false;
  std::size_t evaluations = 0;
};

/// Q(A, Omega) at resonance: A coth(A/2) [1 - 24 Omega^2 / (coth^2 + 8 Omega^2)^2].
double resonant_q(double A, double omega_gamma);

/// Coarse grid scan of resonant_q followed by compass pattern search.
MinimizeResult minimize_q_resonant(const MinimizeControl& ctl = {}, int threads = 0);

/// Single-threaded reference for minimize_q_resonant().
MinimizeResult minimize_q_resonant_serial(const MinimizeControl& ctl = {});

}  // namespace qtur
