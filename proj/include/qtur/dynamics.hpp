#pragma once

#include <cstddef>
#include <vector>

#include "qtur/model.hpp"

namespace qtur {

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
};

/// Largest dt accepted by propagate_rwa: 0.1 / (2 nbar + 1 + 4 Omega).
double rwa_max_step(const ModelParams& p);

/// Largest dt accepted by propagate_lab: 0.05 / (omega / gamma).
double lab_max_step(const LabFrameParams& lp);

/// Fixed-step classical RK4 for d v / d tau = L v in the rotating frame.
///
/// Snapshots are stored every `stride` steps plus the final state. The last
/// step is shortened so the trajectory ends exactly at tau_end.
Trajectory propagate_rwa(const DensityMatrix& rho0, const ModelParams& p, double tau_end, double dt,
                         std::size_t stride = 1);

/// Fixed-step RK4 of the lab-frame equations with the full cos(w tau) drive.
Trajectory propagate_lab(const DensityMatrix& rho0, const LabFrameParams& lp, double tau_end, double dt,
                         std::size_t stride = 1);

/// Rotating-frame state of the lab-frame dynamics, averaged over `cycles`
/// whole drive periods starting at tau_settle.
///
/// The step is the largest divisor of one period not exceeding dt_max, and
/// the average is the trapezoid rule on the periodic grid.
DensityMatrix cycle_averaged_state(const DensityMatrix& rho0, const LabFrameParams& lp, double tau_settle,
                                   std::size_t cycles, double dt_max);

/// -sum_i l_i ln l_i over the eigenvalues of rho (units of k_B).
/// Throws DomainError when an eigenvalue is below -1e-8.
double von_neumann_entropy(const DensityMatrix& rho);

}  // namespace qtur
