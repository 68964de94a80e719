#pragma once

#include "qtur/model.hpp"

namespace qtur {

/// Real and imaginary parts of the stationary eg coherence (rotating frame).
struct CoherenceParts {
  double rho_r = 0.0;
  double rho_i = 0.0;
};

/// Closed-form nonequilibrium steady state of the rotating-wave dynamics.
DensityMatrix analytic_steady_state(const ModelParams& p);

CoherenceParts coherence_parts(const ModelParams& p);

/// Stationary state from the null space of `g`, normalised to unit trace.
///
/// One row of g v = 0 is replaced by the trace constraint and the square
/// system is solved directly. Throws DegenerateNullSpaceError when the
/// second-smallest singular value of `g` is below 1e-8 times the largest.
DensityMatrix numeric_steady_state(const Generator& g);

}  // namespace qtur
