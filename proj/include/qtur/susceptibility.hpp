#pragma once

// Linear optical response of the driven two-level medium and the
// physical-timescale helper.
//
// chi = N_d rho_eg^ss, so chi' (dispersion) follows rho_R and chi''
// (absorption) follows rho_I. N_d is a dimensionless user scale.

#include <vector>

#include "qtur/model.hpp"

namespace qtur {

struct OpticalResponse {
  double delta_gamma = 0.0;
  double chi_re = 0.0;                  ///< chi'
  double chi_im = 0.0;                  ///< chi''
  double refractive_index_shift = 0.0;  ///< 2 pi chi' (index minus one)
  double attenuation_scaled = 0.0;      ///< 4 pi chi''; multiply by omega / c for the attenuation coefficient
};

/// Throws DomainError unless n_d > 0.
OpticalResponse optical_response(const ModelParams& p, double n_d = 1.0);

/// Response on `n_points` evenly spaced detunings in [delta_lo, delta_hi].
std::vector<OpticalResponse> profile_over_detuning(double A, double omega_gamma, double delta_lo, double delta_hi,
                                                   std::size_t n_points, double n_d = 1.0);

/// Half-width of the absorption line: chi''(delta_h) = chi''(0) / 2.
double absorption_half_width(double A, double omega_gamma);

struct PhysicalScales {
  double wavelength = 500e-9;          ///< m
  double atom_size = 1e-9;             ///< m
  double fine_structure = 1.0 / 137.0;

  /// True when atom_size / wavelength > 0.1 (dipole approximation doubtful).
  bool size_warning() const { return atom_size / wavelength > 0.1; }
};

/// gamma / omega0 = (4 alpha / 3) (2 pi a0 / lambda)^2.
double decay_to_resonance_ratio(const PhysicalScales& s);

/// omega0 / gamma.
double timescale_ratio(const PhysicalScales& s);

}  // namespace qtur
