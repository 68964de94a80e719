#include "qtur/susceptibility.hpp"

#include <cmath>

#include "qtur/errors.hpp"
#include "qtur/steady_state.hpp"

namespace qtur {

OpticalResponse optical_response(const ModelParams& p, double n_d) {
  if (!(n_d > 0.0) || !std::isfinite(n_d)) throw DomainError("n_d must be positive and finite");
  const CoherenceParts c = coherence_parts(p);
  OpticalResponse r;
  r.delta_gamma = p.delta_gamma;
  r.chi_re = n_d * c.rho_r;
  r.chi_im = n_d * c.rho_i;
  r.refractive_index_shift = 2.0 * M_PI * r.chi_re;
  r.attenuation_scaled = 4.0 * M_PI * r.chi_im;
  return r;
}

std::vector<OpticalResponse> profile_over_detuning(double A, double omega_gamma, double delta_lo, double delta_hi,
                                                   std::size_t n_points, double n_d) {
  if (n_points < 3) throw DomainError("profile needs at least 3 points");
  if (!(delta_lo <= delta_hi)) throw DomainError("detuning range must satisfy lo <= hi");
  std::vector<OpticalResponse> out;
  out.reserve(n_points);
  for (std::size_t k = 0; k < n_points; ++k) {
    const double span = static_cast<double>(n_points - 1);
    // Symmetric grids use the odd integer 2k - (n-1) so abscissae mirror exactly.
    const double d = delta_lo == -delta_hi
                         ? delta_hi * ((2.0 * static_cast<double>(k) - span) / span)
                         : delta_lo + (delta_hi - delta_lo) * (static_cast<double>(k) / span);
    out.push_back(optical_response(make_params(A, omega_gamma, d), n_d));
  }
  return out;
}

double absorption_half_width(double A, double omega_gamma) {
  const double c = coth_half(A);
  return 0.5 * std::sqrt(c * c + 8.0 * omega_gamma * omega_gamma);
}

double decay_to_resonance_ratio(const PhysicalScales& s) {
  if (!(s.wavelength > 0.0) || !(s.atom_size > 0.0) || !(s.fine_structure > 0.0)) {
    throw DomainError("wavelength, atom size and fine-structure constant must be positive");
  }
  const double k = 2.0 * M_PI * s.atom_size / s.wavelength;
  return 4.0 * s.fine_structure / 3.0 * k * k;
}

double timescale_ratio(const PhysicalScales& s) {
  if (!(s.wavelength > 0.0) || !(s.atom_size > 0.0) || !(s.fine_structure > 0.0)) {
    throw DomainError("wavelength, atom size and fine-structure constant must be positive");
  }
  const double k = 2.0 * M_PI * s.atom_size / s.wavelength;
  return 3.0 / (4.0 * s.fine_structure * k * k);
}

}  // namespace qtur
