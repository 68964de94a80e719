#pragma once

// Full counting statistics of the net number of photon transitions
// (emissions minus absorptions) via the tilted generator Gamma(z).
//
// Counting convention: the absorption entry [ee, gg] carries e^{-z}, the
// emission entry [gg, ee] carries e^{+z}. The dominant eigenvalue
// lambda0(z) is the scaled cumulant generating function, so
// lambda0'(0) = <j> and lambda0''(0) = Var[j].

#include <array>
#include <utility>

#include "qtur/model.hpp"

namespace qtur {

/// Characteristic polynomial det(lambda I - Gamma(z)) = sum_n a_n(z) lambda^n.
///
/// a4, a3, a2 do not depend on z; a1 and a0 are stored with the
/// z-derivatives at z = 0 that the cumulant formulas need.
struct CharPolyCoeffs {
  double a4 = 1.0;
  double a3 = 0.0;
  double a2 = 0.0;
  double a1 = 0.0;        ///< a1(0)
  double a1_prime = 0.0;  ///< a1'(0)
  double a0 = 0.0;        ///< a0(0), zero up to roundoff
  double a0_prime = 0.0;  ///< a0'(0)
  double a0_second = 0.0; ///< a0''(0)
};

/// Long-time counting statistics at one parameter point.
struct CountingStatistics {
  double mean_current = 0.0;         ///< <j>
  double variance = 0.0;             ///< Var[j]
  double fano = 0.0;                 ///< Var[j] / <j>
  double entropy_rate = 0.0;         ///< Sigma_ss / k_B = A <j>
  double uncertainty_product = 0.0;  ///< Q = A coth(A/2) f
  /// True when <j> = 0: fano and Q hold their Omega -> 0 limits.
  bool zero_current_limit = false;
};

Generator tilted_generator(const ModelParams& p, double z);

/// a_n(z) at arbitrary z (a4..a0, index n).
std::array<double, 5> char_poly_at(const ModelParams& p, double z);

CharPolyCoeffs char_poly_coeffs(const ModelParams& p);

/// 4 Omega^2 / (coth^2 + 4 delta^2 + 8 Omega^2).
double mean_current(const ModelParams& p);

/// -a0'(0) / a1(0).
double mean_current_from_coeffs(const CharPolyCoeffs& a);

/// f = 1 + 2 rho_R^2 - 6 rho_I^2.
double current_f_factor(const ModelParams& p);

/// The same f written as a rational function of the parameters.
double current_f_factor_rational(const ModelParams& p);

/// <j> coth(A/2) f.
double current_variance(const ModelParams& p);

/// -[a0'' + 2 a1' lambda0' + 2 a2 lambda0'^2] / a1.
double current_variance_from_coeffs(const CharPolyCoeffs& a);

/// Eigenvalue of Gamma(z) with the largest real part (|z| <= 1).
///
/// Throws DomainError for |z| > 1 and ConvergenceError when the eigensolver
/// residual exceeds its tolerance.
double dominant_eigenvalue(const ModelParams& p, double z);

inline constexpr double kDefaultFdStep = 1e-4;

/// Central finite differences of lambda0 around z = 0: (first, second) derivative.
std::pair<double, double> scgf_derivatives_fd(const ModelParams& p, double h = kDefaultFdStep);

/// Bundles <j>, Var[j], F, Sigma and Q at one point.
CountingStatistics counting_statistics(const ModelParams& p);

}  // namespace qtur
