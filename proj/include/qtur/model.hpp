#pragma once

// Driven two-level system weakly coupled to a bosonic bath.
//
// All quantities are dimensionless: time is tau = gamma * t and every
// frequency is measured in units of the spontaneous emission rate gamma.
// Liouville-space vectors use the fixed component order (ee, eg, ge, gg).

#include <complex>

#include <Eigen/Core>

namespace qtur {

using Complex = std::complex<double>;

/// Smallest admissible energy gap A = beta * hbar * omega0.
inline constexpr double kMinGap = 1e-8;

/// Liouville-space component indices.
enum LiouvilleIndex : int { kEE = 0, kEG = 1, kGE = 2, kGG = 3 };

/// Mean bath occupation 1 / (e^A - 1), evaluated without cancellation.
double bath_occupation(double A);

/// coth(A/2) = 1 + 2 / (e^A - 1), stable for small A.
double coth_half(double A);

struct ModelParams {
  double A = 1.0;            ///< energy gap beta*hbar*omega0
  double omega_gamma = 0.0;  ///< Rabi driving Omega / gamma
  double delta_gamma = 0.0;  ///< detuning (omega - omega0) / gamma
  double nbar = 0.0;         ///< derived: 1 / (e^A - 1)

  /// coth(A/2) == 2*nbar + 1.
  double coth() const { return 2.0 * nbar + 1.0; }
};

/// Validates the inputs and derives nbar. Throws DomainError.
ModelParams make_params(double A, double omega_gamma, double delta_gamma);

/// Parameters of the time-dependent lab-frame problem.
struct LabFrameParams {
  ModelParams base;
  double omega0_gamma = 0.0;       ///< resonance frequency omega0 / gamma
  double omega_gamma_field = 0.0;  ///< field frequency omega / gamma
  /// Set when omega / Omega < 10, i.e. outside the rotating-wave regime.
  bool rwa_warning = false;
};

/// Builds lab-frame parameters; the field frequency is omega0 + delta.
LabFrameParams make_lab_params(const ModelParams& base, double omega0_gamma);

class LiouvilleVector;

/// 2x2 reduced density matrix in the (e, g) basis.
struct DensityMatrix {
  Complex rho_ee{0.0, 0.0};
  Complex rho_eg{0.0, 0.0};
  Complex rho_ge{0.0, 0.0};
  Complex rho_gg{1.0, 0.0};

  static DensityMatrix ground() { return {}; }
  static DensityMatrix excited() { return {{1.0, 0.0}, {}, {}, {0.0, 0.0}}; }
  /// Diagonal state with the given excited population.
  static DensityMatrix diagonal(double p_excited);
  /// Hermitian state from populations and the eg coherence.
  static DensityMatrix from_parts(double p_excited, Complex coherence);

  Complex trace() const { return rho_ee + rho_gg; }
  /// Re(rho_ee) Re(rho_gg) - |rho_eg|^2; non-negative for a physical state.
  double positivity_margin() const;
  double hermiticity_defect() const;
  double max_abs_diff(const DensityMatrix& other) const;

  /// True when trace, Hermiticity and positivity hold within the tolerances.
  bool is_physical(double tol = 1e-10, double positivity_tol = 1e-10) const;

  LiouvilleVector to_liouville() const;
};

/// Length-4 vector (ee, eg, ge, gg).
class LiouvilleVector {
 public:
  LiouvilleVector() : v_(Eigen::Vector4cd::Zero()) {}
  explicit LiouvilleVector(const Eigen::Vector4cd& v) : v_(v) {}

  const Eigen::Vector4cd& vector() const { return v_; }
  Eigen::Vector4cd& vector() { return v_; }
  Complex operator[](int i) const { return v_[i]; }

  DensityMatrix to_density_matrix() const { return {v_[kEE], v_[kEG], v_[kGE], v_[kGG]}; }

 private:
  Eigen::Vector4cd v_;
};

/// 4x4 superoperator acting on LiouvilleVector.
class Generator {
 public:
  Generator() : m_(Eigen::Matrix4cd::Zero()) {}
  explicit Generator(const Eigen::Matrix4cd& m) : m_(m) {}

  const Eigen::Matrix4cd& matrix() const { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  LiouvilleVector apply(const LiouvilleVector& v) const { return LiouvilleVector(m_ * v.vector()); }

 private:
  Eigen::Matrix4cd m_;
};

/// Rotating-wave Liouvillian; identical to the untilted counting generator.
Generator rwa_generator(const ModelParams& p);

/// d rho / d tau of the full lab-frame equations (no rotating-wave approximation).
DensityMatrix lab_frame_rhs(const DensityMatrix& rho, double tau, const LabFrameParams& lp);

/// Lab frame -> frame rotating at the field frequency: rho_eg picks up e^{+i w tau}.
DensityMatrix rotate_to_frame(const DensityMatrix& rho_lab, double tau, double omega_gamma_field);

/// Inverse of rotate_to_frame.
DensityMatrix rotate_from_frame(const DensityMatrix& rho_rot, double tau, double omega_gamma_field);

}  // namespace qtur
