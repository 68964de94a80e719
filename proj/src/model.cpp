#include "qtur/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qtur/errors.hpp"

namespace qtur {

namespace {

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(name) + " must be finite");
  }
}

}  // namespace

double bath_occupation(double A) {
  if (!(A >= kMinGap)) {
    throw DomainError("A must be >= " + std::to_string(kMinGap) + ", got " + std::to_string(A));
  }
  return 1.0 / std::expm1(A);
}

double coth_half(double A) { return 1.0 + 2.0 * bath_occupation(A); }

ModelParams make_params(double A, double omega_gamma, double delta_gamma) {
  require_finite(A, "A");
  require_finite(omega_gamma, "omega_gamma");
  require_finite(delta_gamma, "delta_gamma");
  if (omega_gamma < 0.0) {
    throw DomainError("omega_gamma must be >= 0, got " + std::to_string(omega_gamma));
  }
  ModelParams p;
  p.A = A;
  p.omega_gamma = omega_gamma;
  p.delta_gamma = delta_gamma;
  p.nbar = bath_occupation(A);
  return p;
}

LabFrameParams make_lab_params(const ModelParams& base, double omega0_gamma) {
  require_finite(omega0_gamma, "omega0_gamma");
  if (!(omega0_gamma > 0.0)) {
    throw DomainError("omega0_gamma must be > 0");
  }
  LabFrameParams lp;
  lp.base = base;
  lp.omega0_gamma = omega0_gamma;
  lp.omega_gamma_field = omega0_gamma + base.delta_gamma;
  if (!(lp.omega_gamma_field > 0.0)) {
    throw DomainError("field frequency omega0_gamma + delta_gamma must be > 0");
  }
  lp.rwa_warning = lp.omega_gamma_field < 10.0 * base.omega_gamma;
  return lp;
}

DensityMatrix DensityMatrix::diagonal(double p_excited) {
  return {{p_excited, 0.0}, {}, {}, {1.0 - p_excited, 0.0}};
}

DensityMatrix DensityMatrix::from_parts(double p_excited, Complex coherence) {
  return {{p_excited, 0.0}, coherence, std::conj(coherence), {1.0 - p_excited, 0.0}};
}

double DensityMatrix::positivity_margin() const {
  return rho_ee.real() * rho_gg.real() - std::norm(rho_eg);
}

double DensityMatrix::hermiticity_defect() const {
  return std::max({std::abs(rho_ge - std::conj(rho_eg)), std::abs(rho_ee.imag()),
                   std::abs(rho_gg.imag())});
}

double DensityMatrix::max_abs_diff(const DensityMatrix& o) const {
  return std::max({std::abs(rho_ee - o.rho_ee), std::abs(rho_eg - o.rho_eg),
                   std::abs(rho_ge - o.rho_ge), std::abs(rho_gg - o.rho_gg)});
}

bool DensityMatrix::is_physical(double tol, double positivity_tol) const {
  return std::abs(trace() - 1.0) <= tol && hermiticity_defect() <= tol &&
         positivity_margin() >= -positivity_tol;
}

LiouvilleVector DensityMatrix::to_liouville() const {
  Eigen::Vector4cd v;
  v << rho_ee, rho_eg, rho_ge, rho_gg;
  return LiouvilleVector(v);
}

Generator rwa_generator(const ModelParams& p) {
  const Complex i(0.0, 1.0);
  const double n = p.nbar;
  const double W = p.omega_gamma;
  const double d = p.delta_gamma;
  const double half_c = 0.5 * p.coth();

  Eigen::Matrix4cd m;
  // clang-format off
  m << -(n + 1.0), -i * W,              i * W,               n,
       -i * W,     i * d - half_c,      0.0,                 i * W,
        i * W,     0.0,                 -i * d - half_c,     -i * W,
        n + 1.0,   i * W,               -i * W,              -n;
  // clang-format on
  return Generator(m);
}

DensityMatrix lab_frame_rhs(const DensityMatrix& rho, double tau, const LabFrameParams& lp) {
  const Complex i(0.0, 1.0);
  const double n = lp.base.nbar;
  const double half_c = 0.5 * lp.base.coth();
  // Omega (e^{i w tau} + e^{-i w tau}) = 2 Omega cos(w tau)
  const double drive = 2.0 * lp.base.omega_gamma * std::cos(lp.omega_gamma_field * tau);
  const double w0 = lp.omega0_gamma;

  DensityMatrix d;
  d.rho_ee = -(n + 1.0) * rho.rho_ee - i * drive * rho.rho_eg + i * drive * rho.rho_ge + n * rho.rho_gg;
  d.rho_eg = -i * drive * rho.rho_ee - (i * w0 + half_c) * rho.rho_eg + i * drive * rho.rho_gg;
  d.rho_ge = i * drive * rho.rho_ee + (i * w0 - half_c) * rho.rho_ge - i * drive * rho.rho_gg;
  d.rho_gg = (n + 1.0) * rho.rho_ee + i * drive * rho.rho_eg - i * drive * rho.rho_ge - n * rho.rho_gg;
  return d;
}

DensityMatrix rotate_to_frame(const DensityMatrix& rho_lab, double tau, double omega_gamma_field) {
  const Complex phase = std::polar(1.0, omega_gamma_field * tau);
  return {rho_lab.rho_ee, rho_lab.rho_eg * phase, rho_lab.rho_ge * std::conj(phase), rho_lab.rho_gg};
}

DensityMatrix rotate_from_frame(const DensityMatrix& rho_rot, double tau, double omega_gamma_field) {
  return rotate_to_frame(rho_rot, tau, -omega_gamma_field);
}

}  // namespace qtur
