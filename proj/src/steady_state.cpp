#include "qtur/steady_state.hpp"

#include <Eigen/Dense>

#include "qtur/errors.hpp"

namespace qtur {

namespace {

// Common Lorentzian denominator coth^2 + 4 delta^2 + 8 Omega^2.
double lorentz_denominator(const ModelParams& p) {
  const double c = p.coth();
  return c * c + 4.0 * p.delta_gamma * p.delta_gamma + 8.0 * p.omega_gamma * p.omega_gamma;
}

}  // namespace

DensityMatrix analytic_steady_state(const ModelParams& p) {
  const double n = p.nbar;
  const double c = p.coth();
  const double W2 = p.omega_gamma * p.omega_gamma;
  const double d2 = p.delta_gamma * p.delta_gamma;
  const double denom = c * lorentz_denominator(p);
  const double base = c * c + 4.0 * d2;

  const double ee = (n * base + 4.0 * W2 * c) / denom;
  const double gg = ((n + 1.0) * base + 4.0 * W2 * c) / denom;
  const Complex eg = -2.0 * p.omega_gamma * Complex(2.0 * p.delta_gamma, -c) / denom;
  return {{ee, 0.0}, eg, std::conj(eg), {gg, 0.0}};
}

CoherenceParts coherence_parts(const ModelParams& p) {
  const double c = p.coth();
  const double D = lorentz_denominator(p);
  return {-4.0 * p.omega_gamma * p.delta_gamma / (c * D), 2.0 * p.omega_gamma / D};
}

DensityMatrix numeric_steady_state(const Generator& g) {
  const Eigen::Matrix4cd& m = g.matrix();

  const Eigen::Vector4d sv = Eigen::JacobiSVD<Eigen::Matrix4cd>(m).singularValues();
  // sorted descending; sv[3] ~ 0 for a stationary generator
  if (!(sv[2] > 1e-8 * sv[0])) {
    throw DegenerateNullSpaceError("generator null space is not one-dimensional (sigma_2/sigma_max = " +
                                   std::to_string(sv[2] / sv[0]) + ")");
  }

  Eigen::Matrix4cd bordered = m;
  bordered.row(kEE) << 1.0, 0.0, 0.0, 1.0;
  Eigen::Vector4cd rhs = Eigen::Vector4cd::Zero();
  rhs[kEE] = 1.0;

  const Eigen::Vector4cd v = bordered.fullPivLu().solve(rhs);
  return LiouvilleVector(v).to_density_matrix();
}

}  // namespace qtur
