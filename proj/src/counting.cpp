#include "qtur/counting.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "qtur/errors.hpp"
#include "qtur/steady_state.hpp"

namespace qtur {

Generator tilted_generator(const ModelParams& p, double z) {
  if (!std::isfinite(z)) {
    throw DomainError("counting field z must be finite");
  }
  Eigen::Matrix4cd m = rwa_generator(p).matrix();
  m(kEE, kGG) *= std::exp(-z);  // absorption, n_mu = -1
  m(kGG, kEE) *= std::exp(z);   // emission, n_mu = +1
  return Generator(m);
}

std::array<double, 5> char_poly_at(const ModelParams& p, double z) {
  const double n = p.nbar;
  const double c = p.coth();
  const double W2 = p.omega_gamma * p.omega_gamma;
  const double d2 = p.delta_gamma * p.delta_gamma;

  std::array<double, 5> a{};
  a[4] = 1.0;
  a[3] = 2.0 * c;
  a[2] = 0.25 * (5.0 * c * c + 4.0 * d2 + 16.0 * W2);
  a[1] = 0.25 * (c * c * c + 4.0 * d2 * c + 16.0 * W2 * c -
                 8.0 * W2 * (std::exp(z) + n * std::exp(-z) + n * std::exp(z)));
  // The bracket e^z + n e^-z + 2n^2 e^-z + 3n e^z + 2n^2 e^z - (2n+1)^2
  // factors as c [(n+1)(e^z - 1) + n(e^-z - 1)].
  a[0] = -W2 * c * ((n + 1.0) * std::expm1(z) + n * std::expm1(-z));
  return a;
}

CharPolyCoeffs char_poly_coeffs(const ModelParams& p) {
  const auto at0 = char_poly_at(p, 0.0);
  const double c = p.coth();
  const double W2 = p.omega_gamma * p.omega_gamma;

  CharPolyCoeffs a;
  a.a4 = at0[4];
  a.a3 = at0[3];
  a.a2 = at0[2];
  a.a1 = at0[1];
  a.a1_prime = -2.0 * W2;
  a.a0 = at0[0];
  a.a0_prime = -W2 * c;
  a.a0_second = -W2 * c * c;
  return a;
}

double mean_current(const ModelParams& p) {
  const double c = p.coth();
  const double W2 = p.omega_gamma * p.omega_gamma;
  return 4.0 * W2 / (c * c + 4.0 * p.delta_gamma * p.delta_gamma + 8.0 * W2);
}

double mean_current_from_coeffs(const CharPolyCoeffs& a) { return -a.a0_prime / a.a1; }

double current_f_factor(const ModelParams& p) {
  const auto [rho_r, rho_i] = coherence_parts(p);
  return 1.0 + 2.0 * rho_r * rho_r - 6.0 * rho_i * rho_i;
}

double current_f_factor_rational(const ModelParams& p) {
  const double c2 = p.coth() * p.coth();
  const double W2 = p.omega_gamma * p.omega_gamma;
  const double d2 = p.delta_gamma * p.delta_gamma;
  const double D = c2 + 4.0 * d2 + 8.0 * W2;
  return 1.0 + (32.0 * d2 - 24.0 * c2) * W2 / (c2 * D * D);
}

double current_variance(const ModelParams& p) {
  return mean_current(p) * p.coth() * current_f_factor(p);
}

double current_variance_from_coeffs(const CharPolyCoeffs& a) {
  const double j = mean_current_from_coeffs(a);
  return -(a.a0_second + 2.0 * a.a1_prime * j + 2.0 * a.a2 * j * j) / a.a1;
}

namespace {

using ComplexL = std::complex<long double>;
using Matrix4cl = Eigen::Matrix<ComplexL, 4, 4>;
using Vector4cl = Eigen::Matrix<ComplexL, 4, 1>;

// Gamma(z) with the counting factors taken in long double.
Matrix4cl tilted_generator_ld(const ModelParams& p, double z) {
  const Eigen::Matrix4cd base = rwa_generator(p).matrix();
  Matrix4cl m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = ComplexL(base(r, c).real(), base(r, c).imag());
  m(kEE, kGG) *= std::exp(-static_cast<long double>(z));
  m(kGG, kEE) *= std::exp(static_cast<long double>(z));
  return m;
}

// Newton steps on (Gamma - lambda) v = 0 with v[k] = 1 fixed. Removes most of
// the double-precision eigensolver error, which the second finite difference
// would otherwise amplify by 1/h^2.
ComplexL polish_eigenpair(const Matrix4cl& m, Vector4cl v, ComplexL lambda) {
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  v /= v[k];
  for (int it = 0; it < 4; ++it) {
    Eigen::Matrix<ComplexL, 5, 5> J = Eigen::Matrix<ComplexL, 5, 5>::Zero();
    J.topLeftCorner<4, 4>() = m - lambda * Matrix4cl::Identity();
    J.block<4, 1>(0, 4) = -v;
    J(4, k) = 1.0L;
    Eigen::Matrix<ComplexL, 5, 1> rhs = Eigen::Matrix<ComplexL, 5, 1>::Zero();
    rhs.head<4>() = -(m * v - lambda * v);
    const Eigen::Matrix<ComplexL, 5, 1> step = J.fullPivLu().solve(rhs);
    v += step.head<4>();
    lambda += step[4];
    if (std::abs(step[4]) <= 1e-19L * std::max(1.0L, std::abs(lambda))) break;
  }
  return lambda;
}

}  // namespace

double dominant_eigenvalue(const ModelParams& p, double z) {
  if (!(std::abs(z) <= 1.0)) {
    throw DomainError("dominant_eigenvalue requires |z| <= 1, got z = " + std::to_string(z));
  }
  const Eigen::Matrix4cd m = tilted_generator(p, z).matrix();
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(m, /*computeEigenvectors=*/true);
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("eigensolver failed for Gamma(z)");
  }
  Eigen::Index k = 0;
  es.eigenvalues().real().maxCoeff(&k);
  const Complex lambda = es.eigenvalues()[k];
  const Eigen::Vector4cd v = es.eigenvectors().col(k);

  const double scale = std::max(1.0, m.norm());
  const double residual = (m * v - lambda * v).norm() / v.norm();
  if (residual > 1e-12 * scale) {
    throw ConvergenceError("eigensolver residual " + std::to_string(residual) + " exceeds tolerance");
  }
  const Vector4cl v_ld = v.cast<ComplexL>();
  const ComplexL refined = polish_eigenpair(tilted_generator_ld(p, z), v_ld, ComplexL(lambda.real(), lambda.imag()));
  return static_cast<double>(refined.real());
}

std::pair<double, double> scgf_derivatives_fd(const ModelParams& p, double h) {
  if (!(h >= 1e-6 && h <= 1e-2)) {
    throw DomainError("finite-difference step must lie in [1e-6, 1e-2]");
  }
  const double up = dominant_eigenvalue(p, h);
  const double mid = dominant_eigenvalue(p, 0.0);
  const double down = dominant_eigenvalue(p, -h);
  return {(up - down) / (2.0 * h), (up - 2.0 * mid + down) / (h * h)};
}

CountingStatistics counting_statistics(const ModelParams& p) {
  CountingStatistics s;
  const double c = p.coth();
  const double f = current_f_factor(p);
  s.mean_current = mean_current(p);
  s.fano = c * f;
  s.variance = s.mean_current * s.fano;
  s.entropy_rate = p.A * s.mean_current;
  s.uncertainty_product = p.A * s.fano;
  s.zero_current_limit = s.mean_current == 0.0;
  return s;
}

}  // namespace qtur
