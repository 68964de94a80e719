#include "oracles.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace qtur::oracle {

std::array<Complex, 5> characteristic_polynomial(const Eigen::Matrix4cd& m) {
  // M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k
  std::array<Complex, 5> c{};
  c[4] = 1.0;
  Eigen::Matrix4cd mk = Eigen::Matrix4cd::Zero();
  for (int k = 1; k <= 4; ++k) {
    mk = m * mk + c[5 - k] * Eigen::Matrix4cd::Identity();
    c[4 - k] = -(m * mk).trace() / static_cast<double>(k);
  }
  return c;
}

DensityMatrix stationary_by_expm(const Generator& g) {
  Eigen::Vector4cd v;
  v << 0.0, 0.0, 0.0, 1.0;
  const Eigen::Matrix4cd step = (g.matrix() * 10.0).exp();
  for (int k = 0; k < 200; ++k) {
    const Eigen::Vector4cd next = step * v;
    const double change = (next - v).norm();
    v = next;
    if (change < 1e-15) break;
  }
  return LiouvilleVector(v).to_density_matrix();
}

long double bath_occupation_series(long double A) {
  // Partial fractions of coth: 1/(e^A - 1) = 1/A - 1/2 + 2A sum_k 1/(A^2 + 4 pi^2 k^2).
  // The tail beyond K is ~ 2A / (4 pi^2 K), summed in closed form.
  const long double two_pi = 6.283185307179586476925286766559L;
  const long K = 2000000;
  long double sum = 0.0L;
  for (long k = K; k >= 1; --k) {
    const long double w = two_pi * static_cast<long double>(k);
    sum += 1.0L / (A * A + w * w);
  }
  const long double tail = 1.0L / (two_pi * two_pi * (static_cast<long double>(K) + 0.5L));
  return 1.0L / A - 0.5L + 2.0L * A * (sum + tail);
}

std::array<Complex, 4> expm2_reference(const std::array<Complex, 4>& m, double s) {
  Eigen::Matrix2cd a;
  a << m[0], m[1], m[2], m[3];
  const Eigen::Matrix2cd e = (a * s).exp();
  return {e(0, 0), e(0, 1), e(1, 0), e(1, 1)};
}

ParamSampler::ParamSampler(std::uint64_t seed) : engine_(seed) {}

ModelParams ParamSampler::next() {
  std::uniform_real_distribution<double> A(0.1, 12.0);
  std::uniform_real_distribution<double> W(0.0, 5.0);
  std::uniform_real_distribution<double> d(-5.0, 5.0);
  const double a = A(engine_);
  const double w = W(engine_);
  const double dd = d(engine_);
  return make_params(a, w, dd);
}

}  // namespace qtur::oracle
