#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "qtur/dynamics.hpp"
#include "qtur/errors.hpp"
#include "qtur/steady_state.hpp"

using namespace qtur;
using Catch::Approx;

namespace {

const ModelParams kRes = make_params(std::log(3.0), 0.5, 0.0);

DensityMatrix exact_rwa(const DensityMatrix& rho0, const ModelParams& p, double tau) {
  const Eigen::Vector4cd v = (rwa_generator(p).matrix() * tau).exp() * rho0.to_liouville().vector();
  return LiouvilleVector(v).to_density_matrix();
}

}  // namespace

TEST_CASE("relaxation to the steady state from the ground state") {
  const Trajectory tr = propagate_rwa(DensityMatrix::ground(), kRes, 50.0, 0.01, 100);
  const DensityMatrix& last = tr.states.back();
  CHECK(tr.times.back() == 50.0);
  CHECK(std::abs(last.rho_ee - 1.0 / 3.0) < 1e-6);
  CHECK(std::abs(last.rho_eg - Complex(0.0, 1.0 / 6.0)) < 1e-6);
}

TEST_CASE("steady state is a fixed point") {
  const ModelParams p = make_params(2.3, 1.1, -0.7);
  const DensityMatrix ss = analytic_steady_state(p);
  const Trajectory tr = propagate_rwa(ss, p, 20.0, 0.5 * rwa_max_step(p), 10);
  for (const auto& s : tr.states) CHECK(s.max_abs_diff(ss) < 1e-9);
}

TEST_CASE("undriven excited state decays monotonically") {
  const ModelParams p = make_params(1.0, 0.0, 0.0);
  const Trajectory tr = propagate_rwa(DensityMatrix::excited(), p, 30.0, 0.02);
  const double target = p.nbar / (2 * p.nbar + 1);
  for (std::size_t k = 1; k < tr.states.size(); ++k) {
    const double prev = tr.states[k - 1].rho_ee.real();
    const double now = tr.states[k].rho_ee.real();
    CHECK(now <= prev);
    if (prev - target > 1e-10) CHECK(now < prev);
    CHECK(now >= target - 1e-15);
  }
  CHECK(tr.states.back().rho_ee.real() == Approx(target).margin(1e-9));
}

TEST_CASE("RK4 is fourth order") {
  const ModelParams p = make_params(0.9, 1.3, 0.8);
  const double tau = 3.0;
  const DensityMatrix exact = exact_rwa(DensityMatrix::ground(), p, tau);
  const double dt = rwa_max_step(p);
  const double e1 = propagate_rwa(DensityMatrix::ground(), p, tau, dt).states.back().max_abs_diff(exact);
  const double e2 = propagate_rwa(DensityMatrix::ground(), p, tau, dt / 2).states.back().max_abs_diff(exact);
  CHECK(e1 / e2 == Approx(16.0).margin(1.5));
}

TEST_CASE("snapshots stay physical") {
  const ModelParams p = make_params(0.3, 4.0, 2.0);
  const Trajectory tr = propagate_rwa(DensityMatrix::excited(), p, 10.0, rwa_max_step(p));
  for (std::size_t k = 0; k < tr.states.size(); ++k) {
    CHECK(tr.states[k].positivity_margin() >= -1e-8);
    CHECK(std::abs(tr.states[k].trace() - 1.0) < 1e-10);
    if (k > 0) CHECK(tr.times[k] > tr.times[k - 1]);
  }
}

TEST_CASE("last step lands on tau_end and stride keeps the final state") {
  const Trajectory tr = propagate_rwa(DensityMatrix::ground(), kRes, 1.05, 0.02, 7);
  CHECK(tr.times.back() == 1.05);
  CHECK(tr.times.size() == tr.states.size());
  CHECK(tr.states.back().max_abs_diff(exact_rwa(DensityMatrix::ground(), kRes, 1.05)) < 1e-8);
}

TEST_CASE("lab frame preserves trace") {
  const LabFrameParams lp = make_lab_params(kRes, 50.0);
  const Trajectory tr = propagate_lab(DensityMatrix::ground(), lp, 5.0, lab_max_step(lp), 50);
  for (const auto& s : tr.states) {
    CHECK(std::abs(s.trace() - 1.0) < 1e-9);
    CHECK(s.hermiticity_defect() < 1e-12);
  }
}

TEST_CASE("undriven lab frame populations match rotating frame") {
  const ModelParams p = make_params(0.8, 0.0, 0.0);
  const LabFrameParams lp = make_lab_params(p, 20.0);
  const double dt = lab_max_step(lp);
  const Trajectory lab = propagate_lab(DensityMatrix::excited(), lp, 4.0, dt, 100);
  const Trajectory rwa = propagate_rwa(DensityMatrix::excited(), p, 4.0, dt, 100);
  REQUIRE(lab.states.size() == rwa.states.size());
  for (std::size_t k = 0; k < lab.states.size(); ++k) {
    CHECK(std::abs(lab.states[k].rho_ee - rwa.states[k].rho_ee) < 1e-13);
  }
}

TEST_CASE("cycle averaged lab state approaches the rotating-wave steady state") {
  const ModelParams p = make_params(std::log(3.0), 0.5, 0.0);
  const DensityMatrix ss = analytic_steady_state(p);
  const LabFrameParams lp = make_lab_params(p, 100.0 * p.omega_gamma);
  const DensityMatrix avg = cycle_averaged_state(ss, lp, 20.0, 20, lab_max_step(lp));
  CHECK(std::abs(avg.rho_ee - ss.rho_ee) < 1e-4);
  CHECK(std::abs(avg.rho_eg - ss.rho_eg) < 1e-2);
}

TEST_CASE("step size rules") {
  CHECK_THROWS_AS(propagate_rwa(DensityMatrix::ground(), kRes, 1.0, 1.01 * rwa_max_step(kRes)), StepSizeError);
  CHECK_THROWS_AS(propagate_rwa(DensityMatrix::ground(), kRes, 1.0, 0.0), StepSizeError);
  const LabFrameParams lp = make_lab_params(kRes, 100.0);
  CHECK_THROWS_AS(propagate_lab(DensityMatrix::ground(), lp, 1.0, 1e-3), StepSizeError);
  CHECK(rwa_max_step(kRes) == Approx(0.025));
}

TEST_CASE("von Neumann entropy") {
  CHECK(von_neumann_entropy(DensityMatrix::ground()) == 0.0);
  CHECK(von_neumann_entropy(DensityMatrix::diagonal(0.5)) == Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(von_neumann_entropy(DensityMatrix::from_parts(0.5, Complex(0.0, 0.5))) == Approx(0.0).margin(1e-12));
  CHECK_THROWS_AS(von_neumann_entropy(DensityMatrix::from_parts(0.5, Complex(0.6, 0.0))), DomainError);
}

TEST_CASE("entropy is stationary at the steady state") {
  const ModelParams p = make_params(1.4, 0.9, 0.5);
  const DensityMatrix ss = analytic_steady_state(p);
  const double dt = 0.01;
  const Trajectory tr = propagate_rwa(ss, p, 2 * dt, dt);
  const double dS = (von_neumann_entropy(tr.states[2]) - von_neumann_entropy(tr.states[0])) / (2 * dt);
  CHECK(std::abs(dS) < 1e-8);
  // away from the steady state the entropy moves
  const Trajectory tg = propagate_rwa(DensityMatrix::diagonal(0.1), p, 2 * dt, dt);
  CHECK(std::abs(von_neumann_entropy(tg.states[2]) - von_neumann_entropy(tg.states[0])) > 1e-4);
}
