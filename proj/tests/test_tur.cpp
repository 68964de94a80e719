#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qtur/errors.hpp"
#include "qtur/tur.hpp"

using namespace qtur;
using Catch::Approx;

TEST_CASE("entropy production at ln 3") {
  const ModelParams p = make_params(std::log(3.0), 0.5, 0.0);
  CHECK(entropy_production_rate(p) == Approx(std::log(3.0) / 6.0).epsilon(1e-15));
  CHECK(entropy_production_rate(make_params(2.0, 0.0, 1.0)) == 0.0);
}

TEST_CASE("entropy production trace form and sign") {
  const auto pts = sweep(SweepSpec::random_scatter(2000, 3));
  for (const auto& t : pts) {
    const double s = entropy_production_rate(t.params);
    CHECK(s >= 0.0);
    CHECK(std::abs(s - entropy_production_rate_trace(t.params)) < 1e-12);
    CHECK(std::abs(t.stats.entropy_rate - t.params.A * t.stats.mean_current) < 1e-12);
  }
}

TEST_CASE("uncertainty product examples") {
  CHECK(uncertainty_product(make_params(std::log(3.0), 0.5, 0.0)).value ==
        Approx(5.0 / 3.0 * std::log(3.0)).epsilon(1e-14));
  CHECK(uncertainty_product(make_params(3.61, 0.37, 0.0)).value == Approx(1.246).margin(5e-4));
  CHECK(uncertainty_product(make_params(std::log(3.0), 0.5, 1.0)).value ==
        Approx(2.0 * std::log(3.0) * 0.96).epsilon(1e-14));
}

TEST_CASE("uncertainty product forms agree") {
  for (const auto& t : sweep(SweepSpec::random_scatter(1000, 8))) {
    if (t.stats.mean_current == 0.0) continue;
    const double q = uncertainty_product(t.params).value;
    CHECK(std::abs(q - uncertainty_product_ratio(t.params)) <= 1e-12 * q);
    CHECK(std::abs(q - t.params.A * t.stats.fano) <= 1e-12 * q);
  }
}

TEST_CASE("zero current limit") {
  const ModelParams p = make_params(2.0, 0.0, 0.5);
  const UncertaintyProduct q = uncertainty_product(p);
  CHECK(q.zero_current_limit);
  CHECK(q.value == Approx(2.0 * p.coth()));
  CHECK_THROWS_AS(uncertainty_product_ratio(p), ZeroCurrentError);
}

TEST_CASE("fano bounds") {
  const FanoBounds b = fano_bounds(std::log(3.0));
  CHECK(b.phi_o == Approx(2.0 / std::log(3.0)));
  CHECK(b.phi_p == Approx(1.0).epsilon(1e-15));
  CHECK(b.envelope == Approx(2.5).epsilon(1e-15));
  const FanoBounds ten = fano_bounds(10.0);
  CHECK(ten.phi_o == Approx(0.2));
  CHECK(ten.phi_p == Approx(9.08e-5).epsilon(1e-3));
  const FanoBounds small = fano_bounds(1e-6);
  CHECK(small.phi_p / small.phi_o == Approx(1.0).epsilon(1e-6));
  for (double A : {1e-4, 0.1, 1.0, 5.0, 12.0}) CHECK(fano_bounds(A).phi_o > fano_bounds(A).phi_p);
  CHECK_THROWS_AS(fano_bounds(0.0), DomainError);
}

TEST_CASE("resonant minimum") {
  const MinimizeResult r = minimize_q_resonant();
  CHECK(r.A_star == Approx(3.61).margin(0.05));
  CHECK(r.omega_star == Approx(0.37).margin(0.02));
  CHECK(r.q_min == Approx(1.25).margin(0.01));
  CHECK(r.q_min < 2.0);
  CHECK_FALSE(r.on_boundary);
  const MinimizeResult again = minimize_q_resonant();
  CHECK(again.A_star == r.A_star);
  CHECK(again.omega_star == r.omega_star);
  CHECK(again.q_min == r.q_min);
  const MinimizeResult serial = minimize_q_resonant_serial();
  CHECK(serial.q_min == r.q_min);
  CHECK(serial.evaluations == r.evaluations);
}

TEST_CASE("restricted domain finds the same minimum") {
  MinimizeControl ctl;
  ctl.A_lo = 3.5;
  ctl.A_hi = 3.7;
  ctl.omega_lo = 0.35;
  ctl.omega_hi = 0.40;
  ctl.grid_A = 11;
  ctl.grid_omega = 11;
  ctl.tolerance = 1e-6;
  const MinimizeResult r = minimize_q_resonant(ctl);
  const MinimizeResult full = minimize_q_resonant();
  CHECK(r.q_min == Approx(full.q_min).margin(1e-7));
  CHECK(r.A_star == Approx(full.A_star).margin(2e-3));
  CHECK(r.omega_star == Approx(full.omega_star).margin(1e-3));
  CHECK_FALSE(r.on_boundary);
}

TEST_CASE("boundary minimum is flagged") {
  MinimizeControl ctl;
  ctl.A_lo = 5.0;
  ctl.A_hi = 8.0;
  ctl.grid_A = 16;
  ctl.grid_omega = 16;
  const MinimizeResult r = minimize_q_resonant(ctl);
  CHECK(r.on_boundary);
  CHECK(r.A_star == Approx(5.0));
}

TEST_CASE("minimize control validation") {
  MinimizeControl ctl;
  ctl.A_lo = 4.0;
  ctl.A_hi = 3.0;
  CHECK_THROWS_AS(minimize_q_resonant(ctl), DomainError);
  MinimizeControl tol;
  tol.tolerance = 0.0;
  CHECK_THROWS_AS(minimize_q_resonant(tol), DomainError);
}

TEST_CASE("random scatter respects the Fano sandwich") {
  const auto pts = sweep(SweepSpec::random_scatter(10000, 42));
  REQUIRE(pts.size() == 10000);
  std::size_t below_phi_o = 0;
  for (const auto& t : pts) {
    CHECK(t.params.A >= 0.1);
    CHECK(t.params.A <= 12.0);
    CHECK(t.stats.fano >= t.bounds.phi_p - 1e-9);
    CHECK(t.stats.fano <= t.bounds.envelope + 1e-9);
    if (t.params.A >= 1.0 && t.params.A <= 6.0 && t.stats.fano < t.bounds.phi_o) ++below_phi_o;
  }
  CHECK(below_phi_o >= 1);
}

TEST_CASE("points with Q below two satisfy the detuning condition") {
  std::size_t below_two = 0;
  for (const auto& t : sweep(SweepSpec::random_scatter(10000, 1))) {
    if (t.stats.uncertainty_product < 2.0) {
      ++below_two;
      CHECK(std::abs(t.params.delta_gamma) < std::sqrt(3.0) / 2.0 * t.params.coth());
    }
  }
  CHECK(below_two > 0);
}

TEST_CASE("detuning slice is even and minimal on resonance") {
  SweepSpec spec;
  spec.A = {3.8, 3.8, 1};
  spec.omega_gamma = {0.37, 0.37, 1};
  spec.delta_gamma = {-4.0, 4.0, 81};
  const auto pts = sweep(spec);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto& mirror = pts[pts.size() - 1 - k];
    CHECK(std::abs(pts[k].stats.uncertainty_product - mirror.stats.uncertainty_product) < 1e-12);
    CHECK(pts[k].stats.uncertainty_product >= pts[40].stats.uncertainty_product);
  }
  CHECK(pts[40].params.delta_gamma == 0.0);
}

TEST_CASE("grid ordering and parallel determinism") {
  SweepSpec spec;
  spec.A = {0.5, 10.0, 7};
  spec.omega_gamma = {0.01, 3.0, 5};
  spec.delta_gamma = {-2.0, 2.0, 3};
  const auto serial = sweep_serial(spec);
  REQUIRE(serial.size() == 105);
  CHECK(serial[1].params.delta_gamma == 0.0);
  CHECK(serial[3].params.omega_gamma == Approx(0.7575));
  CHECK(serial[15].params.A == Approx(0.5 + 9.5 / 6.0));
  for (int threads : {1, 3}) {
    const auto par = sweep(spec, threads);
    for (std::size_t i = 0; i < par.size(); ++i) {
      CHECK(par[i].stats.uncertainty_product == serial[i].stats.uncertainty_product);
      CHECK(par[i].params.A == serial[i].params.A);
    }
  }
  const auto r1 = sweep(SweepSpec::random_scatter(500, 7), 1);
  const auto r2 = sweep(SweepSpec::random_scatter(500, 7), 4);
  for (std::size_t i = 0; i < r1.size(); ++i) CHECK(r1[i].params.delta_gamma == r2[i].params.delta_gamma);
}

TEST_CASE("sweep validation") {
  SweepSpec bad;
  bad.A = {2.0, 1.0, 3};
  CHECK_THROWS_AS(sweep(bad), DomainError);
  SweepSpec neg;
  neg.omega_gamma = {-1.0, 1.0, 3};
  CHECK_THROWS_AS(sweep(neg), DomainError);
  SweepSpec empty = SweepSpec::random_scatter(0, 1);
  CHECK_THROWS_AS(sweep(empty), DomainError);
}
