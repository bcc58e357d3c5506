#include <cmath>

#include "doctest.h"
#include "enpp/integrator.hpp"
#include "enpp/monitors.hpp"
#include "enpp/presets.hpp"
#include "support.hpp"

using namespace enpp;
using enpp::testing::random_field;
using enpp::testing::random_primal;
using enpp::testing::random_velocity;

namespace {

std::vector<DiagnosticsRecord> run(const ReformState& r, double dt, double t_end, int every,
                                   bool check_positivity = true) {
  StepperConfig cfg;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.check_positivity = check_positivity;
  SimulationSchedule sched;
  sched.diagnostics_every = every;
  return simulate(r, cfg, sched).diagnostics;
}

ReformState still_charges(GridSpec grid, const ScalarField& a, const ScalarField& b) {
  return reform_from_primal(PrimalState{VectorField(grid), a, b, 0.0, 0.0});
}

}  // namespace

TEST_SUITE("monitors") {
  TEST_CASE("CSV columns") {
    CHECK(diagnostics_columns().size() == 17);
    CHECK(diagnostics_columns().front() == "t");
    CHECK(diagnostics_columns().back() == "xi_inf");
    DiagnosticsRecord r;
    r.t = 1.5;
    r.xi_inf = 2.5;
    const auto v = csv_values(r);
    CHECK(v.size() == 17);
    CHECK(v.front() == 1.5);
    CHECK(v.back() == 2.5);
  }

  TEST_CASE("zero state has zero norms") {
    const GridSpec grid(32);
    const ReformState zero{VectorField(grid), ScalarField(grid), VectorField(grid), 0.0, 0.0};
    const DiagnosticsRecord r = compute_record(zero, MonitorContext(grid));
    CHECK(r.energy == 0.0);
    CHECK(r.h_u_s1 == 0.0);
    CHECK(r.h_z_s2 == 0.0);
    CHECK(r.h_xi_s2p1 == 0.0);
    CHECK(r.besov_u_1inf == 0.0);
    CHECK(r.xi_inf == 0.0);
    CHECK(positivity_check(zero, 1e-10).pass);
  }

  TEST_CASE("single-mode velocity has a one-block Besov norm") {
    const GridSpec grid(64);
    const double A = 0.3;
    // |k| = 5 lies in block 2 only.
    const VectorField u(
        ScalarField::from_function(grid, [&](double, double x2) { return A * std::sin(5 * x2); }),
        ScalarField(grid));
    const ReformState r{u, ScalarField(grid), VectorField(grid), 0.0, 0.0};
    const RegularityNorms n = regularity_track(r, DyadicFamily(grid), 2.6, 1.3);
    CHECK(n.besov_u_1inf == doctest::Approx(4.0 * A).epsilon(1e-13));
    CHECK(n.finite());
  }

  TEST_CASE("heat flow energy decays like e^{-2t}") {
    const GridSpec grid(32);
    const auto series = run(heat_flow_state(grid, 1e-3), 0.01, 1.0, 5, false);
    const double e0 = series.front().energy;
    for (const auto& r : series) {
      CHECK(r.energy == doctest::Approx(e0 * std::exp(-2.0 * r.t)).epsilon(1e-9));
    }
    CHECK(energy_law(series).identity_ok);
  }

  TEST_CASE("pure Euler conserves energy") {
    const GridSpec grid(32);
    const VectorField u = random_velocity(grid, 2, 3);
    const ReformState r{(0.5 / max_abs(u)) * u, ScalarField(grid), VectorField(grid), 0.0, 0.0};
    const auto series = run(r, 0.005, 0.5, 5);
    const EnergyLawReport rep = energy_law(series);
    CHECK(rep.ok());
    CHECK(std::abs(series.back().energy - series.front().energy) < 1e-10 * series.front().energy);
  }

  TEST_CASE("coupled run obeys the energy and Lp laws") {
    const GridSpec grid(32);
    const ReformState r = reform_from_primal(make_preset("gaussian_blobs", grid));
    const auto series = run(r, 0.25 / 32, 0.5, 4);
    const EnergyLawReport e = energy_law(series);
    CHECK(e.identity_ok);
    CHECK(e.monotone_ok);
    CHECK(e.z_nonnegative);
    CHECK(lp_monotonicity(series).ok());
    CHECK(positivity_check(series, 1e-10).pass);
    for (const auto& rec : series) CHECK(rec.vort_res < 1e-9);
  }

  TEST_CASE("energy law flags a synthetic violation") {
    std::vector<DiagnosticsRecord> series(3);
    for (int k = 0; k < 3; ++k) {
      series[k].t = 0.1 * k;
      series[k].energy = 1.0 + 0.1 * k;  // growing with no dissipation
    }
    const EnergyLawReport rep = energy_law(series);
    CHECK_FALSE(rep.identity_ok);
    CHECK_FALSE(rep.monotone_ok);
    CHECK_FALSE(rep.ok());
  }

  TEST_CASE("Lp norms under diffusion") {
    const GridSpec grid(32);
    const ScalarField one = ScalarField::constant(grid, 1.0);
    const auto flat = run(still_charges(grid, one, one), 0.01, 0.2, 5);
    for (const auto& r : flat) {
      CHECK(r.pow2_ab == doctest::Approx(flat.front().pow2_ab).epsilon(1e-14));
      CHECK(r.pow4_ab == doctest::Approx(flat.front().pow4_ab).epsilon(1e-14));
    }
    CHECK(lp_monotonicity(flat).ok());

    const ScalarField a = one + 0.3 / max_abs(random_field(grid, 4, 3)) * random_field(grid, 4, 3);
    const auto decaying = run(still_charges(grid, a, a), 0.01, 0.2, 5);
    for (std::size_t k = 1; k < decaying.size(); ++k) {
      CHECK(decaying[k].pow2_ab < decaying[k - 1].pow2_ab);
    }
    CHECK(lp_monotonicity(decaying).ok());

    std::vector<DiagnosticsRecord> rising = {decaying.back(), decaying.front()};
    CHECK_FALSE(lp_monotonicity(rising).p2_ok);
  }

  TEST_CASE("positivity check") {
    const GridSpec grid(32);
    const ReformState ok = reform_from_primal(make_preset("gaussian_blobs", grid));
    CHECK(positivity_check(ok, 1e-10).pass);
    const auto z = ScalarField::from_function(grid, [](double x1, double) {
      return 0.5 + std::cos(x1);
    });
    const ReformState bad{VectorField(grid), z, VectorField(grid), 0.0, 0.0};
    const PositivityResult res = positivity_check(bad, 1e-10);
    CHECK_FALSE(res.pass);
    CHECK(res.min_a == doctest::Approx(-0.25).epsilon(1e-12));
  }

  TEST_CASE("vorticity identity") {
    const GridSpec grid(32);
    const ReformState euler{random_velocity(grid, 7), ScalarField(grid), VectorField(grid), 0.0,
                            0.0};
    CHECK(vorticity_consistency(euler, true) < 1e-10);
    const ReformState r = reform_from_primal(random_primal(grid, 8));
    const ReformState still{VectorField(grid), r.z, r.xi, 0.0, 0.0};
    CHECK(vorticity_consistency(still, true) < 1e-10);
    CHECK(vorticity_consistency(r, true) < 1e-9);
    ReformState viscous = r;
    viscous.nu = 0.1;
    CHECK(vorticity_consistency(viscous, true) < 1e-9);
  }

  TEST_CASE("max norms over a series") {
    std::vector<DiagnosticsRecord> series(2);
    series[0].h_u_s1 = 1.0;
    series[1].h_u_s1 = 3.0;
    series[1].xi_inf = 2.0;
    const RegularityNorms m = max_norms(series);
    CHECK(m.h_u_s1 == 3.0);
    CHECK(m.xi_inf == 2.0);
  }
}
