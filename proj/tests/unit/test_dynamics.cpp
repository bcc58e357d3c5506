#include <cmath>

#include "doctest.h"
#include "enpp/errors.hpp"
#include "enpp/monitors.hpp"
#include "support.hpp"

using namespace enpp;
using enpp::testing::max_diff;
using enpp::testing::random_field;
using enpp::testing::random_primal;
using enpp::testing::random_velocity;

namespace {

ScalarField sin_x1(GridSpec grid) {
  return ScalarField::from_function(grid, [](double x1, double) { return std::sin(x1); });
}

ScalarField cos_x1(GridSpec grid) {
  return ScalarField::from_function(grid, [](double x1, double) { return std::cos(x1); });
}

}  // namespace

TEST_SUITE("enpp_dynamics") {
  TEST_CASE("field from charge") {
    const GridSpec grid(32);
    const ScalarField one = ScalarField::constant(grid, 1.0);
    const VectorField xi = xi_from_charge(one + sin_x1(grid), one);
    CHECK(max_diff(xi.c1, -1.0 * cos_x1(grid)) < 1e-14);
    CHECK(max_abs(xi.c2) < 1e-14);
    CHECK(max_diff(charge_from_xi(xi), sin_x1(grid)) < 1e-14);
    CHECK(max_abs(xi_from_charge(one, one)) == 0.0);
    CHECK_THROWS_AS(xi_from_charge(2.0 * one, one), NonNeutralField);

    const PrimalState s = random_primal(grid, 3);
    CHECK(max_diff(charge_from_xi(xi_from_charge(s.n, s.p)), s.n - s.p) < 1e-10);
  }

  TEST_CASE("formulation conversions") {
    const GridSpec grid(32);
    const ScalarField c = ScalarField::constant(grid, 0.8);
    const ReformState r = reform_from_primal(PrimalState{VectorField(grid), c, c, 0.0, 0.0});
    CHECK(max_diff(r.z, 2.0 * c) < 1e-15);
    CHECK(max_abs(r.xi) == 0.0);

    const PrimalState s = random_primal(grid, 4, 0.01);
    const PrimalState back = primal_from_reform(reform_from_primal(s));
    CHECK(max_diff(back.n, s.n) < 1e-10);
    CHECK(max_diff(back.p, s.p) < 1e-10);
    CHECK(max_diff(back.u, s.u) == 0.0);
    CHECK(back.nu == s.nu);

    const auto [a, b] = ab_from_reform(reform_from_primal(s));
    CHECK(max_diff(a, s.n) < 1e-12);
    CHECK(max_diff(b, s.p) < 1e-12);
  }

  TEST_CASE("state validation") {
    const GridSpec grid(32);
    PrimalState s = random_primal(grid, 5);
    CHECK_NOTHROW(validate(s));
    CHECK_NOTHROW(validate(reform_from_primal(s)));

    PrimalState compressible = s;
    compressible.u.c1 += sin_x1(grid);
    CHECK_THROWS_AS(validate(compressible), InvalidState);

    PrimalState negative = s;
    negative.n -= ScalarField::constant(grid, 2.0);
    negative.p -= ScalarField::constant(grid, 2.0);
    CHECK_THROWS_AS(validate(negative), InvalidState);

    PrimalState charged = s;
    charged.n += ScalarField::constant(grid, 0.1);
    CHECK_THROWS_AS(validate(charged), NonNeutralField);

    ReformState rotational = reform_from_primal(s);
    rotational.xi += random_velocity(grid, 6);
    CHECK_THROWS_AS(validate(rotational), InvalidState);
  }

  TEST_CASE("pure diffusion and Euler subsystems") {
    const GridSpec grid(32);
    const PrimalState s = random_primal(grid, 7);
    const PrimalState still{VectorField(grid), s.n, s.n, 0.0, 0.0};
    const PrimalRhs d = rhs_primal(still);
    CHECK(max_abs(d.du) < 1e-14);
    CHECK(max_diff(d.dn, laplacian(s.n)) < 1e-12);
    CHECK(max_diff(d.dp, laplacian(s.n)) < 1e-12);

    const double nu = 0.05;
    const PrimalState fluid{s.u, ScalarField(grid), ScalarField(grid), 0.0, nu};
    const PrimalRhs e = rhs_primal(fluid);
    const VectorField adv(dealias(pointwise_product(s.u.c1, derivative(s.u.c1, 1)) +
                                  pointwise_product(s.u.c2, derivative(s.u.c1, 2))),
                          dealias(pointwise_product(s.u.c1, derivative(s.u.c2, 1)) +
                                  pointwise_product(s.u.c2, derivative(s.u.c2, 2))));
    const VectorField expected =
        -1.0 * leray_project(adv) + nu * VectorField(laplacian(s.u.c1), laplacian(s.u.c2));
    CHECK(max_diff(e.du, expected) < 1e-12);
    CHECK(max_abs(e.dn) == 0.0);

    const ReformState heat = heat_flow_state(grid, 1.0);
    const ReformRhs h = rhs_reform(heat);
    CHECK(max_diff(h.dxi, -1.0 * heat.xi) < 1e-13);
    CHECK(max_abs(h.du) < 1e-14);
  }

  TEST_CASE("right-hand sides agree across formulations") {
    const GridSpec grid(32);
    const PrimalState s = random_primal(grid, 8, 0.02);
    const ReformState r = reform_from_primal(s);
    const PrimalRhs dp = rhs_primal(s);
    const ReformRhs dr = rhs_reform(r);
    CHECK(max_diff(dr.du, dp.du) < 1e-9);
    CHECK(max_diff(dr.dz, dp.dn + dp.dp) < 1e-9);
    CHECK(max_diff(dr.dxi, xi_from_charge(dp.dn, dp.dp)) < 1e-9);
    // Structure of every RHS evaluation.
    CHECK(max_abs(divergence(dr.du)) < 1e-12);
    CHECK(max_abs(dr.dxi - grad_part_project(dr.dxi)) < 1e-12);
  }

  TEST_CASE("coupling terms cancel in the energy") {
    const GridSpec grid(32);
    const ReformState r = reform_from_primal(random_primal(grid, 9));
    const ScalarField q = divergence(r.xi);
    const double a = inner(leray_project(pointwise_product(q, r.xi)), r.u);
    const double b = inner(-1.0 * grad_part_project(pointwise_product(q, r.u)), r.xi);
    CHECK(std::abs(a + b) < 1e-10);
  }

  TEST_CASE("charge densities") {
    const GridSpec grid(32);
    const ScalarField a = random_field(grid, 10, 3) + ScalarField::constant(grid, 2.0);
    const VectorField zero(grid);
    const auto [da, db] = rhs_ab(a, a, zero, zero);
    CHECK(max_diff(da, laplacian(a)) < 1e-12);
    CHECK(max_diff(db, laplacian(a)) < 1e-12);

    const ScalarField one = ScalarField::constant(grid, 1.0);
    const ReformState r = reform_from_primal(random_primal(grid, 11));
    const auto [ca, cb] = rhs_ab(one, one, zero, r.xi);
    CHECK(max_diff(ca, -1.0 * divergence(r.xi)) < 1e-12);
    CHECK(max_diff(cb, divergence(r.xi)) < 1e-12);

    const auto [a2, b2] = ab_from_reform(r);
    const auto [fa, fb] = rhs_ab(a2, b2, r.u, r.xi);
    CHECK(max_diff(fa - fb, divergence(rhs_reform(r).dxi)) < 1e-9);
  }

  TEST_CASE("potential recovery") {
    const GridSpec grid(32);
    const VectorField xi(-1.0 * cos_x1(grid), ScalarField(grid));
    const ReformState r{VectorField(grid), ScalarField::constant(grid, 2.0), xi, 0.0, 0.0};
    const ScalarField phi = recover_potential(r);
    CHECK(max_diff(phi, -1.0 * sin_x1(grid)) < 1e-14);
    CHECK(max_diff(laplacian(phi), sin_x1(grid)) < 1e-13);
    const ReformState zero{VectorField(grid), ScalarField(grid), VectorField(grid), 0.0, 0.0};
    CHECK(max_abs(recover_potential(zero)) == 0.0);
    const ReformState rand = reform_from_primal(random_primal(grid, 12));
    CHECK(max_diff(gradient(recover_potential(rand)), rand.xi) < 1e-10);
  }

  TEST_CASE("pressure recovery") {
    const GridSpec grid(32);
    const ReformState zero{VectorField(grid), ScalarField(grid), VectorField(grid), 0.0, 0.0};
    CHECK(max_abs(recover_pressure(zero)) == 0.0);
    const VectorField shear(
        ScalarField::from_function(grid, [](double, double x2) { return std::sin(x2); }),
        ScalarField(grid));
    const ReformState sh{shear, ScalarField(grid), VectorField(grid), 0.0, 0.0};
    CHECK(max_abs(recover_pressure(sh)) < 1e-14);

    // With the recovered pressure, the unprojected momentum RHS is divergence-free.
    const ReformState r = reform_from_primal(random_primal(grid, 13));
    const ScalarField q = divergence(r.xi);
    const VectorField adv(pointwise_product(r.u.c1, derivative(r.u.c1, 1)) +
                              pointwise_product(r.u.c2, derivative(r.u.c1, 2)),
                          pointwise_product(r.u.c1, derivative(r.u.c2, 1)) +
                              pointwise_product(r.u.c2, derivative(r.u.c2, 2)));
    const VectorField raw = pointwise_product(q, r.xi) - adv - gradient(recover_pressure(r));
    CHECK(max_abs(divergence(raw)) < 1e-10);
    CHECK(max_diff(pressure_gradient_term(r.u, false), -1.0 * grad_part_project(adv)) < 1e-12);
  }

  TEST_CASE("spectral component round trip") {
    const GridSpec grid(16);
    const PrimalState s = random_primal(grid, 14, 0.3);
    const auto v = to_components(s);
    CHECK(v.size() == kPrimalComponents);
    const PrimalState back = primal_from_components(v, 0.5, s.nu);
    CHECK(max_diff(back.n, s.n) < 1e-14);
    CHECK(back.t == 0.5);
    const auto w = to_components(reform_from_primal(s));
    CHECK(w.size() == kReformComponents);
  }
}
