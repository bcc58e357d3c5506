#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "enpp/errors.hpp"
#include "support.hpp"

using namespace enpp;
using enpp::testing::max_diff;
using enpp::testing::random_field;
using enpp::testing::random_velocity;

namespace {

const double kPi = std::numbers::pi;

// Direct O(N^4) sum coeff(k) = N^-2 sum_x f(x) e^{-i k.x}.
Complex direct_coeff(const ScalarField& f, int k1, int k2) {
  const int n = f.n_points();
  const double h = f.grid().spacing();
  Complex sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      sum += f(i, j) * std::polar(1.0, -(k1 * i + k2 * j) * h);
    }
  }
  return sum / static_cast<double>(n * n);
}

}  // namespace

TEST_SUITE("spectral_core") {
  TEST_CASE("grid rejects odd or tiny sizes") {
    CHECK_THROWS_AS(GridSpec(7), InvalidGrid);
    CHECK_THROWS_AS(GridSpec(6), InvalidGrid);
    CHECK_THROWS_AS(GridSpec(16, 0.0), InvalidGrid);
    CHECK(wavenumber(5, 8) == -3);
    CHECK(wavenumber(4, 8) == 4);
    CHECK(derivative_wavenumber(4, 8) == 0);
  }

  TEST_CASE("to_spectrum matches a direct discrete Fourier sum at N=8") {
    const GridSpec grid(8);
    Rng rng(11);
    ScalarField f(grid);
    for (double& v : f.values()) v = rng.uniform(-1.0, 1.0);
    const Spectrum s = to_spectrum(f);
    double worst = 0.0;
    for (int k1 = -3; k1 <= 4; ++k1) {
      for (int k2 = 0; k2 <= 4; ++k2) {
        worst = std::max(worst, std::abs(s.coeff(k1, k2) - direct_coeff(f, k1, k2)));
      }
    }
    CHECK(worst < 1e-14);
    CHECK(max_diff(from_spectrum(s), f) < 1e-13);
  }

  TEST_CASE("single-mode and constant transforms") {
    const GridSpec grid(16);
    const Spectrum c = to_spectrum(ScalarField::constant(grid, 2.5));
    CHECK(std::abs(c.coeff(0, 0) - 2.5) < 1e-15);
    CHECK(std::abs(c.coeff(1, 0)) < 1e-15);

    const auto cosx = ScalarField::from_function(grid, [](double x1, double) { return std::cos(x1); });
    const Spectrum s = to_spectrum(cosx);
    CHECK(std::abs(s.coeff(1, 0) - 0.5) < 1e-15);
    CHECK(std::abs(s.coeff(-1, 0) - 0.5) < 1e-15);
    CHECK(std::abs(s.coeff(0, 1)) < 1e-15);

    Spectrum t(grid);
    t.set_coeff(0, 0, 3.0);
    CHECK(max_diff(from_spectrum(t), ScalarField::constant(grid, 3.0)) < 1e-15);
    Spectrum u(grid);
    u.set_coeff(1, 0, 0.5);
    u.set_coeff(-1, 0, 0.5);
    CHECK(max_diff(from_spectrum(u), cosx) < 1e-14);
  }

  TEST_CASE("asymmetric spectrum is rejected") {
    const GridSpec grid(16);
    Spectrum s(grid);
    s.at(1, 0) = Complex(1.0, 0.0);  // (1, 0) set without (-1, 0)
    CHECK_THROWS_AS(from_spectrum(s), AsymmetricSpectrum);
  }

  TEST_CASE("derivatives") {
    const GridSpec grid(32);
    const auto f = ScalarField::from_function(grid, [](double x1, double x2) {
      return std::sin(3 * x1) * std::cos(2 * x2);
    });
    const auto df = ScalarField::from_function(grid, [](double x1, double x2) {
      return 3 * std::cos(3 * x1) * std::cos(2 * x2);
    });
    CHECK(max_diff(derivative(f, 1), df) < 1e-12);
    const auto s = ScalarField::from_function(grid, [](double x1, double) { return std::sin(x1); });
    const auto c = ScalarField::from_function(grid, [](double x1, double) { return std::cos(x1); });
    CHECK(max_diff(derivative(s, 1), c) < 1e-12);
    CHECK(max_abs(derivative(ScalarField::constant(grid, 4.0), 2)) < 1e-15);
  }

  TEST_CASE("Nyquist mode has zero first derivative but full Laplacian") {
    const GridSpec grid(16);
    const auto f = ScalarField::from_function(grid, [](double x1, double) { return std::cos(8 * x1); });
    CHECK(max_abs(derivative(f, 1)) < 1e-13);
    CHECK(max_diff(laplacian(f), -64.0 * f) < 1e-11);
  }

  TEST_CASE("inverse Laplacian") {
    const GridSpec grid(32);
    const auto s = ScalarField::from_function(grid, [](double x1, double) { return std::sin(x1); });
    CHECK(max_diff(inv_neg_laplacian(s), s) < 1e-14);
    const auto c = ScalarField::from_function(grid, [](double, double x2) { return std::cos(2 * x2); });
    CHECK(max_diff(inv_neg_laplacian(c), 0.25 * c) < 1e-14);
    CHECK_THROWS_AS(inv_neg_laplacian(s + ScalarField::constant(grid, 0.5)), NonNeutralField);
    const ScalarField r = random_field(grid, 3);
    CHECK(max_diff(-1.0 * laplacian(inv_neg_laplacian(r)), r) < 1e-12);
  }

  TEST_CASE("Leray projector examples") {
    const GridSpec grid(32);
    const auto g = gradient(
        ScalarField::from_function(grid, [](double x1, double x2) { return std::sin(x1 + x2); }));
    CHECK(max_abs(leray_project(g)) < 1e-14);
    const VectorField shear(
        ScalarField::from_function(grid, [](double, double x2) { return std::sin(x2); }),
        ScalarField(grid));
    CHECK(max_diff(leray_project(shear), shear) < 1e-14);
  }

  TEST_CASE("gradient-part projector examples") {
    const GridSpec grid(32);
    const auto g = gradient(
        ScalarField::from_function(grid, [](double x1, double) { return std::cos(x1); }));
    CHECK(max_diff(grad_part_project(g), g) < 1e-14);
    CHECK(max_abs(grad_part_project(random_velocity(grid, 5))) < 1e-13);
  }

  TEST_CASE("projector algebra on a random field") {
    const GridSpec grid(32);
    const VectorField v(random_field(grid, 1), random_field(grid, 2));
    const VectorField pv = leray_project(v);
    const VectorField lv = grad_part_project(v);
    CHECK(max_diff(leray_project(pv), pv) < 1e-13);
    CHECK(max_diff(grad_part_project(lv), lv) < 1e-13);
    CHECK(max_abs(leray_project(lv)) < 1e-13);
    CHECK(max_diff(pv + lv, v) < 1e-13);
    CHECK(max_abs(divergence(pv)) < 1e-12);
    CHECK(max_abs(curl(lv)) < 1e-12);
  }

  TEST_CASE("dealiasing") {
    const GridSpec grid(16);
    const ScalarField low = random_field(grid, 7, 3);
    CHECK(max_diff(dealias(low), low) < 1e-15);
    Spectrum s(grid);
    s.set_coeff(8, 0, 1.0);
    CHECK(std::abs(dealias(s).coeff(8, 0)) == 0.0);
    CHECK(is_retained(grid, 5, -5));
    CHECK_FALSE(is_retained(grid, 6, 0));
  }

  TEST_CASE("velocity from vorticity") {
    const GridSpec grid(32);
    const VectorField c = velocity_from_vorticity(ScalarField(grid), {1.0, 0.0});
    CHECK(max_diff(c.c1, ScalarField::constant(grid, 1.0)) < 1e-15);
    CHECK(max_abs(c.c2) < 1e-15);
    const VectorField u = random_velocity(grid, 9);
    const VectorField back = velocity_from_vorticity(vorticity(u), {0.0, 0.0});
    CHECK(max_diff(back, u) < 1e-12);
    CHECK_THROWS_AS(velocity_from_vorticity(ScalarField::constant(grid, 1.0), {0.0, 0.0}),
                    NonNeutralField);
  }

  TEST_CASE("norms and inner products") {
    const GridSpec grid(16);
    const auto one = ScalarField::constant(grid, 1.0);
    CHECK(l2_norm(one) == doctest::Approx(2 * kPi).epsilon(1e-14));
    CHECK(lp_norm(one, kInfinity) == 1.0);
    CHECK(inner(one, one) == doctest::Approx(4 * kPi * kPi).epsilon(1e-14));
    CHECK_THROWS_AS(require_same_grid(GridSpec(16), GridSpec(32)), GridMismatch);
  }
}
