#include <cmath>

#include "doctest.h"
#include "enpp/errors.hpp"
#include "support.hpp"

using namespace enpp;
using enpp::testing::max_diff;
using enpp::testing::random_field;

namespace {

ScalarField mode(GridSpec grid, int k1, int k2, double amplitude = 1.0) {
  return ScalarField::from_function(
      grid, [=](double x1, double x2) { return amplitude * std::cos(k1 * x1 + k2 * x2); });
}

}  // namespace

TEST_SUITE("littlewood_paley") {
  TEST_CASE("family size follows the support condition") {
    // j_max is the largest j with 2^j * 8/3 <= N/2.
    for (int n : {16, 32, 64, 128, 256}) {
      int expected = -1;
      while (std::ldexp(8.0 / 3.0, expected + 1) <= n / 2.0) ++expected;
      CHECK(DyadicFamily(GridSpec(n)).j_max() == expected);
    }
    CHECK(DyadicFamily(GridSpec(64)).j_max() == 3);
    CHECK_THROWS_AS(DyadicFamily(GridSpec(8)), GridTooSmall);
  }

  TEST_CASE("radial profiles") {
    const DyadicFamily fam(GridSpec(64));
    CHECK(fam.chi(0.0) == 1.0);
    CHECK(fam.chi(1.0) == 1.0);
    CHECK(fam.chi(4.0 / 3.0) == 0.0);
    CHECK(fam.phi(0.5) == 0.0);
    CHECK(fam.phi(3.0) == 0.0);
    for (double r = 0.0; r < 20.0; r += 0.013) {
      double sum = fam.chi(r);
      for (int j = 0; j < 8; ++j) sum += fam.phi(r / std::ldexp(1.0, j));
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(fam.partition_residual() < 1e-14);
  }

  TEST_CASE("block supports") {
    const GridSpec grid(64);
    const DyadicFamily fam(grid);
    const ScalarField f = mode(grid, 4, 0);
    for (int j = -1; j <= fam.j_max(); ++j) {
      const double size = max_abs(dyadic_block(f, j, fam));
      const bool allowed = j == 1 || j == 2;
      if (!allowed) CHECK(size < 1e-14);
    }
    ScalarField sum(grid);
    for (int j = -1; j <= fam.j_max(); ++j) sum += dyadic_block(f, j, fam);
    CHECK(max_diff(sum, f) < 1e-14);
    const ScalarField c = mode(grid, 1, 0);
    CHECK(max_diff(dyadic_block(c, -1, fam), c) < 1e-15);
    CHECK_THROWS_AS(dyadic_block(to_spectrum(f), fam.j_max() + 1, fam), BlockOutOfRange);
  }

  TEST_CASE("low-frequency cutoffs") {
    const GridSpec grid(64);
    const DyadicFamily fam(grid);
    const ScalarField f = random_field(grid, 4, 12);
    CHECK(max_diff(low_freq(f, 0, fam), dyadic_block(f, -1, fam)) < 1e-15);
    CHECK(max_diff(low_freq(f, fam.j_max() + 1, fam), f) < 1e-12);
    // |k| = 8 >= 2^1 * 8/3, so S_1 removes it.
    CHECK(max_abs(low_freq(mode(grid, 8, 0), 1, fam)) < 1e-15);
  }

  TEST_CASE("Besov and Sobolev norms of simple fields") {
    const GridSpec grid(64);
    const DyadicFamily fam(grid);
    CHECK(besov_norm(ScalarField(grid), BesovParams{1.0, 2.0, 2.0}, fam) == 0.0);
    // |k| = 5 sits only in block 2.
    const ScalarField f = mode(grid, 5, 0, 0.7);
    for (int j = -1; j <= fam.j_max(); ++j) {
      if (j != 2) CHECK(max_abs(dyadic_block(f, j, fam)) < 1e-14);
    }
    for (double p : {1.0, 2.0, kInfinity}) {
      const double expected = std::ldexp(1.0, 2) * lp_norm(f, p);
      CHECK(besov_norm(f, BesovParams{1.0, p, kInfinity}, fam) ==
            doctest::Approx(expected).epsilon(1e-13));
    }
    const ScalarField c = ScalarField::constant(grid, 2.0);
    CHECK(sobolev_norm(c, 1.5, fam) == doctest::Approx(std::pow(2.0, -1.5) * l2_norm(c)));
    // Plancherel: B^0_{2,2} equals L^2.
    const ScalarField r = random_field(grid, 8, 20);
    CHECK(besov_norm(r, BesovParams{0.0, 2.0, 2.0}, fam) == doctest::Approx(l2_norm(r)).epsilon(1e-13));
    CHECK(sobolev_norm(r, 0.0, fam) == doctest::Approx(l2_norm(r)).epsilon(1e-13));
  }

  TEST_CASE("Bony decomposition") {
    const GridSpec grid(64);
    const DyadicFamily fam(grid);
    const ScalarField u = random_field(grid, 1, 8);
    const ScalarField v = random_field(grid, 2, 8);
    const ScalarField sum = bony_paraproduct(u, v, fam, ProductMode::exact) +
                            bony_paraproduct(v, u, fam, ProductMode::exact) +
                            bony_remainder(u, v, fam, ProductMode::exact);
    CHECK(max_diff(sum, pointwise_product(u, v)) < 1e-12);

    const ScalarField c = ScalarField::constant(grid, 1.5);
    const ScalarField with_const = bony_paraproduct(c, v, fam, ProductMode::exact) +
                                   bony_paraproduct(v, c, fam, ProductMode::exact) +
                                   bony_remainder(c, v, fam, ProductMode::exact);
    CHECK(max_diff(with_const, 1.5 * v) < 1e-12);
    CHECK(max_abs(bony_paraproduct(u, mode(grid, 1, 0), fam)) < 1e-15);
    // Blocks -1 and 3 are too far apart to interact in the remainder.
    CHECK(max_abs(bony_remainder(mode(grid, 1, 0), mode(grid, 12, 0), fam)) < 1e-14);
  }

  TEST_CASE("continuity sweep bookkeeping") {
    const GridSpec grid(32);
    BandLimitedField zero;
    const std::vector<FieldPair> corpus = {{zero, zero}};
    const ContinuityReport rep = continuity_sweep(corpus, SweepParams{});
    for (const auto& r : rep.ratios) {
      CHECK(r.evaluated == 0);
      CHECK(r.skipped == 1);
    }
    const ContinuityReport live = continuity_sweep(6, SweepParams{});
    for (const auto& r : live.ratios) {
      CHECK(r.finite);
      CHECK(r.evaluated > 0);
    }
  }

  TEST_CASE("Bernstein ratios stay bounded") {
    const BernsteinReport rep = bernstein_sweep(6, 3, {32, 64});
    CHECK(rep.worst_constant() < 10.0);
    CHECK(rep.stability_factor() < 2.0);
  }
}
