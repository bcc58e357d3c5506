#include "enpp/presets.hpp"

#include <cmath>
#include <numbers>

#include "enpp/errors.hpp"
#include "enpp/littlewood_paley.hpp"
#include "enpp/random.hpp"

namespace enpp {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBackground = 0.05;
constexpr double kBlobWidth = 0.5;

// Periodic Gaussian-like bump of height 1 centred at (c1, c2).
ScalarField bump(GridSpec grid, double c1, double c2) {
  const double inv = 1.0 / (kBlobWidth * kBlobWidth);
  return ScalarField::from_function(grid, [=](double x1, double x2) {
    return std::exp((std::cos(x1 - c1) + std::cos(x2 - c2) - 2.0) * inv);
  });
}

// Dealiases both densities and moves p by a constant so the means agree.
void neutralize(PrimalState& s) {
  s.n = dealias(s.n);
  s.p = dealias(s.p);
  const double shift = mean(s.n) - mean(s.p);
  for (double& v : s.p.values()) v += shift;
}

PrimalState blobs(GridSpec grid, double nu) {
  PrimalState s{VectorField(grid), ScalarField::constant(grid, kBackground),
                ScalarField::constant(grid, kBackground), 0.0, nu};
  s.n += bump(grid, 2.0 * kPi / 3.0, kPi);
  s.p += bump(grid, 4.0 * kPi / 3.0, kPi);
  neutralize(s);
  return s;
}

ScalarField random_zero_mean(Rng& rng, GridSpec grid, int band) {
  ScalarField f = random_band_limited(rng, band).sample(grid);
  const double m = mean(f);
  for (double& v : f.values()) v -= m;
  return f;
}

PrimalState random_state(GridSpec grid, std::uint64_t seed, double nu) {
  Rng rng(seed);
  constexpr int band = 4;
  VectorField u = velocity_from_vorticity(random_zero_mean(rng, grid, band), {0.0, 0.0});
  const double speed = max_abs(u);
  if (speed > 0.0) u *= 1.0 / speed;
  auto density = [&] {
    ScalarField r = random_zero_mean(rng, grid, band);
    const double peak = max_abs(r);
    if (peak > 0.0) r *= 0.5 / peak;
    for (double& v : r.values()) v += 1.0;
    return r;
  };
  ScalarField n = density();
  ScalarField p = density();
  PrimalState s{dealias(u), std::move(n), std::move(p), 0.0, nu};
  neutralize(s);
  return s;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"rest", "gaussian_blobs", "shear_charge",
                                                 "random_bandlimited"};
  return names;
}

PrimalState make_preset(const std::string& name, GridSpec grid, std::uint64_t seed, double nu) {
  if (name == "rest") {
    return PrimalState{VectorField(grid), ScalarField::constant(grid, 1.0),
                       ScalarField::constant(grid, 1.0), 0.0, nu};
  }
  if (name == "gaussian_blobs") return blobs(grid, nu);
  if (name == "shear_charge") {
    PrimalState s = blobs(grid, nu);
    s.u.c1 = ScalarField::from_function(grid, [](double, double x2) { return std::sin(x2); });
    return s;
  }
  if (name == "random_bandlimited") return random_state(grid, seed, nu);
  throw UnknownPreset("\"" + name + "\"");
}

}  // namespace enpp
