#pragma once

#include <cmath>
#include <cstdint>

#include "enpp/dynamics.hpp"
#include "enpp/littlewood_paley.hpp"
#include "enpp/random.hpp"
#include "enpp/spectral.hpp"

namespace enpp::testing {

inline ScalarField random_field(GridSpec grid, std::uint64_t seed, int band = 4) {
  Rng rng(seed);
  return random_band_limited(rng, band).sample(grid);
}

/// Divergence-free velocity from a random stream function.
inline VectorField random_velocity(GridSpec grid, std::uint64_t seed, int band = 4) {
  const ScalarField psi = random_field(grid, seed, band);
  return VectorField(derivative(psi, 2), -1.0 * derivative(psi, 1));
}

/// Random state with positive neutral charges, band-limited below the dealiasing cutoff.
inline PrimalState random_primal(GridSpec grid, std::uint64_t seed, double nu = 0.0) {
  ScalarField n = random_field(grid, seed + 1, 3);
  ScalarField p = random_field(grid, seed + 2, 3);
  const double scale = 0.4 / std::max(max_abs(n), max_abs(p));
  n *= scale;
  p *= scale;
  n += ScalarField::constant(grid, 1.0);
  p += ScalarField::constant(grid, 1.0);
  VectorField u = random_velocity(grid, seed, 3);
  u *= 0.5 / max_abs(u);
  return PrimalState{u, n, p, 0.0, nu};
}

inline double max_diff(const ScalarField& a, const ScalarField& b) { return max_abs(a - b); }
inline double max_diff(const VectorField& a, const VectorField& b) { return max_abs(a - b); }

}  // namespace enpp::testing
