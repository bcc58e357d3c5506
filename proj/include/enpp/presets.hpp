#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "enpp/dynamics.hpp"

namespace enpp {

/// rest, gaussian_blobs, shear_charge, random_bandlimited.
const std::vector<std::string>& preset_names();

/// Band-limited, divergence-free, neutral, nonnegative initial data.
/// Throws UnknownPreset.
PrimalState make_preset(const std::string& name, GridSpec grid, std::uint64_t seed = 0,
                        double nu = 0.0);

}  // namespace enpp
