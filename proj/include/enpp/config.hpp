#pragma once

#include <cstdint>
#include <string>

namespace enpp {

struct RunConfig {
  int n_points = 64;
  double dt = 0.0;  // 0 before normalization; filled with 0.25 / n_points
  double t_end = 1.0;
  double nu = 0.0;
  std::string formulation = "reform";
  std::string preset;
  std::string ic_file;
  int diagnostics_every = 10;
  int snapshot_every = 0;
  std::uint64_t seed = 0;
  double s1 = 2.6;
  double s2 = 1.3;
  std::string output_dir = "out";
  bool dealias = true;
};

/// Step size used when the config leaves dt out: dt N max|u| stays below the
/// CFL number 0.5 for speeds up to 2.
double default_dt(int n_points);

/// Parses and validates JSON text. Throws SchemaError (malformed JSON, unknown
/// field, wrong type; the message carries the field path) or ConstraintError
/// (the message names the violated inequality).
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Normalized JSON with every field present.
std::string to_json(const RunConfig& cfg);

}  // namespace enpp
