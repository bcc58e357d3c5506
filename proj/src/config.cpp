#include "enpp/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "enpp/errors.hpp"

namespace enpp {
namespace {

using nlohmann::json;

const std::set<std::string>& known_fields() {
  static const std::set<std::string> fields = {
      "n_points", "dt",     "t_end", "nu", "formulation", "preset",     "ic_file",
      "diagnostics_every", "snapshot_every", "seed", "s1",   "s2", "output_dir", "dealias"};
  return fields;
}

std::string path(const std::string& key) { return "$." + key; }

double get_number(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) throw SchemaError(path(key) + ": expected a number");
  return v.get<double>();
}

long long get_integer(const json& j, const std::string& key, long long fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d == static_cast<double>(static_cast<long long>(d))) return static_cast<long long>(d);
  }
  throw SchemaError(path(key) + ": expected an integer");
}

std::string get_string(const json& j, const std::string& key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_string()) throw SchemaError(path(key) + ": expected a string");
  return v.get<std::string>();
}

void require(bool ok, const std::string& inequality, const std::string& detail) {
  if (!ok) throw ConstraintError(inequality + " violated (" + detail + ")");
}

}  // namespace

double default_dt(int n_points) { return 0.25 / n_points; }

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("$: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("$: expected an object");
  for (const auto& item : j.items()) {
    if (!known_fields().count(item.key())) throw SchemaError(path(item.key()) + ": unknown field");
  }

  RunConfig cfg;
  const long long n = get_integer(j, "n_points", cfg.n_points);
  require(n >= 16 && n <= 4096 && n % 2 == 0, "n_points even and 16 <= n_points <= 4096",
          "n_points = " + std::to_string(n));
  cfg.n_points = static_cast<int>(n);
  cfg.dt = get_number(j, "dt", default_dt(cfg.n_points));
  cfg.t_end = get_number(j, "t_end", cfg.t_end);
  cfg.nu = get_number(j, "nu", cfg.nu);
  cfg.formulation = get_string(j, "formulation", cfg.formulation);
  cfg.preset = get_string(j, "preset", "");
  cfg.ic_file = get_string(j, "ic_file", "");
  cfg.diagnostics_every =
      static_cast<int>(get_integer(j, "diagnostics_every", cfg.diagnostics_every));
  cfg.snapshot_every = static_cast<int>(get_integer(j, "snapshot_every", cfg.snapshot_every));
  if (j.contains("seed")) {
    const json& v = j.at("seed");
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      throw SchemaError(path("seed") + ": expected an unsigned 64-bit integer");
    }
    cfg.seed = v.get<std::uint64_t>();
  }
  cfg.s1 = get_number(j, "s1", cfg.s1);
  cfg.s2 = get_number(j, "s2", cfg.s2);
  cfg.output_dir = get_string(j, "output_dir", cfg.output_dir);
  if (j.contains("dealias")) {
    if (!j.at("dealias").is_boolean()) throw SchemaError(path("dealias") + ": expected a boolean");
    cfg.dealias = j.at("dealias").get<bool>();
  }

  if (cfg.formulation != "primal" && cfg.formulation != "reform" && cfg.formulation != "both") {
    throw SchemaError(path("formulation") + ": expected primal, reform or both");
  }
  if (cfg.preset.empty() == cfg.ic_file.empty()) {
    throw SchemaError("$: exactly one of preset and ic_file is required");
  }
  require(cfg.dt > 0.0, "dt > 0", "dt = " + std::to_string(cfg.dt));
  require(cfg.t_end >= 0.0, "t_end >= 0", "t_end = " + std::to_string(cfg.t_end));
  require(cfg.nu >= 0.0, "nu >= 0", "nu = " + std::to_string(cfg.nu));
  require(cfg.diagnostics_every >= 1, "diagnostics_every >= 1",
          "diagnostics_every = " + std::to_string(cfg.diagnostics_every));
  require(cfg.snapshot_every >= 0, "snapshot_every >= 0",
          "snapshot_every = " + std::to_string(cfg.snapshot_every));
  const std::string s = "s1 = " + std::to_string(cfg.s1) + ", s2 = " + std::to_string(cfg.s2);
  require(cfg.s1 > 2.0, "s1 > 2", s);
  require(cfg.s2 > 1.0, "s2 > 1", s);
  require(cfg.s2 + 1.5 > cfg.s1, "s2 + 3/2 > s1", s);
  require(cfg.s1 >= cfg.s2 + 1.0, "s1 >= s2 + 1", s);
  return cfg;
}

RunConfig load_config(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open config " + file);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string to_json(const RunConfig& cfg) {
  json j;
  j["n_points"] = cfg.n_points;
  j["dt"] = cfg.dt > 0.0 ? cfg.dt : default_dt(cfg.n_points);
  j["t_end"] = cfg.t_end;
  j["nu"] = cfg.nu;
  j["formulation"] = cfg.formulation;
  if (!cfg.preset.empty()) j["preset"] = cfg.preset;
  if (!cfg.ic_file.empty()) j["ic_file"] = cfg.ic_file;
  j["diagnostics_every"] = cfg.diagnostics_every;
  j["snapshot_every"] = cfg.snapshot_every;
  j["seed"] = cfg.seed;
  j["s1"] = cfg.s1;
  j["s2"] = cfg.s2;
  j["output_dir"] = cfg.output_dir;
  j["dealias"] = cfg.dealias;
  return j.dump(2);
}

}  // namespace enpp
