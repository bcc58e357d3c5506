#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "enpp/dynamics.hpp"
#include "enpp/monitors.hpp"

namespace enpp {

/// Binary field dump: magic "ENPP", u16 version 1, u32 n_points, f64 time,
/// u16 field count, then per field u8 name length, ASCII name and n_points^2
/// f64 values row-major. Everything little-endian.
struct Snapshot {
  int n_points = 0;
  double time = 0.0;
  std::vector<std::pair<std::string, std::vector<double>>> fields;

  /// Throws SnapshotFormatError when the field is absent.
  const std::vector<double>& field(const std::string& name) const;
  bool has_field(const std::string& name) const;
};

inline constexpr std::uint16_t kSnapshotVersion = 1;

std::vector<std::uint8_t> encode_snapshot(const Snapshot& s);
/// Throws SnapshotFormatError on bad magic, version, truncation or trailing bytes.
Snapshot decode_snapshot(std::span<const std::uint8_t> bytes);

void write_snapshot(const std::string& path, const Snapshot& s);
Snapshot read_snapshot(const std::string& path);

/// Fields u1, u2, n, p.
Snapshot snapshot_of(const PrimalState& s);
/// Fields u1, u2, z, xi1, xi2.
Snapshot snapshot_of(const ReformState& r);

/// Accepts either field set; reform snapshots are converted.
PrimalState primal_from_snapshot(const Snapshot& s, double nu = 0.0);
ReformState reform_from_snapshot(const Snapshot& s, double nu = 0.0);
ScalarField field_from_snapshot(const Snapshot& s, const std::string& name);

/// %.17g, the format of every float written to CSV.
std::string format_double(double v);

void write_diagnostics_header(std::ostream& out);
void write_diagnostics_row(std::ostream& out, const DiagnosticsRecord& r);
void write_diagnostics_csv(const std::string& path, const std::vector<DiagnosticsRecord>& series);

}  // namespace enpp
