#include "enpp/snapshot.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <ostream>

#include "enpp/errors.hpp"

namespace enpp {
namespace {

template <typename T>
void put(std::vector<std::uint8_t>& out, T value) {
  std::uint8_t bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(bytes[sizeof(T) - 1 - i]);
  } else {
    out.insert(out.end(), bytes, bytes + sizeof(T));
  }
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  template <typename T>
  T get(const char* what) {
    need(sizeof(T), what);
    std::uint8_t raw[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      raw[i] = std::endian::native == std::endian::big ? bytes_[pos_ + sizeof(T) - 1 - i]
                                                       : bytes_[pos_ + i];
    }
    pos_ += sizeof(T);
    T value;
    std::memcpy(&value, raw, sizeof(T));
    return value;
  }

  std::string text(std::size_t length, const char* what) {
    need(length, what);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), length);
    pos_ += length;
    return s;
  }

  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t count, const char* what) {
    if (bytes_.size() - pos_ < count) {
      throw SnapshotFormatError(std::string("truncated while reading ") + what);
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

VectorField vector_from(const Snapshot& s, const char* a, const char* b) {
  return VectorField(field_from_snapshot(s, a), field_from_snapshot(s, b));
}

}  // namespace

const std::vector<double>& Snapshot::field(const std::string& name) const {
  for (const auto& [n, v] : fields) {
    if (n == name) return v;
  }
  throw SnapshotFormatError("no field named " + name);
}

bool Snapshot::has_field(const std::string& name) const {
  for (const auto& f : fields) {
    if (f.first == name) return true;
  }
  return false;
}

std::vector<std::uint8_t> encode_snapshot(const Snapshot& s) {
  std::vector<std::uint8_t> out;
  const std::size_t count = static_cast<std::size_t>(s.n_points) * s.n_points;
  out.insert(out.end(), {'E', 'N', 'P', 'P'});
  put<std::uint16_t>(out, kSnapshotVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(s.n_points));
  put<double>(out, s.time);
  put<std::uint16_t>(out, static_cast<std::uint16_t>(s.fields.size()));
  for (const auto& [name, values] : s.fields) {
    if (name.size() > 255) throw SnapshotFormatError("field name too long: " + name);
    if (values.size() != count) throw SnapshotFormatError("field " + name + " has wrong size");
    put<std::uint8_t>(out, static_cast<std::uint8_t>(name.size()));
    out.insert(out.end(), name.begin(), name.end());
    for (double v : values) put<double>(out, v);
  }
  return out;
}

Snapshot decode_snapshot(std::span<const std::uint8_t> bytes) {
  Reader in(bytes);
  if (in.text(4, "magic") != "ENPP") throw SnapshotFormatError("bad magic");
  const auto version = in.get<std::uint16_t>("version");
  if (version != kSnapshotVersion) {
    throw SnapshotFormatError("unsupported version " + std::to_string(version));
  }
  Snapshot s;
  const auto n = in.get<std::uint32_t>("n_points");
  if (n == 0 || n > 65536) throw SnapshotFormatError("bad n_points " + std::to_string(n));
  s.n_points = static_cast<int>(n);
  s.time = in.get<double>("time");
  const auto count = in.get<std::uint16_t>("field count");
  const std::size_t size = static_cast<std::size_t>(n) * n;
  for (std::uint16_t f = 0; f < count; ++f) {
    const auto len = in.get<std::uint8_t>("name length");
    std::string name = in.text(len, "field name");
    std::vector<double> values(size);
    for (auto& v : values) v = in.get<double>("field values");
    s.fields.emplace_back(std::move(name), std::move(values));
  }
  if (!in.done()) throw SnapshotFormatError("trailing bytes after last field");
  return s;
}

void write_snapshot(const std::string& path, const Snapshot& s) {
  const auto bytes = encode_snapshot(s);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_snapshot(bytes);
}

Snapshot snapshot_of(const PrimalState& s) {
  Snapshot out;
  out.n_points = s.grid().n_points();
  out.time = s.t;
  auto add = [&](const char* name, const ScalarField& f) {
    out.fields.emplace_back(name, std::vector<double>(f.values().begin(), f.values().end()));
  };
  add("u1", s.u.c1);
  add("u2", s.u.c2);
  add("n", s.n);
  add("p", s.p);
  return out;
}

Snapshot snapshot_of(const ReformState& r) {
  Snapshot out;
  out.n_points = r.grid().n_points();
  out.time = r.t;
  auto add = [&](const char* name, const ScalarField& f) {
    out.fields.emplace_back(name, std::vector<double>(f.values().begin(), f.values().end()));
  };
  add("u1", r.u.c1);
  add("u2", r.u.c2);
  add("z", r.z);
  add("xi1", r.xi.c1);
  add("xi2", r.xi.c2);
  return out;
}

ScalarField field_from_snapshot(const Snapshot& s, const std::string& name) {
  return ScalarField(GridSpec(s.n_points), s.field(name));
}

PrimalState primal_from_snapshot(const Snapshot& s, double nu) {
  if (s.has_field("n")) {
    return PrimalState{vector_from(s, "u1", "u2"), field_from_snapshot(s, "n"),
                       field_from_snapshot(s, "p"), s.time, nu};
  }
  return primal_from_reform(reform_from_snapshot(s, nu));
}

ReformState reform_from_snapshot(const Snapshot& s, double nu) {
  if (s.has_field("z")) {
    return ReformState{vector_from(s, "u1", "u2"), field_from_snapshot(s, "z"),
                       vector_from(s, "xi1", "xi2"), s.time, nu};
  }
  return reform_from_primal(primal_from_snapshot(s, nu));
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_diagnostics_header(std::ostream& out) {
  const auto& cols = diagnostics_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
}

void write_diagnostics_row(std::ostream& out, const DiagnosticsRecord& r) {
  const auto values = csv_values(r);
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << format_double(values[i]);
  out << '\n';
}

void write_diagnostics_csv(const std::string& path, const std::vector<DiagnosticsRecord>& series) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  write_diagnostics_header(out);
  for (const auto& r : series) write_diagnostics_row(out, r);
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace enpp
