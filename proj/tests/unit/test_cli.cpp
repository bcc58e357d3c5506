#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "doctest.h"
#include "enpp/littlewood_paley.hpp"
#include "enpp/presets.hpp"
#include "enpp/snapshot.hpp"

using namespace enpp;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args, const fs::path& dir) {
  const fs::path log = dir / "stdout.txt";
  const std::string cmd = std::string(ENPP_BINARY) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("enpp_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const fs::path& dir, const std::string& body) {
  const fs::path p = dir / "config.json";
  std::ofstream(p) << body;
  return p;
}

std::vector<std::string> lines_of(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("selftest passes") {
    const auto dir = scratch_dir("selftest");
    const Run r = run_cli("selftest --quick", dir);
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
  }

  TEST_CASE("exit codes by error category") {
    const auto dir = scratch_dir("codes");
    CHECK(run_cli("simulate --config " + write_config(dir, R"({"preset": "rest", "N": 64})").string(), dir).code == 2);
    CHECK(run_cli("simulate --config " + write_config(dir, R"({"preset": "rest", "s1": 4, "s2": 1.5})").string(), dir).code == 2);
    CHECK(run_cli("simulate --config " + write_config(dir, R"({"preset": "nope"})").string(), dir).code == 2);
    CHECK(run_cli("simulate --config /nonexistent/c.json", dir).code == 4);
    CHECK(run_cli("analyze --snapshot /nonexistent/s.bin --norm H1", dir).code == 4);
    CHECK(run_cli("bogus", dir).code == 2);
    // dt N max|u| far above the CFL bound.
    const std::string cfl = R"({"preset": "shear_charge", "n_points": 32, "dt": 0.5, "t_end": 1, "output_dir": ")" +
                            (dir / "cfl").string() + R"("})";
    CHECK(run_cli("simulate --config " + write_config(dir, cfl).string(), dir).code == 3);
  }

  TEST_CASE("simulate rest writes constant diagnostics") {
    const auto dir = scratch_dir("rest");
    const fs::path out = dir / "out";
    const std::string cfg = R"({"preset": "rest", "n_points": 16, "t_end": 0.2, "dt": 0.01,
      "diagnostics_every": 5, "snapshot_every": 10, "output_dir": ")" + out.string() + R"("})";
    const Run r = run_cli("simulate --config " + write_config(dir, cfg).string(), dir);
    REQUIRE(r.code == 0);
    const auto csv = lines_of(out / "diagnostics.csv");
    REQUIRE(csv.size() == 6);
    CHECK(csv[0].rfind("t,energy,", 0) == 0);
    for (std::size_t k = 2; k < csv.size(); ++k) {
      CHECK(csv[k].substr(csv[k].find(',')) == csv[1].substr(csv[1].find(',')));
    }
    CHECK(fs::exists(out / "summary.json"));
    CHECK(fs::exists(out / "snapshot_000000.bin"));
    CHECK(fs::exists(out / "snapshot_000010.bin"));
    CHECK(fs::exists(out / "snapshot_000020.bin"));
  }

  TEST_CASE("both formulation writes the gap series") {
    const auto dir = scratch_dir("both");
    const fs::path out = dir / "out";
    const std::string cfg = R"({"preset": "gaussian_blobs", "n_points": 16, "t_end": 0.05,
      "formulation": "both", "output_dir": ")" + out.string() + R"("})";
    REQUIRE(run_cli("simulate --config " + write_config(dir, cfg).string(), dir).code == 0);
    CHECK(fs::exists(out / "gap.csv"));
    CHECK(fs::exists(out / "diagnostics_primal.csv"));
    CHECK(lines_of(out / "diagnostics.csv").size() == lines_of(out / "diagnostics_primal.csv").size());
  }

  TEST_CASE("picard writes one row per iterate") {
    const auto dir = scratch_dir("picard");
    const fs::path out = dir / "out";
    const std::string cfg = R"({"preset": "gaussian_blobs", "n_points": 16, "t_end": 0.05,
      "dt": 0.01, "output_dir": ")" + out.string() + R"("})";
    REQUIRE(run_cli("picard --iterations 3 --config " + write_config(dir, cfg).string(), dir).code == 0);
    const auto csv = lines_of(out / "picard.csv");
    REQUIRE(csv.size() == 5);
    CHECK(csv[0] == "m,E,F,ratio");
  }

  TEST_CASE("analyze reproduces in-process norms") {
    const auto dir = scratch_dir("analyze");
    const GridSpec grid(32);
    const PrimalState s = make_preset("random_bandlimited", grid, 4);
    const Snapshot snap = snapshot_of(s);
    const fs::path path = dir / "s.bin";
    write_snapshot(path.string(), snap);
    const DyadicFamily fam(grid);

    const Run h = run_cli("analyze --snapshot " + path.string() + " --norm H1.5", dir);
    REQUIRE(h.code == 0);
    const Run b = run_cli("analyze --snapshot " + path.string() + " --norm 1,inf,inf", dir);
    REQUIRE(b.code == 0);
    auto parse = [](const std::string& text) {
      std::map<std::string, double> m;
      std::istringstream in(text);
      std::string name, value;
      while (in >> name >> value) m[name] = std::stod(value);
      return m;
    };
    const auto hn = parse(h.out);
    const auto bn = parse(b.out);
    for (const auto& [name, values] : snap.fields) {
      CAPTURE(name);
      const ScalarField f(grid, values);
      const double hs = sobolev_norm(f, 1.5, fam);
      const double bs = besov_norm(f, BesovParams{1.0, kInfinity, kInfinity}, fam);
      REQUIRE(hn.count(name));
      CHECK(std::abs(hn.at(name) - hs) <= 1e-12 * std::max(1.0, hs));
      CHECK(std::abs(bn.at(name) - bs) <= 1e-12 * std::max(1.0, bs));
    }
    CHECK(run_cli("analyze --snapshot " + path.string() + " --norm 1,0.5,2", dir).code == 2);
  }
}
