// enpp: simulate, picard, analyze and selftest subcommands.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "enpp/config.hpp"
#include "enpp/errors.hpp"
#include "enpp/integrator.hpp"
#include "enpp/littlewood_paley.hpp"
#include "enpp/monitors.hpp"
#include "enpp/presets.hpp"
#include "enpp/selftest.hpp"
#include "enpp/snapshot.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerics = 3;
constexpr int kExitIo = 4;

enpp::PrimalState initial_state(const enpp::RunConfig& cfg) {
  const enpp::GridSpec grid(cfg.n_points);
  if (!cfg.preset.empty()) return enpp::make_preset(cfg.preset, grid, cfg.seed, cfg.nu);
  const enpp::Snapshot snap = enpp::read_snapshot(cfg.ic_file);
  if (snap.n_points != cfg.n_points) {
    throw enpp::ConstraintError("ic_file n_points " + std::to_string(snap.n_points) +
                                " differs from n_points " + std::to_string(cfg.n_points));
  }
  enpp::PrimalState s = enpp::primal_from_snapshot(snap, cfg.nu);
  s.t = 0.0;
  return s;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw enpp::IoError("cannot create " + dir + ": " + ec.message());
}

std::string step_name(const std::string& prefix, long step) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%06ld", step);
  return prefix + buf + ".bin";
}

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

json monitor_table(const std::vector<enpp::DiagnosticsRecord>& series,
                   const enpp::StructureLog& structure) {
  const auto energy = enpp::energy_law(series);
  const auto lp = enpp::lp_monotonicity(series);
  const auto pos = enpp::positivity_check(series);
  double vort = 0.0;
  double charge = 0.0;
  for (const auto& r : series) {
    vort = std::max(vort, r.vort_res);
    charge = std::max({charge, std::abs(r.mean_a - series.front().mean_a),
                       std::abs(r.mean_b - series.front().mean_b)});
  }
  const double drift = std::max(structure.max_div_drift, structure.max_grad_drift);
  const double after = std::max(structure.max_div_after, structure.max_grad_after);
  json t;
  t["energy_law"] = {{"status", verdict(energy.ok())},
                     {"worst_residual", energy.worst_residual},
                     {"worst_ratio", energy.worst_ratio},
                     {"z_nonnegative", energy.z_nonnegative}};
  t["lp_monotonicity"] = {{"status", verdict(lp.ok())},
                          {"worst_p2", lp.worst_p2},
                          {"worst_p4", lp.worst_p4},
                          {"worst_pinf_ratio", lp.worst_pinf}};
  t["positivity"] = {{"status", verdict(pos.pass)}, {"min_a", pos.min_a}, {"min_b", pos.min_b}};
  t["vorticity"] = {{"status", verdict(vort <= 1e-9)}, {"max_residual", vort}};
  t["structure"] = {{"status", verdict(drift <= 1e-10 && after <= 1e-12)},
                    {"max_drift", drift},
                    {"max_after_projection", after},
                    {"reprojections", structure.reprojections}};
  t["charge_means"] = {{"status", verdict(charge <= 1e-12)}, {"max_change", charge}};
  return t;
}

int run_simulate(const std::string& config_path) {
  const enpp::RunConfig cfg = enpp::load_config(config_path);
  const enpp::PrimalState initial = initial_state(cfg);
  ensure_dir(cfg.output_dir);
  const fs::path out(cfg.output_dir);

  enpp::StepperConfig step;
  step.dt = cfg.dt;
  step.t_end = cfg.t_end;
  step.formulation = enpp::formulation_from_string(cfg.formulation);
  step.dealias = cfg.dealias;
  enpp::SimulationSchedule sched;
  sched.diagnostics_every = cfg.diagnostics_every;
  sched.snapshot_every = cfg.snapshot_every;
  sched.s1 = cfg.s1;
  sched.s2 = cfg.s2;
  enpp::SimulationHooks hooks;
  hooks.on_snapshot = [&](long k, const enpp::PrimalState* p, const enpp::ReformState* r) {
    if (r) enpp::write_snapshot((out / step_name("snapshot_", k)).string(), enpp::snapshot_of(*r));
    if (p) {
      const std::string prefix = r ? "snapshot_primal_" : "snapshot_";
      enpp::write_snapshot((out / step_name(prefix, k)).string(), enpp::snapshot_of(*p));
    }
  };

  const enpp::SimulationResult res = enpp::simulate(initial, step, sched, hooks);
  enpp::write_diagnostics_csv((out / "diagnostics.csv").string(), res.diagnostics);
  double max_gap = 0.0;
  if (step.formulation == enpp::Formulation::both) {
    enpp::write_diagnostics_csv((out / "diagnostics_primal.csv").string(), res.diagnostics_primal);
    std::ofstream gap(out / "gap.csv");
    if (!gap) throw enpp::IoError("cannot write gap.csv");
    gap << "t,gap\n";
    for (const auto& g : res.gap) {
      gap << enpp::format_double(g.t) << ',' << enpp::format_double(g.gap) << '\n';
      max_gap = std::max(max_gap, g.gap);
    }
  }

  const enpp::RegularityNorms norms = enpp::max_norms(res.diagnostics);
  json summary;
  summary["config"] = json::parse(enpp::to_json(cfg));
  summary["steps"] = res.steps;
  summary["t_final"] = cfg.t_end;
  summary["samples"] = res.diagnostics.size();
  summary["max_norms"] = {{"h_u_s1", norms.h_u_s1},
                          {"h_z_s2", norms.h_z_s2},
                          {"h_xi_s2p1", norms.h_xi_s2p1},
                          {"besov_u_1inf", norms.besov_u_1inf},
                          {"xi_inf", norms.xi_inf}};
  summary["monitors"] = monitor_table(res.diagnostics, res.structure);
  if (step.formulation == enpp::Formulation::both) summary["max_gap"] = max_gap;
  std::ofstream s(out / "summary.json");
  if (!s) throw enpp::IoError("cannot write summary.json");
  s << summary.dump(2) << '\n';
  std::cout << "wrote " << res.diagnostics.size() << " samples over " << res.steps
            << " steps to " << cfg.output_dir << '\n';
  return 0;
}

int run_picard(const std::string& config_path, int iterations) {
  const enpp::RunConfig cfg = enpp::load_config(config_path);
  const enpp::ReformState initial = enpp::reform_from_primal(initial_state(cfg));
  ensure_dir(cfg.output_dir);
  const fs::path out(cfg.output_dir);

  enpp::PicardConfig pc;
  pc.T = cfg.t_end;
  pc.m_max = iterations;
  pc.dt = cfg.dt;
  pc.s1 = cfg.s1;
  pc.s2 = cfg.s2;
  pc.dealias = cfg.dealias;
  const enpp::PicardReport rep = enpp::picard_solve(initial, pc);

  std::ofstream csv(out / "picard.csv");
  if (!csv) throw enpp::IoError("cannot write picard.csv");
  csv << "m,E,F,ratio\n";
  for (const auto& row : rep.rows) {
    csv << row.m << ',' << enpp::format_double(row.E) << ','
        << (row.has_F ? enpp::format_double(row.F) : "") << ','
        << (row.has_ratio ? enpp::format_double(row.ratio) : "") << '\n';
  }

  enpp::StepperConfig step;
  step.dt = cfg.t_end / std::max(1L, std::lround(cfg.t_end / cfg.dt));
  step.t_end = cfg.t_end;
  step.dealias = cfg.dealias;
  enpp::SimulationSchedule sched;
  sched.diagnostics_every = 1 << 30;
  const auto direct = enpp::simulate(initial, step, sched);
  json summary;
  summary["T"] = pc.T;
  summary["iterations"] = pc.m_max;
  summary["final_vs_direct_l2"] = enpp::state_distance(rep.finals.back(), *direct.reform);
  std::ofstream s(out / "picard_summary.json");
  if (!s) throw enpp::IoError("cannot write picard_summary.json");
  s << summary.dump(2) << '\n';
  std::cout << "wrote " << rep.rows.size() << " iterates to " << cfg.output_dir << '\n';
  return 0;
}

double parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity") return enpp::kInfinity;
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument(text);
  return v;
}

int run_analyze(const std::string& snapshot_path, const std::string& norm) {
  const enpp::Snapshot snap = enpp::read_snapshot(snapshot_path);
  const enpp::GridSpec grid(snap.n_points);
  const enpp::DyadicFamily fam(grid);
  bool sobolev = false;
  double s = 0.0;
  enpp::BesovParams bp;
  try {
    if (!norm.empty() && (norm[0] == 'H' || norm[0] == 'h')) {
      sobolev = true;
      s = parse_exponent(norm.substr(1));
    } else {
      const auto c1 = norm.find(',');
      const auto c2 = norm.find(',', c1 == std::string::npos ? c1 : c1 + 1);
      if (c1 == std::string::npos || c2 == std::string::npos) throw std::invalid_argument(norm);
      bp.s = parse_exponent(norm.substr(0, c1));
      bp.p = parse_exponent(norm.substr(c1 + 1, c2 - c1 - 1));
      bp.r = parse_exponent(norm.substr(c2 + 1));
      if (!(bp.p >= 1.0) || !(bp.r >= 1.0)) throw std::invalid_argument(norm);
    }
  } catch (const std::exception&) {
    throw enpp::SchemaError("--norm: expected \"s,p,r\" with p, r >= 1 or \"H<s>\", got \"" +
                            norm + "\"");
  }
  std::cout << "t " << enpp::format_double(snap.time) << '\n';
  for (const auto& [name, values] : snap.fields) {
    const enpp::ScalarField f(grid, values);
    const double v = sobolev ? enpp::sobolev_norm(f, s, fam) : enpp::besov_norm(f, bp, fam);
    std::cout << name << ' ' << enpp::format_double(v) << '\n';
  }
  return 0;
}

int run_selftest(bool quick) {
  const auto results = enpp::run_selftest(quick);
  bool ok = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    ok = ok && r.pass;
  }
  return ok ? 0 : kExitNumerics;
}

int exit_code(const enpp::Error& e) {
  switch (e.category()) {
    case enpp::ErrorCategory::config:
      return kExitConfig;
    case enpp::ErrorCategory::numerics:
      return kExitNumerics;
    case enpp::ErrorCategory::io:
      return kExitIo;
  }
  return kExitNumerics;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Euler-Nernst-Planck-Poisson pseudo-spectral simulator"};
  app.require_subcommand(1);

  std::string config_path;
  auto* sim = app.add_subcommand("simulate", "integrate a configured run");
  sim->add_option("--config", config_path, "JSON run configuration")->required();

  int iterations = 8;
  auto* pic = app.add_subcommand("picard", "run the Picard iteration up to t_end");
  pic->add_option("--config", config_path, "JSON run configuration")->required();
  pic->add_option("--iterations", iterations, "number of iterates m_max")
      ->check(CLI::PositiveNumber);

  std::string snapshot_path;
  std::string norm;
  auto* ana = app.add_subcommand("analyze", "Besov or Sobolev norms of a snapshot");
  ana->add_option("--snapshot", snapshot_path, "snapshot file")->required();
  ana->add_option("--norm", norm, "\"s,p,r\" or \"H<s>\"")->required();

  bool quick = false;
  auto* self = app.add_subcommand("selftest", "invariant suite on small grids");
  self->add_flag("--quick", quick, "smaller grid and shorter run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sim) return run_simulate(config_path);
    if (*pic) return run_picard(config_path, iterations);
    if (*ana) return run_analyze(snapshot_path, norm);
    if (*self) return run_selftest(quick);
  } catch (const enpp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerics;
  }
  return 0;
}
