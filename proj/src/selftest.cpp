#include "enpp/selftest.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <functional>

#include "enpp/integrator.hpp"
#include "enpp/littlewood_paley.hpp"
#include "enpp/monitors.hpp"
#include "enpp/presets.hpp"
#include "enpp/random.hpp"
#include "enpp/snapshot.hpp"

namespace enpp {
namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

VectorField random_vector(Rng& rng, GridSpec grid, int band) {
  return VectorField(random_band_limited(rng, band).sample(grid),
                     random_band_limited(rng, band).sample(grid));
}

CheckResult projectors(GridSpec grid, int samples) {
  Rng rng(11);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const VectorField v = random_vector(rng, grid, grid.n_points() / 3);
    const double scale = std::max(1.0, max_abs(v));
    const VectorField pv = leray_project(v);
    const VectorField lv = grad_part_project(v);
    worst = std::max({worst, max_abs(leray_project(pv) - pv) / scale,
                      max_abs(grad_part_project(lv) - lv) / scale,
                      max_abs(divergence(pv)) / scale, max_abs(curl(lv)) / scale});
  }
  return {"projector algebra", worst <= 1e-12, "worst residual " + sci(worst)};
}

CheckResult reconstruction(GridSpec grid, int samples) {
  const DyadicFamily fam(grid);
  Rng rng(12);
  double worst = fam.partition_residual();
  for (int i = 0; i < samples; ++i) {
    const ScalarField f = random_band_limited(rng, grid.n_points() / 2 - 1).sample(grid);
    ScalarField sum(grid);
    for (int j = fam.j_min(); j <= fam.j_max(); ++j) sum += dyadic_block(f, j, fam);
    worst = std::max(worst, max_abs(sum - f) / std::max(1.0, max_abs(f)));
    const double l2 = l2_norm(f);
    worst = std::max(worst, std::abs(sobolev_norm(f, 0.0, fam) - l2) / l2);
  }
  return {"block reconstruction", worst <= 1e-12, "worst residual " + sci(worst)};
}

CheckResult bony(GridSpec grid, int samples) {
  const GridSpec fine(2 * grid.n_points());
  const DyadicFamily fam(fine);
  Rng rng(13);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const ScalarField u = random_band_limited(rng, grid.n_points() / 2 - 1).sample(fine);
    const ScalarField v = random_band_limited(rng, grid.n_points() / 2 - 1).sample(fine);
    const ScalarField sum = bony_paraproduct(u, v, fam, ProductMode::exact) +
                            bony_paraproduct(v, u, fam, ProductMode::exact) +
                            bony_remainder(u, v, fam, ProductMode::exact);
    worst = std::max(worst, max_abs(sum - pointwise_product(u, v)) / (max_abs(u) * max_abs(v)));
  }
  return {"Bony reconstruction", worst <= 1e-10, "worst residual " + sci(worst)};
}

CheckResult rhs_consistency(GridSpec grid) {
  const PrimalState s = make_preset("shear_charge", grid);
  const ReformState r = reform_from_primal(s);
  const PrimalRhs dp = rhs_primal(s);
  const ReformRhs dr = rhs_reform(r);
  const ScalarField dz = dp.dn + dp.dp;
  const VectorField dxi = xi_from_charge(dp.dn, dp.dp, 1e-8);
  const double gap = std::max(max_abs(dr.dz - dz) / std::max(1.0, max_abs(dz)),
                              max_abs(dr.dxi - dxi) / std::max(1.0, max_abs(dxi)));
  const double div = max_abs(divergence(dr.du));
  const double grad = max_abs(dr.dxi - grad_part_project(dr.dxi));
  const double vort = vorticity_consistency(r, dr.du);
  const bool ok = gap <= 1e-9 && div <= 1e-12 && grad <= 1e-12 && vort <= 1e-9;
  return {"right-hand sides", ok,
          "cross gap " + sci(gap) + ", div " + sci(div) + ", grad " + sci(grad) + ", vort " +
              sci(vort)};
}

CheckResult run_checks(GridSpec grid, double t_end) {
  StepperConfig cfg;
  cfg.dt = 0.25 / grid.n_points();
  cfg.t_end = t_end;
  cfg.formulation = Formulation::both;
  SimulationSchedule sched;
  sched.diagnostics_every = 4;
  const SimulationResult res = simulate(make_preset("shear_charge", grid), cfg, sched);
  const EnergyLawReport e = energy_law(res.diagnostics);
  const LpReport lp = lp_monotonicity(res.diagnostics);
  const PositivityResult pos = positivity_check(res.diagnostics);
  double gap = 0.0;
  double vort = 0.0;
  for (const auto& g : res.gap) gap = std::max(gap, g.gap);
  for (const auto& d : res.diagnostics) vort = std::max(vort, d.vort_res);
  const double drift = std::max(res.structure.max_div_drift, res.structure.max_grad_drift);
  const double after = std::max(res.structure.max_div_after, res.structure.max_grad_after);
  const bool ok = e.ok() && lp.ok() && pos.pass && gap <= 1e-6 && vort <= 1e-9 &&
                  drift <= 1e-10 && after <= 1e-12;
  return {"monitored run", ok,
          "energy ratio " + sci(e.worst_ratio) + ", lp2 " + sci(lp.worst_p2) + ", min a/b " +
              sci(std::min(pos.min_a, pos.min_b)) + ", gap " + sci(gap) + ", vort " + sci(vort) +
              ", drift " + sci(drift)};
}

CheckResult snapshot_round_trip(GridSpec grid) {
  const PrimalState s = make_preset("random_bandlimited", grid, 5);
  const Snapshot snap = snapshot_of(s);
  const Snapshot back = decode_snapshot(encode_snapshot(snap));
  bool same = back.n_points == snap.n_points && back.time == snap.time &&
              back.fields.size() == snap.fields.size();
  for (std::size_t i = 0; same && i < snap.fields.size(); ++i) {
    same = back.fields[i] == snap.fields[i];
  }
  return {"snapshot round trip", same, same ? "bit-exact" : "mismatch"};
}

CheckResult guarded(const std::string& name, const std::function<CheckResult()>& check) {
  try {
    return check();
  } catch (const std::exception& e) {
    return {name, false, e.what()};
  }
}

}  // namespace

std::vector<CheckResult> run_selftest(bool quick) {
  const GridSpec grid(quick ? 16 : 32);
  const int samples = quick ? 4 : 20;
  return {
      guarded("projector algebra", [&] { return projectors(grid, samples); }),
      guarded("block reconstruction", [&] { return reconstruction(grid, samples); }),
      guarded("Bony reconstruction", [&] { return bony(grid, samples / 2); }),
      guarded("right-hand sides", [&] { return rhs_consistency(grid); }),
      guarded("monitored run", [&] { return run_checks(grid, quick ? 0.1 : 0.5); }),
      guarded("snapshot round trip", [&] { return snapshot_round_trip(grid); }),
  };
}

}  // namespace enpp
