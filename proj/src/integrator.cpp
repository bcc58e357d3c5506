#include "enpp/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "enpp/errors.hpp"
#include "enpp/parallel.hpp"

namespace enpp {
namespace {

void scale_modes(Spectrum& s, const std::vector<double>& factor) {
  auto d = s.data();
  for (std::size_t k = 0; k < d.size(); ++k) d[k] *= factor[k];
}

std::vector<double> diffusivities(Formulation f, double nu) {
  if (f == Formulation::primal) return {nu, nu, 1.0, 1.0};
  return {nu, nu, 1.0, 1.0, 1.0};
}

NonlinearFn nonlinear_for(Formulation f, bool dealias) {
  if (f == Formulation::primal) {
    return [dealias](double, const std::vector<Spectrum>& v, std::vector<Spectrum>& out) {
      primal_nonlinear(v, out, dealias);
    };
  }
  return [dealias](double, const std::vector<Spectrum>& v, std::vector<Spectrum>& out) {
    reform_nonlinear(v, out, dealias);
  };
}

double max_speed(const std::vector<Spectrum>& v) {
  return max_abs(VectorField(from_spectrum(v[0]), from_spectrum(v[1])));
}

double divergence_residual(const std::vector<Spectrum>& v) {
  Spectrum d = derivative(v[0], 1);
  d += derivative(v[1], 2);
  return max_abs(from_spectrum(d));
}

double gradient_residual(const std::vector<Spectrum>& v) {
  Spectrum g1 = v[3];
  Spectrum g2 = v[4];
  grad_part_project(g1, g2);
  Spectrum r1 = v[3];
  Spectrum r2 = v[4];
  r1 -= g1;
  r2 -= g2;
  return max_abs(VectorField(from_spectrum(r1), from_spectrum(r2)));
}

void check_cfl(const std::vector<Spectrum>& v, double h, const StepperConfig& cfg) {
  const double speed = max_speed(v);
  const double number = h * v[0].grid().n_points() * speed;
  if (number > cfg.cfl) {
    throw CflViolation("dt * N * max|u| = " + std::to_string(number) + " exceeds " +
                       std::to_string(cfg.cfl));
  }
}

void check_positivity(Formulation f, const std::vector<Spectrum>& v, double t,
                      const StepperConfig& cfg) {
  if (!cfg.check_positivity) return;
  double min_a = 0.0;
  double min_b = 0.0;
  if (f == Formulation::primal) {
    min_a = min_value(from_spectrum(v[2]));
    min_b = min_value(from_spectrum(v[3]));
  } else {
    Spectrum q = derivative(v[3], 1);
    q += derivative(v[4], 2);
    Spectrum a = v[2];
    a += q;
    Spectrum b = v[2];
    b -= q;
    min_a = 0.5 * min_value(from_spectrum(a));
    min_b = 0.5 * min_value(from_spectrum(b));
  }
  const double floor = -10.0 * cfg.pos_tol;
  if (min_a < floor || min_b < floor) {
    throw InvariantDrift("positivity lost at t = " + std::to_string(t) + ": min a = " +
                         std::to_string(min_a) + ", min b = " + std::to_string(min_b));
  }
}

// Steps one formulation, keeping one integrator per distinct step size.
class Runner {
 public:
  Runner(Formulation f, GridSpec grid, double nu, const StepperConfig& cfg)
      : f_(f), grid_(grid), nu_(nu), cfg_(cfg), nonlinear_(nonlinear_for(f, cfg.dealias)) {}

  StepReport advance(std::vector<Spectrum>& v, double t, double h) {
    check_cfl(v, h, cfg_);
    integrator_for(h).step(v, t, nonlinear_);
    StepReport rep;
    rep.div_drift = divergence_residual(v);
    rep.div_after = rep.div_drift;
    if (rep.div_drift > cfg_.reproject_tol) {
      leray_project(v[0], v[1]);
      rep.div_after = divergence_residual(v);
      rep.reprojected = true;
    }
    if (f_ != Formulation::primal) {
      rep.grad_drift = gradient_residual(v);
      rep.grad_after = rep.grad_drift;
      if (rep.grad_drift > cfg_.reproject_tol) {
        grad_part_project(v[3], v[4]);
        rep.grad_after = gradient_residual(v);
        rep.reprojected = true;
      }
    }
    check_positivity(f_, v, t + h, cfg_);
    return rep;
  }

 private:
  IntegratingFactorRk4& integrator_for(double h) {
    for (auto& it : cache_) {
      if (it->step_size() == h) return *it;
    }
    cache_.push_back(std::make_unique<IntegratingFactorRk4>(grid_, diffusivities(f_, nu_), h));
    return *cache_.back();
  }

  Formulation f_;
  GridSpec grid_;
  double nu_;
  StepperConfig cfg_;
  NonlinearFn nonlinear_;
  std::vector<std::unique_ptr<IntegratingFactorRk4>> cache_;
};

void require_step_config(const StepperConfig& cfg) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw ConstraintError("dt must be > 0");
  if (!(cfg.t_end >= 0.0) || !std::isfinite(cfg.t_end)) {
    throw ConstraintError("t_end must be >= 0");
  }
}

long step_count(const StepperConfig& cfg) {
  if (cfg.t_end <= 0.0) return 0;
  return std::max(1L, static_cast<long>(std::ceil(cfg.t_end / cfg.dt - 1e-9)));
}

double step_time(long k, long count, const StepperConfig& cfg) {
  return k >= count ? cfg.t_end : static_cast<double>(k) * cfg.dt;
}

StateTolerances validation_tolerances(const StepperConfig& cfg) {
  StateTolerances tol;
  tol.pos_tol = cfg.check_positivity ? cfg.pos_tol : kInfinity;
  return tol;
}

}  // namespace

std::string to_string(Formulation f) {
  switch (f) {
    case Formulation::primal:
      return "primal";
    case Formulation::reform:
      return "reform";
    case Formulation::both:
      return "both";
  }
  return "reform";
}

Formulation formulation_from_string(const std::string& name) {
  if (name == "primal") return Formulation::primal;
  if (name == "reform") return Formulation::reform;
  if (name == "both") return Formulation::both;
  throw SchemaError("formulation: expected primal, reform or both, got \"" + name + "\"");
}

IntegratingFactorRk4::IntegratingFactorRk4(GridSpec grid, std::vector<double> diffusivities,
                                           double h)
    : grid_(grid), h_(h) {
  for (double kappa : diffusivities) {
    std::vector<double> full(grid.spectrum_size());
    std::vector<double> half(grid.spectrum_size());
    for_each_mode(grid, [&](int row, int col, int k1, int k2) {
      const std::size_t idx = static_cast<std::size_t>(row) * grid.half_columns() + col;
      const double rate = kappa * static_cast<double>(k1 * k1 + k2 * k2);
      full[idx] = std::exp(-rate * h);
      half[idx] = std::exp(-0.5 * rate * h);
    });
    full_.push_back(std::move(full));
    half_.push_back(std::move(half));
  }
}

void IntegratingFactorRk4::step(std::vector<Spectrum>& v, double t, const NonlinearFn& nonlinear) {
  const std::size_t m = v.size();
  if (m != full_.size()) {
    throw InvalidState("integrator expects " + std::to_string(full_.size()) + " components");
  }
  const double h = h_;

  nonlinear(t, v, k1_);
  stage_ = v;
  for (std::size_t c = 0; c < m; ++c) {
    stage_[c].add_scaled(k1_[c], 0.5 * h);
    scale_modes(stage_[c], half_[c]);
  }
  nonlinear(t + 0.5 * h, stage_, k2_);
  for (std::size_t c = 0; c < m; ++c) {
    stage_[c] = v[c];
    scale_modes(stage_[c], half_[c]);
    stage_[c].add_scaled(k2_[c], 0.5 * h);
  }
  nonlinear(t + 0.5 * h, stage_, k3_);
  for (std::size_t c = 0; c < m; ++c) {
    Spectrum pushed = k3_[c];
    scale_modes(pushed, half_[c]);
    stage_[c] = v[c];
    scale_modes(stage_[c], full_[c]);
    stage_[c].add_scaled(pushed, h);
  }
  nonlinear(t + h, stage_, k4_);
  for (std::size_t c = 0; c < m; ++c) {
    k2_[c] += k3_[c];
    scale_modes(k2_[c], half_[c]);
    k2_[c] *= 2.0;
    scale_modes(k1_[c], full_[c]);
    k2_[c] += k1_[c];
    scale_modes(v[c], full_[c]);
    v[c].add_scaled(k2_[c], h / 6.0);
    v[c].add_scaled(k4_[c], h / 6.0);
  }
}

void StructureLog::record(const StepReport& r) {
  max_div_drift = std::max(max_div_drift, r.div_drift);
  max_grad_drift = std::max(max_grad_drift, r.grad_drift);
  max_div_after = std::max(max_div_after, r.div_after);
  max_grad_after = std::max(max_grad_after, r.grad_after);
  if (r.reprojected) ++reprojections;
}

void StructureLog::merge(const StructureLog& o) {
  max_div_drift = std::max(max_div_drift, o.max_div_drift);
  max_grad_drift = std::max(max_grad_drift, o.max_grad_drift);
  max_div_after = std::max(max_div_after, o.max_div_after);
  max_grad_after = std::max(max_grad_after, o.max_grad_after);
  reprojections += o.reprojections;
}

PrimalState step(const PrimalState& s, const StepperConfig& cfg, StepReport* report) {
  require_step_config(cfg);
  Runner runner(Formulation::primal, s.grid(), s.nu, cfg);
  auto v = to_components(s);
  const StepReport rep = runner.advance(v, s.t, cfg.dt);
  if (report) *report = rep;
  return primal_from_components(v, s.t + cfg.dt, s.nu);
}

ReformState step(const ReformState& r, const StepperConfig& cfg, StepReport* report) {
  require_step_config(cfg);
  Runner runner(Formulation::reform, r.grid(), r.nu, cfg);
  auto v = to_components(r);
  const StepReport rep = runner.advance(v, r.t, cfg.dt);
  if (report) *report = rep;
  return reform_from_components(v, r.t + cfg.dt, r.nu);
}

double formulation_gap(const PrimalState& s, const ReformState& r) {
  return l2_norm(r.z - (s.n + s.p)) + l2_norm(r.xi - xi_from_charge(s.n, s.p, 1e-8));
}

namespace {

SimulationResult run(const std::optional<PrimalState>& primal0,
                     const std::optional<ReformState>& reform0, const StepperConfig& cfg,
                     const SimulationSchedule& schedule, const SimulationHooks& hooks) {
  const GridSpec grid = primal0 ? primal0->grid() : reform0->grid();
  const double nu = primal0 ? primal0->nu : reform0->nu;
  const MonitorContext ctx(grid, schedule.s1, schedule.s2, cfg.dealias);
  const int diag_every = std::max(1, schedule.diagnostics_every);

  std::optional<std::vector<Spectrum>> vp;
  std::optional<std::vector<Spectrum>> vr;
  if (primal0) vp = to_components(*primal0);
  if (reform0) vr = to_components(*reform0);
  std::optional<Runner> rp;
  std::optional<Runner> rr;
  if (vp) rp.emplace(Formulation::primal, grid, nu, cfg);
  if (vr) rr.emplace(Formulation::reform, grid, nu, cfg);

  SimulationResult result;
  const long count = step_count(cfg);

  auto sample = [&](long k) {
    const double t = step_time(k, count, cfg);
    std::optional<PrimalState> ps;
    std::optional<ReformState> rs;
    if (vp) ps = primal_from_components(*vp, t, nu);
    if (vr) rs = reform_from_components(*vr, t, nu);
    if (rs) {
      result.diagnostics.push_back(compute_record(*rs, ctx));
      if (ps) {
        result.diagnostics_primal.push_back(compute_record(*ps, ctx));
        result.gap.push_back({t, formulation_gap(*ps, *rs)});
      }
    } else {
      result.diagnostics.push_back(compute_record(*ps, ctx));
    }
  };
  auto snapshot = [&](long k) {
    if (!hooks.on_snapshot) return;
    const double t = step_time(k, count, cfg);
    std::optional<PrimalState> ps;
    std::optional<ReformState> rs;
    if (vp) ps = primal_from_components(*vp, t, nu);
    if (vr) rs = reform_from_components(*vr, t, nu);
    hooks.on_snapshot(k, ps ? &*ps : nullptr, rs ? &*rs : nullptr);
  };

  sample(0);
  if (schedule.snapshot_every > 0 && count > 0) snapshot(0);
  for (long k = 0; k < count; ++k) {
    const double t = step_time(k, count, cfg);
    const double h = step_time(k + 1, count, cfg) - t;
    StepReport rep_p;
    StepReport rep_r;
    if (vp && vr) {
      parallel_invoke([&] { rep_p = rp->advance(*vp, t, h); },
                      [&] { rep_r = rr->advance(*vr, t, h); });
    } else if (vp) {
      rep_p = rp->advance(*vp, t, h);
    } else {
      rep_r = rr->advance(*vr, t, h);
    }
    StepReport merged = vr ? rep_r : rep_p;
    if (vp && vr) {
      merged.div_drift = std::max(rep_p.div_drift, rep_r.div_drift);
      merged.div_after = std::max(rep_p.div_after, rep_r.div_after);
      merged.reprojected = rep_p.reprojected || rep_r.reprojected;
    }
    result.structure.record(merged);
    if (hooks.on_step) hooks.on_step(k, merged);

    const long done = k + 1;
    if (done % diag_every == 0 || done == count) sample(done);
    if (schedule.snapshot_every > 0 && done % schedule.snapshot_every == 0 && done != count) {
      snapshot(done);
    }
  }
  snapshot(count);

  result.steps = count;
  if (vp) result.primal = primal_from_components(*vp, cfg.t_end, nu);
  if (vr) result.reform = reform_from_components(*vr, cfg.t_end, nu);
  return result;
}

}  // namespace

SimulationResult simulate(const PrimalState& initial, const StepperConfig& cfg,
                          const SimulationSchedule& schedule, const SimulationHooks& hooks) {
  require_step_config(cfg);
  validate(initial, validation_tolerances(cfg));
  std::optional<PrimalState> p;
  std::optional<ReformState> r;
  if (cfg.formulation != Formulation::reform) p = initial;
  if (cfg.formulation != Formulation::primal) r = reform_from_primal(initial);
  return run(p, r, cfg, schedule, hooks);
}

SimulationResult simulate(const ReformState& initial, const StepperConfig& cfg,
                          const SimulationSchedule& schedule, const SimulationHooks& hooks) {
  require_step_config(cfg);
  validate(initial, validation_tolerances(cfg));
  return run(std::nullopt, initial, cfg, schedule, hooks);
}

double state_distance(const ReformState& a, const ReformState& b) {
  return l2_norm(a.u - b.u) + l2_norm(a.z - b.z) + l2_norm(a.xi - b.xi);
}

}  // namespace enpp
