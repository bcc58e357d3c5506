#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "enpp/dynamics.hpp"
#include "enpp/monitors.hpp"

namespace enpp {

enum class Formulation { primal, reform, both };

std::string to_string(Formulation f);
/// Throws SchemaError for unknown names.
Formulation formulation_from_string(const std::string& name);

struct StepperConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  Formulation formulation = Formulation::reform;
  bool dealias = true;
  double cfl = 0.5;
  double pos_tol = 1e-10;
  /// Abort when min(a), min(b) < -10 pos_tol after a step.
  bool check_positivity = true;
  /// Re-project u and xi when their structure residual exceeds this.
  double reproject_tol = 1e-12;
};

/// Right-hand side without the diffusion terms: out = N(t, v).
using NonlinearFn =
    std::function<void(double t, const std::vector<Spectrum>& v, std::vector<Spectrum>& out)>;

/// Lawson integrating-factor RK4. Component c diffuses with coefficient
/// diffusivity[c]; that part is integrated exactly per mode, the rest with
/// classical RK4 on the transformed variable.
class IntegratingFactorRk4 {
 public:
  IntegratingFactorRk4(GridSpec grid, std::vector<double> diffusivities, double h);

  double step_size() const noexcept { return h_; }
  /// Advances v from t to t + h.
  void step(std::vector<Spectrum>& v, double t, const NonlinearFn& nonlinear);

 private:
  GridSpec grid_;
  double h_;
  std::vector<std::vector<double>> full_;  // e^{-kappa |k|^2 h}
  std::vector<std::vector<double>> half_;  // e^{-kappa |k|^2 h / 2}
  std::vector<Spectrum> k1_, k2_, k3_, k4_, stage_;
};

/// Structure residuals around one step.
struct StepReport {
  double div_drift = 0.0;   // |div u|_inf before re-projection
  double grad_drift = 0.0;  // |xi - L xi|_inf before re-projection
  double div_after = 0.0;
  double grad_after = 0.0;
  bool reprojected = false;
};

/// One step of the chosen formulation. Throws CflViolation before stepping and
/// InvariantDrift on a positivity violation after it.
PrimalState step(const PrimalState& s, const StepperConfig& cfg, StepReport* report = nullptr);
ReformState step(const ReformState& r, const StepperConfig& cfg, StepReport* report = nullptr);

struct SimulationSchedule {
  int diagnostics_every = 10;  // steps between records; the final state is always recorded
  int snapshot_every = 0;      // 0: final snapshot only
  double s1 = 2.6;
  double s2 = 1.3;
};

struct SimulationHooks {
  /// Called with the step index and the current states (null when absent).
  std::function<void(long step, const PrimalState*, const ReformState*)> on_snapshot;
  std::function<void(long step, const StepReport&)> on_step;
};

struct GapSample {
  double t = 0.0;
  double gap = 0.0;  // |z - (n + p)|_2 + |xi - xi_from_charge(n, p)|_2
};

struct StructureLog {
  double max_div_drift = 0.0;
  double max_grad_drift = 0.0;
  double max_div_after = 0.0;
  double max_grad_after = 0.0;
  long reprojections = 0;

  void record(const StepReport& r);
  void merge(const StructureLog& other);
};

struct SimulationResult {
  std::optional<PrimalState> primal;
  std::optional<ReformState> reform;
  /// Reform-side records; for a primal-only run, records of the converted state.
  std::vector<DiagnosticsRecord> diagnostics;
  /// Primal-side records of a "both" run.
  std::vector<DiagnosticsRecord> diagnostics_primal;
  std::vector<GapSample> gap;
  StructureLog structure;
  long steps = 0;
};

/// Cross-formulation gap between matched states.
double formulation_gap(const PrimalState& s, const ReformState& r);

/// Runs from the initial primal state to cfg.t_end. The reform side starts from
/// reform_from_primal(initial).
SimulationResult simulate(const PrimalState& initial, const StepperConfig& cfg,
                          const SimulationSchedule& schedule, const SimulationHooks& hooks = {});
/// Reform-only run from a reform state (cfg.formulation is ignored).
SimulationResult simulate(const ReformState& initial, const StepperConfig& cfg,
                          const SimulationSchedule& schedule, const SimulationHooks& hooks = {});

struct PicardConfig {
  double T = 0.1;
  int m_max = 8;
  double dt = 1e-3;
  double s1 = 2.6;
  double s2 = 1.3;
  bool dealias = true;
  /// Ratio above which a step counts as non-contracting; three in a row abort.
  double stall_ratio = 0.95;
};

struct PicardRow {
  int m = 0;
  double E = 0.0;      // sup_t |u^m|_{H^s1} + sup_t |z^m|_{H^s2} + sup_t |xi^m|_{H^{s2+1}}
  double F = 0.0;      // same in H^{s1-1}, H^{s2-1}, H^{s2} for iterate m+1 minus iterate m
  double ratio = 0.0;  // F_{m+1} / F_m, 0 when both vanish
  bool has_F = false;
  bool has_ratio = false;
};

struct PicardReport {
  std::vector<PicardRow> rows;  // m = 0 .. m_max
  /// Iterates at t = T, indexed by m.
  std::vector<ReformState> finals;
};

/// Throws ConstraintError for an invalid configuration and NoContraction when
/// the ratio exceeds stall_ratio three times in a row.
PicardReport picard_solve(const ReformState& initial, const PicardConfig& cfg);

/// L^2 distance |u - u'| + |z - z'| + |xi - xi'|.
double state_distance(const ReformState& a, const ReformState& b);

}  // namespace enpp
