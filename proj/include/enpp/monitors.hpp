#pragma once

#include <string>
#include <vector>

#include "enpp/dynamics.hpp"
#include "enpp/littlewood_paley.hpp"

namespace enpp {

/// One sampled row of monitored quantities. The first block is the CSV row;
/// the rest are kept in memory for the monotonicity and balance checks.
struct DiagnosticsRecord {
  double t = 0.0;
  double energy = 0.0;      // (|u|^2 + |xi|^2) / 2
  double grad_xi_sq = 0.0;  // |grad xi|^2
  double z_xi_sq = 0.0;     // int z |xi|^2
  double l2_ab = 0.0;       // |a|_2 + |b|_2
  double l4_ab = 0.0;
  double linf_ab = 0.0;
  double min_a = 0.0;
  double min_b = 0.0;
  double div_u_res = 0.0;
  double grad_struct_res = 0.0;
  double vort_res = 0.0;
  double besov_u_1inf = 0.0;
  double h_u_s1 = 0.0;
  double h_z_s2 = 0.0;
  double h_xi_s2p1 = 0.0;
  double xi_inf = 0.0;

  double pow2_ab = 0.0;     // |a|_2^2 + |b|_2^2
  double pow4_ab = 0.0;     // |a|_4^4 + |b|_4^4
  double grad_u_sq = 0.0;   // |grad u|^2, for the viscous dissipation
  double nu = 0.0;
  double mean_a = 0.0;
  double mean_b = 0.0;
  double min_z = 0.0;
};

/// CSV column names, in order.
const std::vector<std::string>& diagnostics_columns();
/// The CSV row values, in column order.
std::vector<double> csv_values(const DiagnosticsRecord& r);

struct MonitorContext {
  DyadicFamily family;
  double s1 = 2.6;
  double s2 = 1.3;
  bool dealias = true;

  explicit MonitorContext(GridSpec grid, double s1_ = 2.6, double s2_ = 1.3, bool dealias_ = true)
      : family(grid), s1(s1_), s2(s2_), dealias(dealias_) {}
};

DiagnosticsRecord compute_record(const ReformState& r, const MonitorContext& ctx);
DiagnosticsRecord compute_record(const PrimalState& s, const MonitorContext& ctx);

/// |(E1 - E0)/dt + mean of the dissipation at both ends|, where the dissipation
/// is grad_xi_sq + z_xi_sq + nu |grad u|^2.
double energy_balance(const DiagnosticsRecord& r0, const DiagnosticsRecord& r1);

/// Trapezoid constant fitted on the heat-flow state, times a safety factor 2.
inline constexpr double kEnergyConstant = 2.0 / 12.0;

struct EnergyLawReport {
  double worst_residual = 0.0;
  double worst_ratio = 0.0;     // max residual / tolerance
  double worst_increase = 0.0;  // max (E1 - E0) over sample pairs, relative to E(0)
  bool identity_ok = true;
  bool monotone_ok = true;      // only meaningful when z >= 0
  bool z_nonnegative = true;
  bool ok() const { return identity_ok && (!z_nonnegative || monotone_ok); }
};

/// Residual tolerance for the pair (k, k+1): C_E dt^2 max|D''| + floor, with
/// D'' from second differences of the dissipation around the pair.
double energy_tolerance(const std::vector<DiagnosticsRecord>& series, std::size_t k,
                        double c_e = kEnergyConstant);
EnergyLawReport energy_law(const std::vector<DiagnosticsRecord>& series,
                           double c_e = kEnergyConstant);

struct LpReport {
  bool p2_ok = true;
  bool p4_ok = true;
  bool pinf_ok = true;
  double worst_p2 = 0.0;    // largest increase over the running minimum, relative to S(0)
  double worst_p4 = 0.0;
  double worst_pinf = 0.0;  // max linf_ab(t) / linf_ab(0)
  bool ok() const { return p2_ok && p4_ok && pinf_ok; }
};

LpReport lp_monotonicity(const std::vector<DiagnosticsRecord>& series, double rel_tol = 1e-6);

struct PositivityResult {
  double min_a = 0.0;
  double min_b = 0.0;
  bool pass = true;
};

PositivityResult positivity_check(const ReformState& r, double pos_tol = 1e-10);
PositivityResult positivity_check(const std::vector<DiagnosticsRecord>& series,
                                  double pos_tol = 1e-10);

/// |curl du + u.grad w - (d2(div xi) xi1 - d1(div xi) xi2) - nu Lap w|_inf
/// relative to max(1, size of the terms).
double vorticity_consistency(const ReformState& r, const VectorField& du, bool dealias = true);
double vorticity_consistency(const ReformState& r, bool dealias = true);

struct RegularityNorms {
  double h_u_s1 = 0.0;
  double h_z_s2 = 0.0;
  double h_xi_s2p1 = 0.0;
  double besov_u_1inf = 0.0;
  double xi_inf = 0.0;
  bool finite() const;
};

RegularityNorms regularity_track(const ReformState& r, const DyadicFamily& fam, double s1,
                                 double s2);

/// Component-wise maximum over a series, for the run summary.
RegularityNorms max_norms(const std::vector<DiagnosticsRecord>& series);

/// Reform-only state u = 0, z = 0, xi = amplitude (-cos x1, 0). Every energy term
/// but the heat flow is O(amplitude^3), so E(t) = E(0) e^{-2t} to O(amplitude^2).
ReformState heat_flow_state(GridSpec grid, double amplitude = 1e-5);

}  // namespace enpp
