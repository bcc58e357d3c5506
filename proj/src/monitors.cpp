#include "enpp/monitors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace enpp {
namespace {

// |grad f|^2 summed over the plane through Parseval, with the true |k|^2 of
// the Laplacian so that <f, Lap f> = -|grad f|^2 holds exactly.
double gradient_sq(const Spectrum& s) {
  const int n = s.grid().n_points();
  const double area = GridSpec::domain_length * GridSpec::domain_length;
  double total = 0.0;
  for_each_mode(s.grid(), [&](int row, int col, int k1, int k2) {
    const double w = (col == 0 || col == n / 2) ? 1.0 : 2.0;
    total += w * static_cast<double>(k1 * k1 + k2 * k2) * std::norm(s.at(row, col));
  });
  return area * total;
}

double gradient_sq(const VectorField& v) {
  return gradient_sq(to_spectrum(v.c1)) + gradient_sq(to_spectrum(v.c2));
}

double dissipation(const DiagnosticsRecord& r) {
  return r.grad_xi_sq + r.z_xi_sq + r.nu * r.grad_u_sq;
}

ScalarField maybe_dealias(const ScalarField& f, bool dealias) {
  return dealias ? enpp::dealias(f) : f;
}

}  // namespace

const std::vector<std::string>& diagnostics_columns() {
  static const std::vector<std::string> cols = {
      "t",         "energy",          "grad_xi_sq", "z_xi_sq",      "l2_ab",  "l4_ab",
      "linf_ab",   "min_a",           "min_b",      "div_u_res",    "grad_struct_res",
      "vort_res",  "besov_u_1inf",    "h_u_s1",     "h_z_s2",       "h_xi_s2p1",
      "xi_inf"};
  return cols;
}

std::vector<double> csv_values(const DiagnosticsRecord& r) {
  return {r.t,         r.energy,          r.grad_xi_sq, r.z_xi_sq,  r.l2_ab,  r.l4_ab,
          r.linf_ab,   r.min_a,           r.min_b,      r.div_u_res, r.grad_struct_res,
          r.vort_res,  r.besov_u_1inf,    r.h_u_s1,     r.h_z_s2,   r.h_xi_s2p1,
          r.xi_inf};
}

DiagnosticsRecord compute_record(const ReformState& r, const MonitorContext& ctx) {
  DiagnosticsRecord rec;
  rec.t = r.t;
  rec.nu = r.nu;
  rec.energy = 0.5 * (inner(r.u, r.u) + inner(r.xi, r.xi));
  rec.grad_xi_sq = gradient_sq(r.xi);
  rec.z_xi_sq = inner(r.z, dot(r.xi, r.xi));
  rec.grad_u_sq = gradient_sq(r.u);

  const auto [a, b] = ab_from_reform(r);
  rec.l2_ab = lp_norm(a, 2.0) + lp_norm(b, 2.0);
  rec.l4_ab = lp_norm(a, 4.0) + lp_norm(b, 4.0);
  rec.linf_ab = lp_norm(a, kInfinity) + lp_norm(b, kInfinity);
  rec.pow2_ab = lp_power(a, 2.0) + lp_power(b, 2.0);
  rec.pow4_ab = lp_power(a, 4.0) + lp_power(b, 4.0);
  rec.min_a = min_value(a);
  rec.min_b = min_value(b);
  rec.mean_a = mean(a);
  rec.mean_b = mean(b);
  rec.min_z = min_value(r.z);

  rec.div_u_res = max_abs(divergence(r.u));
  rec.grad_struct_res = max_abs(r.xi - grad_part_project(r.xi));
  rec.vort_res = vorticity_consistency(r, ctx.dealias);

  const RegularityNorms norms = regularity_track(r, ctx.family, ctx.s1, ctx.s2);
  rec.besov_u_1inf = norms.besov_u_1inf;
  rec.h_u_s1 = norms.h_u_s1;
  rec.h_z_s2 = norms.h_z_s2;
  rec.h_xi_s2p1 = norms.h_xi_s2p1;
  rec.xi_inf = norms.xi_inf;
  return rec;
}

DiagnosticsRecord compute_record(const PrimalState& s, const MonitorContext& ctx) {
  return compute_record(reform_from_primal(s), ctx);
}

double energy_balance(const DiagnosticsRecord& r0, const DiagnosticsRecord& r1) {
  const double dt = r1.t - r0.t;
  if (dt <= 0.0) return 0.0;
  return std::abs((r1.energy - r0.energy) / dt + 0.5 * (dissipation(r0) + dissipation(r1)));
}

double energy_tolerance(const std::vector<DiagnosticsRecord>& series, std::size_t k,
                        double c_e) {
  const double dt = series[k + 1].t - series[k].t;
  double curvature = 0.0;
  const std::size_t lo = k == 0 ? 1 : k;
  const std::size_t hi = std::min(k + 1, series.size() - 2);
  for (std::size_t j = lo; j <= hi && j + 1 < series.size(); ++j) {
    const double h1 = series[j].t - series[j - 1].t;
    const double h2 = series[j + 1].t - series[j].t;
    if (h1 <= 0.0 || h2 <= 0.0) continue;
    const double d = 2.0 *
                     ((dissipation(series[j + 1]) - dissipation(series[j])) / h2 -
                      (dissipation(series[j]) - dissipation(series[j - 1])) / h1) /
                     (h1 + h2);
    curvature = std::max(curvature, std::abs(d));
  }
  const double d_scale = std::max(dissipation(series[k]), dissipation(series[k + 1]));
  const double e_scale = std::max(series[k].energy, series[k + 1].energy);
  const double floor = 1e-9 * d_scale + 64.0 * std::numeric_limits<double>::epsilon() * e_scale / dt;
  return c_e * dt * dt * curvature + floor;
}

EnergyLawReport energy_law(const std::vector<DiagnosticsRecord>& series, double c_e) {
  EnergyLawReport rep;
  for (const auto& r : series) {
    if (r.min_z < -1e-10) rep.z_nonnegative = false;
  }
  if (series.size() < 2) return rep;
  const double e0 = series.front().energy;
  for (std::size_t k = 0; k + 1 < series.size(); ++k) {
    const double dt = series[k + 1].t - series[k].t;
    if (dt <= 0.0) continue;
    const double res = energy_balance(series[k], series[k + 1]);
    const double tol = energy_tolerance(series, k, c_e);
    rep.worst_residual = std::max(rep.worst_residual, res);
    rep.worst_ratio = std::max(rep.worst_ratio, res / tol);
    if (res > tol) rep.identity_ok = false;
    const double increase = series[k + 1].energy - series[k].energy;
    if (e0 > 0.0) rep.worst_increase = std::max(rep.worst_increase, increase / e0);
    if (increase > tol * dt + 1e-14 * e0) rep.monotone_ok = false;
  }
  return rep;
}

LpReport lp_monotonicity(const std::vector<DiagnosticsRecord>& series, double rel_tol) {
  LpReport rep;
  if (series.empty()) return rep;
  const auto& first = series.front();
  double min2 = first.pow2_ab;
  double min4 = first.pow4_ab;
  for (const auto& r : series) {
    const double over2 = first.pow2_ab > 0.0 ? (r.pow2_ab - min2) / first.pow2_ab : 0.0;
    const double over4 = first.pow4_ab > 0.0 ? (r.pow4_ab - min4) / first.pow4_ab : 0.0;
    rep.worst_p2 = std::max(rep.worst_p2, over2);
    rep.worst_p4 = std::max(rep.worst_p4, over4);
    if (over2 > rel_tol) rep.p2_ok = false;
    if (over4 > rel_tol) rep.p4_ok = false;
    min2 = std::min(min2, r.pow2_ab);
    min4 = std::min(min4, r.pow4_ab);
    if (first.linf_ab > 0.0) {
      rep.worst_pinf = std::max(rep.worst_pinf, r.linf_ab / first.linf_ab);
    }
    if (r.linf_ab > 2.0 * first.linf_ab * (1.0 + rel_tol)) rep.pinf_ok = false;
  }
  return rep;
}

PositivityResult positivity_check(const ReformState& r, double pos_tol) {
  const auto [a, b] = ab_from_reform(r);
  PositivityResult res{min_value(a), min_value(b), true};
  res.pass = res.min_a >= -10.0 * pos_tol && res.min_b >= -10.0 * pos_tol;
  return res;
}

PositivityResult positivity_check(const std::vector<DiagnosticsRecord>& series, double pos_tol) {
  PositivityResult res{kInfinity, kInfinity, true};
  for (const auto& r : series) {
    res.min_a = std::min(res.min_a, r.min_a);
    res.min_b = std::min(res.min_b, r.min_b);
  }
  if (series.empty()) res.min_a = res.min_b = 0.0;
  res.pass = res.min_a >= -10.0 * pos_tol && res.min_b >= -10.0 * pos_tol;
  return res;
}

double vorticity_consistency(const ReformState& r, const VectorField& du, bool dealias) {
  const ScalarField w = vorticity(r.u);
  const VectorField gw = gradient(w);
  const ScalarField adv =
      maybe_dealias(pointwise_product(r.u.c1, gw.c1) + pointwise_product(r.u.c2, gw.c2), dealias);
  const VectorField gq = gradient(divergence(r.xi));
  const ScalarField src = maybe_dealias(
      pointwise_product(gq.c2, r.xi.c1) - pointwise_product(gq.c1, r.xi.c2), dealias);
  const ScalarField dw = curl(du);
  ScalarField res = dw + adv - src;
  if (r.nu != 0.0) res -= r.nu * laplacian(w);
  const double scale = std::max({1.0, max_abs(dw), max_abs(adv), max_abs(src)});
  return max_abs(res) / scale;
}

double vorticity_consistency(const ReformState& r, bool dealias) {
  return vorticity_consistency(r, rhs_reform(r, dealias).du, dealias);
}

bool RegularityNorms::finite() const {
  return std::isfinite(h_u_s1) && std::isfinite(h_z_s2) && std::isfinite(h_xi_s2p1) &&
         std::isfinite(besov_u_1inf) && std::isfinite(xi_inf);
}

RegularityNorms regularity_track(const ReformState& r, const DyadicFamily& fam, double s1,
                                 double s2) {
  RegularityNorms n;
  n.h_u_s1 = sobolev_norm(r.u, s1, fam);
  n.h_z_s2 = sobolev_norm(r.z, s2, fam);
  n.h_xi_s2p1 = sobolev_norm(r.xi, s2 + 1.0, fam);
  n.besov_u_1inf = besov_norm(r.u, BesovParams{1.0, kInfinity, kInfinity}, fam);
  n.xi_inf = lp_norm(r.xi, kInfinity);
  return n;
}

RegularityNorms max_norms(const std::vector<DiagnosticsRecord>& series) {
  RegularityNorms m;
  for (const auto& r : series) {
    m.h_u_s1 = std::max(m.h_u_s1, r.h_u_s1);
    m.h_z_s2 = std::max(m.h_z_s2, r.h_z_s2);
    m.h_xi_s2p1 = std::max(m.h_xi_s2p1, r.h_xi_s2p1);
    m.besov_u_1inf = std::max(m.besov_u_1inf, r.besov_u_1inf);
    m.xi_inf = std::max(m.xi_inf, r.xi_inf);
  }
  return m;
}

ReformState heat_flow_state(GridSpec grid, double amplitude) {
  VectorField xi(ScalarField::from_function(grid, [&](double x1, double) {
                   return -amplitude * std::cos(x1);
                 }),
                 ScalarField(grid));
  return ReformState{VectorField(grid), ScalarField(grid), std::move(xi), 0.0, 0.0};
}

}  // namespace enpp
