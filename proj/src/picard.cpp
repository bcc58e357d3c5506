#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "enpp/errors.hpp"
#include "enpp/integrator.hpp"

namespace enpp {
namespace {

using Sample = std::vector<Spectrum>;  // u1, u2, z, xi1, xi2
using Trajectory = std::vector<Sample>;

void require_picard_config(const PicardConfig& cfg) {
  if (!(cfg.T > 0.0) || !std::isfinite(cfg.T)) throw ConstraintError("T must be > 0");
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw ConstraintError("dt must be > 0");
  if (cfg.m_max < 1) throw ConstraintError("m_max must be >= 1");
  if (!(cfg.s1 > 2.0)) throw ConstraintError("s1 > 2 violated");
  if (!(cfg.s2 > 1.0)) throw ConstraintError("s2 > 1 violated");
  if (!(cfg.s2 + 1.5 > cfg.s1)) throw ConstraintError("s2 + 3/2 > s1 violated");
  if (!(cfg.s1 >= cfg.s2 + 1.0)) throw ConstraintError("s1 >= s2 + 1 violated");
}

Spectrum heat(const Spectrum& s, double t) {
  Spectrum out = s;
  for_each_mode(s.grid(), [&](int row, int col, int k1, int k2) {
    out.at(row, col) *= std::exp(-static_cast<double>(k1 * k1 + k2 * k2) * t);
  });
  return out;
}

Spectrum transform(const ScalarField& f, bool dealias) {
  Spectrum s = to_spectrum(f);
  if (dealias) dealias_in_place(s);
  return s;
}

// Cubic Lagrange interpolation of a trajectory stored at t_k = k h.
void interpolate(const Trajectory& traj, double h, double tau, Sample& out) {
  const int last = static_cast<int>(traj.size()) - 1;
  const double s = tau / h;
  const double nearest = std::round(s);
  if (std::abs(s - nearest) < 1e-9) {
    out = traj[std::clamp(static_cast<int>(nearest), 0, last)];
    return;
  }
  const int points = std::min(4, last + 1);
  const int i = static_cast<int>(std::floor(s));
  const int base = std::clamp(i - (points / 2 - 1), 0, last + 1 - points);
  out = traj[base];
  for (auto& c : out) c.set_zero();
  for (int a = 0; a < points; ++a) {
    double w = 1.0;
    for (int b = 0; b < points; ++b) {
      if (b != a) w *= (s - (base + b)) / static_cast<double>(a - b);
    }
    for (std::size_t c = 0; c < out.size(); ++c) out[c].add_scaled(traj[base + a][c], w);
  }
}

// Coefficients of the linear problem, frozen at iterate m and time tau.
struct Frozen {
  double tau = 0.0;
  ScalarField u1, u2;
  Sample forcing;  // everything but the transport of the new velocity
};

Frozen freeze(const Sample& m, double tau, bool dealias) {
  const ScalarField u1 = from_spectrum(m[0]);
  const ScalarField u2 = from_spectrum(m[1]);
  const ScalarField z = from_spectrum(m[2]);
  const ScalarField x1 = from_spectrum(m[3]);
  const ScalarField x2 = from_spectrum(m[4]);
  Spectrum qh = derivative(m[3], 1);
  qh += derivative(m[4], 2);
  const ScalarField q = from_spectrum(qh);

  auto advect = [&](const Spectrum& f) {
    return pointwise_product(u1, from_spectrum(derivative(f, 1))) +
           pointwise_product(u2, from_spectrum(derivative(f, 2)));
  };
  // -Pi(u, u) = L(u.grad u)
  Spectrum l1 = transform(advect(m[0]), dealias);
  Spectrum l2 = transform(advect(m[1]), dealias);
  grad_part_project(l1, l2);
  const ScalarField qx1 = pointwise_product(q, x1);
  const ScalarField qx2 = pointwise_product(q, x2);
  Spectrum p1 = transform(qx1, dealias);
  Spectrum p2 = transform(qx2, dealias);
  leray_project(p1, p2);
  l1 += p1;
  l2 += p2;

  Spectrum fz = derivative(transform(pointwise_product(u1, z) + qx1, dealias), 1);
  fz += derivative(transform(pointwise_product(u2, z) + qx2, dealias), 2);
  fz *= -1.0;

  Spectrum s1 = transform(pointwise_product(u1, q) + pointwise_product(z, x1), dealias);
  Spectrum s2 = transform(pointwise_product(u2, q) + pointwise_product(z, x2), dealias);
  grad_part_project(s1, s2);
  s1 *= -1.0;
  s2 *= -1.0;

  Frozen f{tau, u1, u2, {}};
  f.forcing.push_back(std::move(l1));
  f.forcing.push_back(std::move(l2));
  f.forcing.push_back(std::move(fz));
  f.forcing.push_back(std::move(s1));
  f.forcing.push_back(std::move(s2));
  return f;
}

Trajectory solve_linear(const Trajectory& prev, const Sample& initial, double h, double nu,
                        bool dealias) {
  const GridSpec grid = initial[0].grid();
  IntegratingFactorRk4 rk(grid, {nu, nu, 1.0, 1.0, 1.0}, h);
  std::deque<Frozen> cache;
  Sample scratch;
  auto frozen_at = [&](double tau) -> const Frozen& {
    for (const auto& f : cache) {
      if (f.tau == tau) return f;
    }
    interpolate(prev, h, tau, scratch);
    cache.push_back(freeze(scratch, tau, dealias));
    if (cache.size() > 3) cache.pop_front();
    return cache.back();
  };
  const NonlinearFn rhs = [&](double tau, const Sample& v, Sample& out) {
    const Frozen& f = frozen_at(tau);
    out = f.forcing;
    for (int c = 0; c < 2; ++c) {
      const ScalarField tr = pointwise_product(f.u1, from_spectrum(derivative(v[c], 1))) +
                             pointwise_product(f.u2, from_spectrum(derivative(v[c], 2)));
      out[c].add_scaled(transform(tr, dealias), -1.0);
    }
  };

  Trajectory next;
  next.reserve(prev.size());
  next.push_back(initial);
  Sample v = initial;
  for (std::size_t k = 0; k + 1 < prev.size(); ++k) {
    rk.step(v, static_cast<double>(k) * h, rhs);
    next.push_back(v);
  }
  return next;
}

double vector_norm(const Spectrum& a, const Spectrum& b, double s, const DyadicFamily& fam) {
  return std::hypot(sobolev_norm(a, s, fam), sobolev_norm(b, s, fam));
}

// sup_t |u|_{H^{s_u}} + sup_t |z|_{H^{s_z}} + sup_t |xi|_{H^{s_z + 1}}
double size_functional(const Trajectory& traj, const Trajectory* minus, double s_u, double s_z,
                       const DyadicFamily& fam) {
  double su = 0.0;
  double sz = 0.0;
  double sx = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    Sample d = traj[k];
    if (minus) {
      for (std::size_t c = 0; c < d.size(); ++c) d[c] -= (*minus)[k][c];
    }
    su = std::max(su, vector_norm(d[0], d[1], s_u, fam));
    sz = std::max(sz, sobolev_norm(d[2], s_z, fam));
    sx = std::max(sx, vector_norm(d[3], d[4], s_z + 1.0, fam));
  }
  return su + sz + sx;
}

}  // namespace

PicardReport picard_solve(const ReformState& initial, const PicardConfig& cfg) {
  require_picard_config(cfg);
  const GridSpec grid = initial.grid();
  const DyadicFamily fam(grid);
  const long steps = std::max(1L, std::lround(cfg.T / cfg.dt));
  const double h = cfg.T / static_cast<double>(steps);
  const Sample v0 = to_components(initial);

  Trajectory current;
  current.reserve(steps + 1);
  for (long k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * h;
    current.push_back({v0[0], v0[1], heat(v0[2], t), heat(v0[3], t), heat(v0[4], t)});
  }

  PicardReport report;
  auto final_state = [&](const Trajectory& traj) {
    return reform_from_components(traj.back(), cfg.T, initial.nu);
  };
  report.rows.push_back({0, size_functional(current, nullptr, cfg.s1, cfg.s2, fam)});
  report.finals.push_back(final_state(current));

  int stalls = 0;
  double e_max = report.rows.front().E;
  for (int m = 0; m < cfg.m_max; ++m) {
    Trajectory next = solve_linear(current, v0, h, initial.nu, cfg.dealias);
    const double F = size_functional(next, &current, cfg.s1 - 1.0, cfg.s2 - 1.0, fam);
    report.rows[m].F = F;
    report.rows[m].has_F = true;
    report.rows.push_back({m + 1, size_functional(next, nullptr, cfg.s1, cfg.s2, fam)});
    report.finals.push_back(final_state(next));
    e_max = std::max(e_max, report.rows.back().E);
    if (m >= 1) {
      PicardRow& prev = report.rows[m - 1];
      prev.ratio = prev.F > 0.0 ? F / prev.F : 0.0;
      prev.has_ratio = true;
      // Gaps at rounding level carry no contraction information.
      const bool resolved = F > 1e-12 * std::max(1.0, e_max);
      stalls = (resolved && prev.ratio > cfg.stall_ratio) ? stalls + 1 : 0;
      if (stalls >= 3) {
        throw NoContraction("F ratio above " + std::to_string(cfg.stall_ratio) +
                            " for three consecutive iterates ending at m = " +
                            std::to_string(m - 1) + "; reduce T");
      }
    }
    current = std::move(next);
  }
  return report;
}

}  // namespace enpp
