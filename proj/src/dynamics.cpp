#include "enpp/dynamics.hpp"

#include <cmath>
#include <string>

#include "enpp/errors.hpp"

namespace enpp {
namespace {

// Divides by |k'|^2 (derivative wavenumbers) so that the inverse composes
// exactly with spectral gradients and divergences; the zero mode is dropped.
Spectrum inv_neg_lap_derivative(const Spectrum& s) {
  Spectrum out(s.grid());
  const int n = s.grid().n_points();
  for_each_mode(s.grid(), [&](int row, int col, int, int) {
    const double k1 = derivative_wavenumber(row, n);
    const double k2 = derivative_wavenumber(col, n);
    const double kk = k1 * k1 + k2 * k2;
    out.at(row, col) = kk == 0.0 ? Complex{} : s.at(row, col) / kk;
  });
  return out;
}

Spectrum divergence_spectrum(const Spectrum& a, const Spectrum& b) {
  Spectrum d = derivative(a, 1);
  d += derivative(b, 2);
  return d;
}

Spectrum transform(const ScalarField& f, bool dealias) {
  Spectrum s = to_spectrum(f);
  if (dealias) dealias_in_place(s);
  return s;
}

ScalarField product(const ScalarField& a, const ScalarField& b, bool dealias) {
  return dealias ? dealiased_product(a, b) : pointwise_product(a, b);
}

// a.grad b pointwise, for scalar b given through its gradient.
ScalarField advect(const ScalarField& u1, const ScalarField& u2, const ScalarField& d1,
                   const ScalarField& d2) {
  return pointwise_product(u1, d1) + pointwise_product(u2, d2);
}

struct Velocity {
  ScalarField u1, u2, d1u1, d2u1, d1u2, d2u2;
};

Velocity velocity_fields(const Spectrum& u1, const Spectrum& u2) {
  return {from_spectrum(u1),
          from_spectrum(u2),
          from_spectrum(derivative(u1, 1)),
          from_spectrum(derivative(u1, 2)),
          from_spectrum(derivative(u2, 1)),
          from_spectrum(derivative(u2, 2))};
}

void require_components(const std::vector<Spectrum>& v, int count) {
  if (static_cast<int>(v.size()) != count) {
    throw InvalidState("expected " + std::to_string(count) + " components, got " +
                       std::to_string(v.size()));
  }
}

void check_finite(const ScalarField& f, const char* name) {
  if (!all_finite(f)) throw InvalidState(std::string(name) + " has non-finite entries");
}

}  // namespace

std::pair<Spectrum, Spectrum> xi_spectrum_from_charge(const Spectrum& c) {
  const Spectrum phi = inv_neg_lap_derivative(c);  // xi = -grad phi'
  Spectrum x1 = derivative(phi, 1);
  Spectrum x2 = derivative(phi, 2);
  x1 *= -1.0;
  x2 *= -1.0;
  return {std::move(x1), std::move(x2)};
}

VectorField xi_from_charge(const ScalarField& n, const ScalarField& p, double neutrality_tol) {
  require_same_grid(n.grid(), p.grid());
  const ScalarField c = n - p;
  const double m = mean(c);
  if (std::abs(m) > neutrality_tol) {
    throw NonNeutralField("mean(n - p) = " + std::to_string(m));
  }
  auto [x1, x2] = xi_spectrum_from_charge(to_spectrum(c));
  return VectorField(from_spectrum(x1), from_spectrum(x2));
}

ScalarField charge_from_xi(const VectorField& xi) { return divergence(xi); }

void validate(const PrimalState& s, const StateTolerances& tol) {
  require_same_grid(s.u.grid(), s.n.grid());
  require_same_grid(s.u.grid(), s.p.grid());
  check_finite(s.u.c1, "u1");
  check_finite(s.u.c2, "u2");
  check_finite(s.n, "n");
  check_finite(s.p, "p");
  if (!(s.nu >= 0.0)) throw InvalidState("nu must be >= 0");
  const double div = max_abs(divergence(s.u));
  if (div > tol.div_tol) throw InvalidState("div u = " + std::to_string(div));
  if (min_value(s.n) < -tol.pos_tol) throw InvalidState("n is negative");
  if (min_value(s.p) < -tol.pos_tol) throw InvalidState("p is negative");
  const double gap = mean(s.n) - mean(s.p);
  if (std::abs(gap) > tol.neutrality_tol) {
    throw NonNeutralField("mean(n) - mean(p) = " + std::to_string(gap));
  }
}

void validate(const ReformState& r, const StateTolerances& tol) {
  require_same_grid(r.u.grid(), r.z.grid());
  require_same_grid(r.u.grid(), r.xi.grid());
  check_finite(r.u.c1, "u1");
  check_finite(r.u.c2, "u2");
  check_finite(r.z, "z");
  check_finite(r.xi.c1, "xi1");
  check_finite(r.xi.c2, "xi2");
  if (!(r.nu >= 0.0)) throw InvalidState("nu must be >= 0");
  const double div = max_abs(divergence(r.u));
  if (div > tol.div_tol) throw InvalidState("div u = " + std::to_string(div));
  const double grad = max_abs(r.xi - grad_part_project(r.xi));
  if (grad > tol.grad_tol) throw InvalidState("xi - L xi = " + std::to_string(grad));
  const auto [a, b] = ab_from_reform(r);
  if (min_value(a) < -tol.pos_tol) throw InvalidState("z + div xi is negative");
  if (min_value(b) < -tol.pos_tol) throw InvalidState("z - div xi is negative");
}

ReformState reform_from_primal(const PrimalState& s) {
  return ReformState{s.u, s.n + s.p, xi_from_charge(s.n, s.p), s.t, s.nu};
}

PrimalState primal_from_reform(const ReformState& r) {
  auto [a, b] = ab_from_reform(r);
  return PrimalState{r.u, std::move(a), std::move(b), r.t, r.nu};
}

std::pair<ScalarField, ScalarField> ab_from_reform(const ReformState& r) {
  const ScalarField q = divergence(r.xi);
  return {0.5 * (r.z + q), 0.5 * (r.z - q)};
}

std::vector<Spectrum> to_components(const PrimalState& s) {
  return {to_spectrum(s.u.c1), to_spectrum(s.u.c2), to_spectrum(s.n), to_spectrum(s.p)};
}

std::vector<Spectrum> to_components(const ReformState& r) {
  return {to_spectrum(r.u.c1), to_spectrum(r.u.c2), to_spectrum(r.z), to_spectrum(r.xi.c1),
          to_spectrum(r.xi.c2)};
}

PrimalState primal_from_components(const std::vector<Spectrum>& v, double t, double nu) {
  require_components(v, kPrimalComponents);
  return PrimalState{VectorField(from_spectrum(v[0]), from_spectrum(v[1])), from_spectrum(v[2]),
                     from_spectrum(v[3]), t, nu};
}

ReformState reform_from_components(const std::vector<Spectrum>& v, double t, double nu) {
  require_components(v, kReformComponents);
  return ReformState{VectorField(from_spectrum(v[0]), from_spectrum(v[1])), from_spectrum(v[2]),
                     VectorField(from_spectrum(v[3]), from_spectrum(v[4])), t, nu};
}

void primal_nonlinear(const std::vector<Spectrum>& v, std::vector<Spectrum>& out, bool dealias) {
  require_components(v, kPrimalComponents);
  Spectrum charge = v[2];
  charge -= v[3];
  const auto [x1h, x2h] = xi_spectrum_from_charge(charge);
  const Velocity vel = velocity_fields(v[0], v[1]);
  const ScalarField n = from_spectrum(v[2]);
  const ScalarField p = from_spectrum(v[3]);
  const ScalarField x1 = from_spectrum(x1h);
  const ScalarField x2 = from_spectrum(x2h);
  const ScalarField q = n - p;

  Spectrum f1 = transform(pointwise_product(q, x1) - advect(vel.u1, vel.u2, vel.d1u1, vel.d2u1),
                          dealias);
  Spectrum f2 = transform(pointwise_product(q, x2) - advect(vel.u1, vel.u2, vel.d1u2, vel.d2u2),
                          dealias);
  leray_project(f1, f2);

  Spectrum dn = divergence_spectrum(transform(pointwise_product(n, vel.u1 + x1), dealias),
                                    transform(pointwise_product(n, vel.u2 + x2), dealias));
  Spectrum dp = divergence_spectrum(transform(pointwise_product(p, vel.u1 - x1), dealias),
                                    transform(pointwise_product(p, vel.u2 - x2), dealias));
  dn *= -1.0;
  dp *= -1.0;

  out.clear();
  out.push_back(std::move(f1));
  out.push_back(std::move(f2));
  out.push_back(std::move(dn));
  out.push_back(std::move(dp));
}

void reform_nonlinear(const std::vector<Spectrum>& v, std::vector<Spectrum>& out, bool dealias) {
  require_components(v, kReformComponents);
  const Velocity vel = velocity_fields(v[0], v[1]);
  const ScalarField z = from_spectrum(v[2]);
  const ScalarField x1 = from_spectrum(v[3]);
  const ScalarField x2 = from_spectrum(v[4]);
  const ScalarField q = from_spectrum(divergence_spectrum(v[3], v[4]));

  const ScalarField qx1 = pointwise_product(q, x1);
  const ScalarField qx2 = pointwise_product(q, x2);

  Spectrum f1 = transform(qx1 - advect(vel.u1, vel.u2, vel.d1u1, vel.d2u1), dealias);
  Spectrum f2 = transform(qx2 - advect(vel.u1, vel.u2, vel.d1u2, vel.d2u2), dealias);
  leray_project(f1, f2);

  Spectrum dz = divergence_spectrum(transform(pointwise_product(vel.u1, z) + qx1, dealias),
                                    transform(pointwise_product(vel.u2, z) + qx2, dealias));
  dz *= -1.0;

  Spectrum s1 = transform(pointwise_product(vel.u1, q) + pointwise_product(z, x1), dealias);
  Spectrum s2 = transform(pointwise_product(vel.u2, q) + pointwise_product(z, x2), dealias);
  grad_part_project(s1, s2);
  s1 *= -1.0;
  s2 *= -1.0;

  out.clear();
  out.push_back(std::move(f1));
  out.push_back(std::move(f2));
  out.push_back(std::move(dz));
  out.push_back(std::move(s1));
  out.push_back(std::move(s2));
}

PrimalRhs rhs_primal(const PrimalState& s, bool dealias) {
  const auto v = to_components(s);
  std::vector<Spectrum> out;
  primal_nonlinear(v, out, dealias);
  out[0].add_scaled(laplacian(v[0]), s.nu);
  out[1].add_scaled(laplacian(v[1]), s.nu);
  out[2] += laplacian(v[2]);
  out[3] += laplacian(v[3]);
  return PrimalRhs{VectorField(from_spectrum(out[0]), from_spectrum(out[1])),
                   from_spectrum(out[2]), from_spectrum(out[3])};
}

ReformRhs rhs_reform(const ReformState& r, bool dealias) {
  const auto v = to_components(r);
  std::vector<Spectrum> out;
  reform_nonlinear(v, out, dealias);
  out[0].add_scaled(laplacian(v[0]), r.nu);
  out[1].add_scaled(laplacian(v[1]), r.nu);
  for (int c = 2; c < kReformComponents; ++c) out[c] += laplacian(v[c]);
  return ReformRhs{VectorField(from_spectrum(out[0]), from_spectrum(out[1])),
                   from_spectrum(out[2]),
                   VectorField(from_spectrum(out[3]), from_spectrum(out[4]))};
}

std::pair<ScalarField, ScalarField> rhs_ab(const ScalarField& a, const ScalarField& b,
                                           const VectorField& u, const VectorField& xi,
                                           bool dealias) {
  require_same_grid(a.grid(), b.grid());
  require_same_grid(a.grid(), u.grid());
  require_same_grid(a.grid(), xi.grid());
  auto transport = [&](const ScalarField& f) {
    const VectorField g = gradient(f);
    return product(u.c1, g.c1, dealias) + product(u.c2, g.c2, dealias);
  };
  auto flux_div = [&](const ScalarField& f) {
    return divergence(VectorField(product(f, xi.c1, dealias), product(f, xi.c2, dealias)));
  };
  ScalarField da = laplacian(a) - transport(a) - flux_div(a);
  ScalarField db = laplacian(b) - transport(b) + flux_div(b);
  return {std::move(da), std::move(db)};
}

ScalarField recover_potential(const ReformState& r) {
  Spectrum phi = inv_neg_lap_derivative(
      divergence_spectrum(to_spectrum(r.xi.c1), to_spectrum(r.xi.c2)));
  phi *= -1.0;
  return from_spectrum(phi);
}

ScalarField recover_pressure(const ReformState& r) {
  const Velocity vel = velocity_fields(to_spectrum(r.u.c1), to_spectrum(r.u.c2));
  const ScalarField q = divergence(r.xi);
  const ScalarField s1 = advect(vel.u1, vel.u2, vel.d1u1, vel.d2u1) - pointwise_product(q, r.xi.c1);
  const ScalarField s2 = advect(vel.u1, vel.u2, vel.d1u2, vel.d2u2) - pointwise_product(q, r.xi.c2);
  return from_spectrum(
      inv_neg_lap_derivative(divergence_spectrum(transform(s1, true), transform(s2, true))));
}

VectorField pressure_gradient_term(const VectorField& u, bool dealias) {
  const Velocity vel = velocity_fields(to_spectrum(u.c1), to_spectrum(u.c2));
  Spectrum a1 = transform(advect(vel.u1, vel.u2, vel.d1u1, vel.d2u1), dealias);
  Spectrum a2 = transform(advect(vel.u1, vel.u2, vel.d1u2, vel.d2u2), dealias);
  grad_part_project(a1, a2);
  a1 *= -1.0;
  a2 *= -1.0;
  return VectorField(from_spectrum(a1), from_spectrum(a2));
}

}  // namespace enpp
