#pragma once

#include <utility>
#include <vector>

#include "enpp/field.hpp"
#include "enpp/spectral.hpp"

namespace enpp {

/// Velocity u, negative charge n, positive charge p.
struct PrimalState {
  VectorField u;
  ScalarField n;
  ScalarField p;
  double t = 0.0;
  double nu = 0.0;

  const GridSpec& grid() const noexcept { return u.grid(); }
};

/// Velocity u, total charge z = n + p, field xi = grad phi.
struct ReformState {
  VectorField u;
  ScalarField z;
  VectorField xi;
  double t = 0.0;
  double nu = 0.0;

  const GridSpec& grid() const noexcept { return u.grid(); }
};

struct StateTolerances {
  double div_tol = 1e-8;
  double grad_tol = 1e-8;
  double pos_tol = 1e-10;
  double neutrality_tol = 1e-10;
};

/// Throws InvalidState (divergence, positivity, finiteness) or NonNeutralField.
void validate(const PrimalState& s, const StateTolerances& tol = {});
/// Throws InvalidState (divergence, gradient structure, a/b positivity, finiteness).
void validate(const ReformState& r, const StateTolerances& tol = {});

/// xi = -grad (-Lap)^-1 (n - p). Throws NonNeutralField.
VectorField xi_from_charge(const ScalarField& n, const ScalarField& p,
                           double neutrality_tol = 1e-10);
/// div xi, which equals n - p.
ScalarField charge_from_xi(const VectorField& xi);

ReformState reform_from_primal(const PrimalState& s);
PrimalState primal_from_reform(const ReformState& r);

/// a = (z + div xi) / 2 and b = (z - div xi) / 2.
std::pair<ScalarField, ScalarField> ab_from_reform(const ReformState& r);

struct PrimalRhs {
  VectorField du;
  ScalarField dn;
  ScalarField dp;
};

struct ReformRhs {
  VectorField du;
  ScalarField dz;
  VectorField dxi;
};

/// du = P(-u.grad u + (n - p) xi) + nu Lap u, dn = Lap n - div(n (u + xi)),
/// dp = Lap p - div(p (u - xi)).
PrimalRhs rhs_primal(const PrimalState& s, bool dealias = true);
/// du = P(-u.grad u + (div xi) xi) + nu Lap u, dz = Lap z - div(u z) - div((div xi) xi),
/// dxi = Lap xi - L(u div xi) - L(z xi).
ReformRhs rhs_reform(const ReformState& r, bool dealias = true);
/// da = -u.grad a + Lap a - div(a xi), db = -u.grad b + Lap b + div(b xi).
std::pair<ScalarField, ScalarField> rhs_ab(const ScalarField& a, const ScalarField& b,
                                           const VectorField& u, const VectorField& xi,
                                           bool dealias = true);

/// phi_0 = -(-Lap)^-1 div xi.
ScalarField recover_potential(const ReformState& r);
/// Zero-mean P_0 with -Lap P_0 = div(u.grad u) - div((div xi) xi).
ScalarField recover_pressure(const ReformState& r);

/// -Pi(u, u) = L(u.grad u) is what the velocity equation subtracts on top of
/// transport; returned here as Pi(u, u) = -L(u.grad u).
VectorField pressure_gradient_term(const VectorField& u, bool dealias = true);

// Spectral form used by the time integrators. Components are ordered
// u1, u2, n, p (primal) and u1, u2, z, xi1, xi2 (reform).

inline constexpr int kPrimalComponents = 4;
inline constexpr int kReformComponents = 5;

std::vector<Spectrum> to_components(const PrimalState& s);
std::vector<Spectrum> to_components(const ReformState& r);
PrimalState primal_from_components(const std::vector<Spectrum>& v, double t, double nu);
ReformState reform_from_components(const std::vector<Spectrum>& v, double t, double nu);

/// Everything in the primal RHS except the diffusion terms.
void primal_nonlinear(const std::vector<Spectrum>& v, std::vector<Spectrum>& out, bool dealias);
/// Everything in the reform RHS except the diffusion terms.
void reform_nonlinear(const std::vector<Spectrum>& v, std::vector<Spectrum>& out, bool dealias);

/// xi_hat = -i k' c_hat / |k'|^2 for charge c.
std::pair<Spectrum, Spectrum> xi_spectrum_from_charge(const Spectrum& c);

}  // namespace enpp
