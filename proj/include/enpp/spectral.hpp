#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "enpp/field.hpp"
#include "enpp/grid.hpp"

namespace enpp {

using Complex = std::complex<double>;

/// Fourier coefficients of a real field, coeff(k) = N^-2 sum_x f(x) e^{-i k.x}.
///
/// Storage is the real-to-complex half plane: row i holds k1 = wavenumber(i, N),
/// column j holds k2 = j for 0 <= j <= N/2. Coefficients with k2 < 0 are implied
/// by conjugate symmetry. The k2 = 0 and k2 = N/2 columns store both +k1 and -k1,
/// so conjugate symmetry there is a checked property rather than a given.
class Spectrum {
 public:
  explicit Spectrum(GridSpec grid);

  const GridSpec& grid() const noexcept { return grid_; }
  int rows() const noexcept { return grid_.n_points(); }
  int columns() const noexcept { return grid_.half_columns(); }

  /// Coefficient at integer wavevector k with |k_i| <= N/2.
  Complex coeff(int k1, int k2) const;
  /// Sets the coefficient at k. For k2 < 0 this stores conj(c) at -k.
  void set_coeff(int k1, int k2, Complex c);

  Complex& at(int row, int col) { return data_[index(row, col)]; }
  const Complex& at(int row, int col) const { return data_[index(row, col)]; }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }

  Spectrum& operator+=(const Spectrum& other);
  Spectrum& operator-=(const Spectrum& other);
  Spectrum& operator*=(double factor);
  /// this += factor * other
  Spectrum& add_scaled(const Spectrum& other, double factor);
  void set_zero();

  /// Largest |coeff(k) - conj(coeff(-k))| over the self-conjugate columns.
  double conjugate_asymmetry() const;

 private:
  std::size_t index(int row, int col) const noexcept {
    return static_cast<std::size_t>(row) * grid_.half_columns() + col;
  }

  GridSpec grid_;
  std::vector<Complex> data_;
};

/// Loops over every stored mode, passing (row, col, k1, k2).
template <typename F>
void for_each_mode(const GridSpec& grid, F&& f) {
  const int n = grid.n_points();
  const int cols = grid.half_columns();
  for (int row = 0; row < n; ++row) {
    const int k1 = wavenumber(row, n);
    for (int col = 0; col < cols; ++col) f(row, col, k1, col);
  }
}

Spectrum to_spectrum(const ScalarField& f);
/// Throws AsymmetricSpectrum if conjugate symmetry is violated beyond 1e-10
/// (relative to max(1, max |coeff|)).
ScalarField from_spectrum(const Spectrum& s);

/// Spectral partial derivative along axis 1 or 2 (multiplier i k_axis, Nyquist zeroed).
Spectrum derivative(const Spectrum& s, int axis);
ScalarField derivative(const ScalarField& f, int axis);

/// Multiplier -|k|^2.
Spectrum laplacian(const Spectrum& s);
ScalarField laplacian(const ScalarField& f);

/// Solves (-Laplacian) g = f with zero-mean gauge. Throws NonNeutralField when
/// |mean(f)| exceeds neutrality_tol.
ScalarField inv_neg_laplacian(const ScalarField& f, double neutrality_tol = 1e-10);
/// Spectral version: drops the zero mode silently.
Spectrum inv_neg_laplacian(const Spectrum& s);

ScalarField divergence(const VectorField& v);
VectorField gradient(const ScalarField& f);
/// Scalar curl with the convention curl v = d2 v1 - d1 v2.
ScalarField curl(const VectorField& v);

/// Leray projector P = Id - k k^T / |k|^2 (zero mode passed through).
VectorField leray_project(const VectorField& v);
void leray_project(Spectrum& s1, Spectrum& s2);
/// Gradient-part projector L = Id - P, with the zero mode of the result set to 0.
VectorField grad_part_project(const VectorField& v);
void grad_part_project(Spectrum& s1, Spectrum& s2);

/// Zeros every coefficient with max(|k1|, |k2|) > dealias_fraction * N / 2.
Spectrum dealias(const Spectrum& s);
void dealias_in_place(Spectrum& s);
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& v);
/// True when the coefficient at (k1, k2) survives dealiasing.
bool is_retained(const GridSpec& grid, int k1, int k2);

/// dealias(a * b), evaluated pointwise and truncated.
ScalarField dealiased_product(const ScalarField& a, const ScalarField& b);

/// Vorticity w = d2 u1 - d1 u2.
ScalarField vorticity(const VectorField& u);
/// Unique divergence-free u with vorticity w and spatial mean mean_u.
/// Throws NonNeutralField when |mean(w)| > 1e-10.
VectorField velocity_from_vorticity(const ScalarField& w, std::pair<double, double> mean_u);

}  // namespace enpp
