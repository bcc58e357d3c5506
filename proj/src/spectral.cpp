#include "enpp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "enpp/errors.hpp"
#include "fft.hpp"

namespace enpp {

Spectrum::Spectrum(GridSpec grid) : grid_(grid), data_(grid.spectrum_size(), Complex{}) {}

Complex Spectrum::coeff(int k1, int k2) const {
  const int n = grid_.n_points();
  if (std::abs(k1) > n / 2 || std::abs(k2) > n / 2) return {};
  if (k2 < 0) return std::conj(coeff(-k1, -k2));
  const int row = ((k1 % n) + n) % n;
  return at(row, k2);
}

void Spectrum::set_coeff(int k1, int k2, Complex c) {
  const int n = grid_.n_points();
  if (k2 < 0) {
    set_coeff(-k1, -k2, std::conj(c));
    return;
  }
  const int row = ((k1 % n) + n) % n;
  at(row, k2) = c;
}

Spectrum& Spectrum::operator+=(const Spectrum& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Spectrum& Spectrum::operator-=(const Spectrum& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Spectrum& Spectrum::operator*=(double factor) {
  for (auto& c : data_) c *= factor;
  return *this;
}

Spectrum& Spectrum::add_scaled(const Spectrum& other, double factor) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += factor * other.data_[k];
  return *this;
}

void Spectrum::set_zero() { std::fill(data_.begin(), data_.end(), Complex{}); }

double Spectrum::conjugate_asymmetry() const {
  const int n = grid_.n_points();
  double worst = 0.0;
  for (int col : {0, n / 2}) {
    for (int row = 0; row < n; ++row) {
      const int mirror = (n - row) % n;
      worst = std::max(worst, std::abs(at(row, col) - std::conj(at(mirror, col))));
    }
  }
  return worst;
}

Spectrum to_spectrum(const ScalarField& f) {
  Spectrum s(f.grid());
  const int n = f.n_points();
  detail::fft_forward(n, f.values().data(), s.data().data());
  s *= 1.0 / static_cast<double>(f.grid().size());
  return s;
}

ScalarField from_spectrum(const Spectrum& s) {
  double scale = 1.0;
  for (const auto& c : s.data()) scale = std::max(scale, std::abs(c));
  const double asym = s.conjugate_asymmetry();
  if (asym > 1e-10 * scale) {
    throw AsymmetricSpectrum("conjugate symmetry violated by " + std::to_string(asym));
  }
  ScalarField f(s.grid());
  detail::fft_inverse(s.grid().n_points(), s.data().data(), f.values().data());
  return f;
}

Spectrum derivative(const Spectrum& s, int axis) {
  Spectrum out(s.grid());
  const int n = s.grid().n_points();
  for_each_mode(s.grid(), [&](int row, int col, int, int) {
    const int k = axis == 1 ? derivative_wavenumber(row, n) : derivative_wavenumber(col, n);
    out.at(row, col) = Complex(0.0, k) * s.at(row, col);
  });
  return out;
}

ScalarField derivative(const ScalarField& f, int axis) {
  return from_spectrum(derivative(to_spectrum(f), axis));
}

Spectrum laplacian(const Spectrum& s) {
  Spectrum out(s.grid());
  for_each_mode(s.grid(), [&](int row, int col, int k1, int k2) {
    out.at(row, col) = -static_cast<double>(k1 * k1 + k2 * k2) * s.at(row, col);
  });
  return out;
}

ScalarField laplacian(const ScalarField& f) { return from_spectrum(laplacian(to_spectrum(f))); }

Spectrum inv_neg_laplacian(const Spectrum& s) {
  Spectrum out(s.grid());
  for_each_mode(s.grid(), [&](int row, int col, int k1, int k2) {
    const int kk = k1 * k1 + k2 * k2;
    out.at(row, col) = kk == 0 ? Complex{} : s.at(row, col) / static_cast<double>(kk);
  });
  return out;
}

ScalarField inv_neg_laplacian(const ScalarField& f, double neutrality_tol) {
  const double m = mean(f);
  if (std::abs(m) > neutrality_tol) {
    throw NonNeutralField("mean " + std::to_string(m) + " exceeds tolerance");
  }
  return from_spectrum(inv_neg_laplacian(to_spectrum(f)));
}

ScalarField divergence(const VectorField& v) {
  Spectrum d = derivative(to_spectrum(v.c1), 1);
  d += derivative(to_spectrum(v.c2), 2);
  return from_spectrum(d);
}

VectorField gradient(const ScalarField& f) {
  const Spectrum s = to_spectrum(f);
  return VectorField(from_spectrum(derivative(s, 1)), from_spectrum(derivative(s, 2)));
}

ScalarField curl(const VectorField& v) {
  Spectrum c = derivative(to_spectrum(v.c1), 2);
  c -= derivative(to_spectrum(v.c2), 1);
  return from_spectrum(c);
}

void leray_project(Spectrum& s1, Spectrum& s2) {
  require_same_grid(s1.grid(), s2.grid());
  const int n = s1.grid().n_points();
  for_each_mode(s1.grid(), [&](int row, int col, int, int) {
    const double k1 = derivative_wavenumber(row, n);
    const double k2 = derivative_wavenumber(col, n);
    const double kk = k1 * k1 + k2 * k2;
    if (kk == 0.0) return;
    const Complex proj = (k1 * s1.at(row, col) + k2 * s2.at(row, col)) / kk;
    s1.at(row, col) -= k1 * proj;
    s2.at(row, col) -= k2 * proj;
  });
}

void grad_part_project(Spectrum& s1, Spectrum& s2) {
  require_same_grid(s1.grid(), s2.grid());
  const int n = s1.grid().n_points();
  for_each_mode(s1.grid(), [&](int row, int col, int, int) {
    const double k1 = derivative_wavenumber(row, n);
    const double k2 = derivative_wavenumber(col, n);
    const double kk = k1 * k1 + k2 * k2;
    if (kk == 0.0) {
      s1.at(row, col) = Complex{};
      s2.at(row, col) = Complex{};
      return;
    }
    const Complex proj = (k1 * s1.at(row, col) + k2 * s2.at(row, col)) / kk;
    s1.at(row, col) = k1 * proj;
    s2.at(row, col) = k2 * proj;
  });
}

VectorField leray_project(const VectorField& v) {
  Spectrum a = to_spectrum(v.c1);
  Spectrum b = to_spectrum(v.c2);
  leray_project(a, b);
  return VectorField(from_spectrum(a), from_spectrum(b));
}

VectorField grad_part_project(const VectorField& v) {
  Spectrum a = to_spectrum(v.c1);
  Spectrum b = to_spectrum(v.c2);
  grad_part_project(a, b);
  return VectorField(from_spectrum(a), from_spectrum(b));
}

bool is_retained(const GridSpec& grid, int k1, int k2) {
  const double cutoff = grid.dealias_cutoff() + 1e-9;
  return std::abs(k1) <= cutoff && std::abs(k2) <= cutoff;
}

void dealias_in_place(Spectrum& s) {
  const GridSpec& grid = s.grid();
  for_each_mode(grid, [&](int row, int col, int k1, int k2) {
    if (!is_retained(grid, k1, k2)) s.at(row, col) = Complex{};
  });
}

Spectrum dealias(const Spectrum& s) {
  Spectrum out = s;
  dealias_in_place(out);
  return out;
}

ScalarField dealias(const ScalarField& f) { return from_spectrum(dealias(to_spectrum(f))); }

VectorField dealias(const VectorField& v) { return VectorField(dealias(v.c1), dealias(v.c2)); }

ScalarField dealiased_product(const ScalarField& a, const ScalarField& b) {
  return dealias(pointwise_product(a, b));
}

ScalarField vorticity(const VectorField& u) { return curl(u); }

VectorField velocity_from_vorticity(const ScalarField& w, std::pair<double, double> mean_u) {
  const double m = mean(w);
  if (std::abs(m) > 1e-10) {
    throw NonNeutralField("vorticity mean " + std::to_string(m) + " exceeds tolerance");
  }
  // w = d2 u1 - d1 u2 with u = (d2 psi, -d1 psi) gives Laplacian(psi) = w. The
  // inversion uses the derivative symbol so the round trip is exact off the
  // Nyquist corners.
  const Spectrum ws = to_spectrum(w);
  Spectrum psi(w.grid());
  const int n = w.n_points();
  for_each_mode(w.grid(), [&](int row, int col, int, int) {
    const double k1 = derivative_wavenumber(row, n);
    const double k2 = derivative_wavenumber(col, n);
    const double kk = k1 * k1 + k2 * k2;
    psi.at(row, col) = kk == 0.0 ? Complex{} : -ws.at(row, col) / kk;
  });
  Spectrum u1 = derivative(psi, 2);
  Spectrum u2 = derivative(psi, 1);
  u2 *= -1.0;
  u1.at(0, 0) = mean_u.first;
  u2.at(0, 0) = mean_u.second;
  return VectorField(from_spectrum(u1), from_spectrum(u2));
}

}  // namespace enpp
