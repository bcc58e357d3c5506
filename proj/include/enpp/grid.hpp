#pragma once

#include <cstddef>
#include <numbers>

namespace enpp {

/// Uniform N x N grid on the periodic box [0, 2*pi)^2.
///
/// Point (i, j) sits at x1 = i*h, x2 = j*h with h = 2*pi/N. Because the box
/// length is 2*pi every Fourier wavenumber is an integer vector.
class GridSpec {
 public:
  static constexpr double domain_length = 2.0 * std::numbers::pi;
  static constexpr double default_dealias_fraction = 2.0 / 3.0;

  /// Throws InvalidGrid unless n_points is even and >= 8 and the fraction
  /// lies in (0, 1].
  explicit GridSpec(int n_points, double dealias_fraction = default_dealias_fraction);

  int n_points() const noexcept { return n_; }
  double dealias_fraction() const noexcept { return dealias_fraction_; }

  std::size_t size() const noexcept { return static_cast<std::size_t>(n_) * n_; }
  /// Columns of the half-plane spectrum (real-to-complex layout).
  int half_columns() const noexcept { return n_ / 2 + 1; }
  std::size_t spectrum_size() const noexcept {
    return static_cast<std::size_t>(n_) * half_columns();
  }

  double spacing() const noexcept { return domain_length / n_; }
  /// Quadrature weight (2*pi/N)^2 of one grid cell.
  double cell_area() const noexcept { return spacing() * spacing(); }
  double coordinate(int index) const noexcept { return index * spacing(); }

  /// Largest retained |k_i| under the dealiasing rule.
  double dealias_cutoff() const noexcept { return dealias_fraction_ * n_ / 2.0; }

  friend bool operator==(const GridSpec& a, const GridSpec& b) noexcept {
    return a.n_ == b.n_ && a.dealias_fraction_ == b.dealias_fraction_;
  }

 private:
  int n_;
  double dealias_fraction_;
};

/// Signed wavenumber of storage index `index` along an axis of length n.
/// The Nyquist index n/2 maps to +n/2.
constexpr int wavenumber(int index, int n) noexcept {
  return index <= n / 2 ? index : index - n;
}

/// Wavenumber used by first derivatives: the Nyquist mode is zeroed so that
/// derivatives of real fields stay real.
constexpr int derivative_wavenumber(int index, int n) noexcept {
  return index == n / 2 ? 0 : wavenumber(index, n);
}

}  // namespace enpp
