#pragma once

#include <functional>
#include <span>
#include <vector>

#include "enpp/grid.hpp"

namespace enpp {

/// Real scalar field sampled on a GridSpec, row-major with index i*N + j
/// (i along x1, j along x2).
class ScalarField {
 public:
  explicit ScalarField(GridSpec grid);
  ScalarField(GridSpec grid, std::vector<double> values);

  /// Samples f(x1, x2) at every grid point.
  static ScalarField from_function(GridSpec grid,
                                   const std::function<double(double, double)>& f);
  static ScalarField constant(GridSpec grid, double value);

  const GridSpec& grid() const noexcept { return grid_; }
  int n_points() const noexcept { return grid_.n_points(); }

  double& operator()(int i, int j) { return values_[index(i, j)]; }
  double operator()(int i, int j) const { return values_[index(i, j)]; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double factor);
  /// Pointwise product in physical space; no dealiasing.
  ScalarField& multiply_pointwise(const ScalarField& other);

  friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
  friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
  friend ScalarField operator*(ScalarField a, double c) { return a *= c; }
  friend ScalarField operator*(double c, ScalarField a) { return a *= c; }

 private:
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * grid_.n_points() + j;
  }

  GridSpec grid_;
  std::vector<double> values_;
};

/// Two-component vector field; both components live on one grid.
struct VectorField {
  ScalarField c1;
  ScalarField c2;

  explicit VectorField(GridSpec grid) : c1(grid), c2(grid) {}
  /// Throws GridMismatch when the components disagree on the grid.
  VectorField(ScalarField first, ScalarField second);

  const GridSpec& grid() const noexcept { return c1.grid(); }

  VectorField& operator+=(const VectorField& other);
  VectorField& operator-=(const VectorField& other);
  VectorField& operator*=(double factor);

  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(VectorField a, double c) { return a *= c; }
  friend VectorField operator*(double c, VectorField a) { return a *= c; }
};

ScalarField pointwise_product(const ScalarField& a, const ScalarField& b);
/// a * v componentwise.
VectorField pointwise_product(const ScalarField& a, const VectorField& v);
/// v . w pointwise.
ScalarField dot(const VectorField& v, const VectorField& w);

double mean(const ScalarField& f);
double min_value(const ScalarField& f);
double max_value(const ScalarField& f);
double max_abs(const ScalarField& f);
double max_abs(const VectorField& v);
bool all_finite(const ScalarField& f);

/// Discrete L^p norm ((2 pi / N)^2 sum |f|^p)^(1/p); p = infinity gives max |f|.
double lp_norm(const ScalarField& f, double p);
/// Same, with |v| the pointwise Euclidean magnitude.
double lp_norm(const VectorField& v, double p);
/// (2 pi / N)^2 sum |f|^p, the p-th power of lp_norm for finite p.
double lp_power(const ScalarField& f, double p);
double l2_norm(const ScalarField& f);
double l2_norm(const VectorField& v);
/// Discrete L^2 inner product with quadrature weight (2 pi / N)^2.
double inner(const ScalarField& f, const ScalarField& g);
double inner(const VectorField& v, const VectorField& w);

void require_same_grid(const GridSpec& a, const GridSpec& b);

}  // namespace enpp
