#include "enpp/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "enpp/errors.hpp"

namespace enpp {

GridSpec::GridSpec(int n_points, double dealias_fraction)
    : n_(n_points), dealias_fraction_(dealias_fraction) {
  if (n_points < 8 || n_points % 2 != 0) {
    throw InvalidGrid("n_points must be even and >= 8, got " + std::to_string(n_points));
  }
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0)) {
    throw InvalidGrid("dealias_fraction must lie in (0, 1]");
  }
}

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) {
    throw GridMismatch("fields live on different grids (" + std::to_string(a.n_points()) +
                       " vs " + std::to_string(b.n_points()) + ")");
  }
}

ScalarField::ScalarField(GridSpec grid) : grid_(grid), values_(grid.size(), 0.0) {}

ScalarField::ScalarField(GridSpec grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw GridMismatch("value array has " + std::to_string(values_.size()) +
                       " entries, grid needs " + std::to_string(grid_.size()));
  }
}

ScalarField ScalarField::from_function(GridSpec grid,
                                       const std::function<double(double, double)>& f) {
  ScalarField out(grid);
  const int n = grid.n_points();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out(i, j) = f(grid.coordinate(i), grid.coordinate(j));
    }
  }
  return out;
}

ScalarField ScalarField::constant(GridSpec grid, double value) {
  return ScalarField(grid, std::vector<double>(grid.size(), value));
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

ScalarField& ScalarField::operator*=(double factor) {
  for (double& v : values_) v *= factor;
  return *this;
}

ScalarField& ScalarField::multiply_pointwise(const ScalarField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] *= other.values_[k];
  return *this;
}

VectorField::VectorField(ScalarField first, ScalarField second)
    : c1(std::move(first)), c2(std::move(second)) {
  require_same_grid(c1.grid(), c2.grid());
}

VectorField& VectorField::operator+=(const VectorField& other) {
  c1 += other.c1;
  c2 += other.c2;
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
  c1 -= other.c1;
  c2 -= other.c2;
  return *this;
}

VectorField& VectorField::operator*=(double factor) {
  c1 *= factor;
  c2 *= factor;
  return *this;
}

ScalarField pointwise_product(const ScalarField& a, const ScalarField& b) {
  ScalarField out = a;
  out.multiply_pointwise(b);
  return out;
}

VectorField pointwise_product(const ScalarField& a, const VectorField& v) {
  return VectorField(pointwise_product(a, v.c1), pointwise_product(a, v.c2));
}

ScalarField dot(const VectorField& v, const VectorField& w) {
  ScalarField out = pointwise_product(v.c1, w.c1);
  out += pointwise_product(v.c2, w.c2);
  return out;
}

double mean(const ScalarField& f) {
  double sum = 0.0;
  for (double v : f.values()) sum += v;
  return sum / static_cast<double>(f.grid().size());
}

double min_value(const ScalarField& f) {
  return *std::min_element(f.values().begin(), f.values().end());
}

double max_value(const ScalarField& f) {
  return *std::max_element(f.values().begin(), f.values().end());
}

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs(const VectorField& v) {
  double m = 0.0;
  const auto a = v.c1.values();
  const auto b = v.c2.values();
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::hypot(a[k], b[k]));
  return m;
}

bool all_finite(const ScalarField& f) {
  return std::all_of(f.values().begin(), f.values().end(),
                     [](double v) { return std::isfinite(v); });
}

namespace {

double lp_from_magnitudes(std::span<const double> mags, double p, double weight) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : mags) m = std::max(m, v);
    return m;
  }
  // Scale by the maximum first so large p does not overflow.
  double m = 0.0;
  for (double v : mags) m = std::max(m, v);
  if (m == 0.0) return 0.0;
  double sum = 0.0;
  for (double v : mags) sum += std::pow(v / m, p);
  return m * std::pow(weight * sum, 1.0 / p);
}

}  // namespace

double lp_norm(const ScalarField& f, double p) {
  std::vector<double> mags(f.values().begin(), f.values().end());
  for (double& v : mags) v = std::abs(v);
  return lp_from_magnitudes(mags, p, f.grid().cell_area());
}

double lp_norm(const VectorField& v, double p) {
  const auto a = v.c1.values();
  const auto b = v.c2.values();
  std::vector<double> mags(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) mags[k] = std::hypot(a[k], b[k]);
  return lp_from_magnitudes(mags, p, v.grid().cell_area());
}

double lp_power(const ScalarField& f, double p) {
  double sum = 0.0;
  for (double v : f.values()) sum += std::pow(std::abs(v), p);
  return f.grid().cell_area() * sum;
}

double inner(const ScalarField& f, const ScalarField& g) {
  require_same_grid(f.grid(), g.grid());
  const auto a = f.values();
  const auto b = g.values();
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += a[k] * b[k];
  return f.grid().cell_area() * sum;
}

double inner(const VectorField& v, const VectorField& w) {
  return inner(v.c1, w.c1) + inner(v.c2, w.c2);
}

double l2_norm(const ScalarField& f) { return std::sqrt(inner(f, f)); }
double l2_norm(const VectorField& v) { return std::sqrt(inner(v, v)); }

}  // namespace enpp
