// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#include "gkp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gkp/errors.hpp"

namespace gkp {

Grid::Grid(std::vector<double> half_lengths, std::vector<std::size_t> sizes)
    : half_lengths_(std::move(half_lengths)), sizes_(std::move(sizes)) {
  if (sizes_.empty() || half_lengths_.size() != sizes_.size()) {
    throw PreconditionError("grid: half_lengths and sizes must be non-empty and of equal length");
  }
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    std::size_t n = sizes_[i];
    if (n < 8 || (n & (n - 1)) != 0) {
      throw PreconditionError("grid: size " + std::to_string(n) + " is not a power of two >= 8");
    }
    if (!(half_lengths_[i] > 0.0) || !std::isfinite(half_lengths_[i])) {
      throw PreconditionError("grid: half lengths must be positive");
    }
    total_ *= n;
  }
}

Grid Grid::cube(int dim, double half_length, std::size_t n) {
  if (dim < 1) throw PreconditionError("grid: dim must be positive");
  return Grid(std::vector<double>(dim, half_length), std::vector<std::size_t>(dim, n));
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim(); ++a) v *= spacing(a);
  return v;
}

double Grid::min_half_length() const { return *std::min_element(half_lengths_.begin(), half_lengths_.end()); }

double Grid::frequency(int axis, std::size_t k) const {
  const auto n = static_cast<long long>(sizes_[axis]);
  long long kk = static_cast<long long>(k);
  if (2 * kk >= n) kk -= n;
  return std::numbers::pi * static_cast<double>(kk) / half_lengths_[axis];
}

std::size_t Grid::ravel(std::span<const std::size_t> idx) const {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < sizes_.size(); ++a) flat = flat * sizes_[a] + idx[a];
  return flat;
}

void Grid::unravel(std::size_t flat, std::span<std::size_t> idx) const {
  for (std::size_t a = sizes_.size(); a-- > 0;) {
    idx[a] = flat % sizes_[a];
    flat /= sizes_[a];
  }
}

void Grid::point(std::size_t flat, std::span<double> x) const {
  for (std::size_t a = sizes_.size(); a-- > 0;) {
    x[a] = coordinate(static_cast<int>(a), flat % sizes_[a]);
    flat /= sizes_[a];
  }
}

std::size_t Grid::origin_index() const {
  std::vector<std::size_t> idx(sizes_.size());
  for (std::size_t a = 0; a < sizes_.size(); ++a) idx[a] = sizes_[a] / 2;
  return ravel(idx);
}

Field::Field(Grid grid) : grid_(std::move(grid)), values_(grid_.size(), 0.0) {}

Field::Field(Grid grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw PreconditionError("field: expected " + std::to_string(grid_.size()) + " values, got " +
                            std::to_string(values_.size()));
  }
  check_finite();
}

Field Field::sample(const Grid& grid, const std::function<double(std::span<const double>)>& f) {
  Field out(grid);
  std::vector<double> x(grid.dim());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.point(i, x);
    out.values_[i] = f(x);
  }
  out.check_finite();
  return out;
}

void Field::check_finite() const {
  for (double v : values_) {
    if (!std::isfinite(v)) throw PreconditionError("field: non-finite value");
  }
}

double Field::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::fabs(v));
  return m;
}

std::size_t Field::argmax_abs() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (std::fabs(values_[i]) > std::fabs(values_[best])) best = i;
  }
  return best;
}

namespace {
void require_same(const Grid& a, const Grid& b) {
  if (!(a == b)) throw PreconditionError("field: grids differ");
}
}  // namespace

Field& Field::operator+=(const Field& o) {
  require_same(grid_, o.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

Field& Field::operator-=(const Field& o) {
  require_same(grid_, o.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

Field& Field::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

double integrate(const Field& f) {
  long double s = 0;
  for (double v : f.values()) s += v;
  return static_cast<double>(s) * f.grid().cell_volume();
}

double inner(const Field& a, const Field& b) {
  require_same(a.grid(), b.grid());
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long double>(a[i]) * b[i];
  return static_cast<double>(s) * a.grid().cell_volume();
}

double l2_norm(const Field& f) { return std::sqrt(inner(f, f)); }

double mean(const Field& f) {
  long double s = 0;
  for (double v : f.values()) s += v;
  return static_cast<double>(s / f.size());
}

}  // namespace gkp
