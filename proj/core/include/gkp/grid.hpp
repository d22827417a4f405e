// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace gkp {

// Uniform grid on the box prod [-L_i, L_i). Row-major, last axis fastest.
class Grid {
 public:
  Grid(std::vector<double> half_lengths, std::vector<std::size_t> sizes);
  static Grid cube(int dim, double half_length, std::size_t n);

  int dim() const { return static_cast<int>(sizes_.size()); }
  const std::vector<double>& half_lengths() const { return half_lengths_; }
  const std::vector<std::size_t>& sizes() const { return sizes_; }
  double spacing(int axis) const { return 2.0 * half_lengths_[axis] / static_cast<double>(sizes_[axis]); }
  std::size_t size() const { return total_; }
  double cell_volume() const;
  double min_half_length() const;

  double coordinate(int axis, std::size_t i) const { return -half_lengths_[axis] + i * spacing(axis); }
  // pi k' / L with k' = k for k < n/2, else k - n. The Nyquist index maps to -pi n / (2L).
  double frequency(int axis, std::size_t k) const;
  bool is_nyquist(int axis, std::size_t k) const { return 2 * k == sizes_[axis]; }

  std::size_t ravel(std::span<const std::size_t> idx) const;
  void unravel(std::size_t flat, std::span<std::size_t> idx) const;
  void point(std::size_t flat, std::span<double> x) const;
  // Index of the grid node nearest to the origin (x_i = 0 when n_i is even).
  std::size_t origin_index() const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.half_lengths_ == b.half_lengths_ && a.sizes_ == b.sizes_;
  }

 private:
  std::vector<double> half_lengths_;
  std::vector<std::size_t> sizes_;
  std::size_t total_ = 1;
};

class Field {
 public:
  explicit Field(Grid grid);
  // Throws PreconditionError on a length mismatch or a non-finite value.
  Field(Grid grid, std::vector<double> values);

  static Field sample(const Grid& grid, const std::function<double(std::span<const double>)>& f);

  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  void check_finite() const;
  double max_abs() const;
  std::size_t argmax_abs() const;

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(double s);
  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(Field a, double s) { return a *= s; }
  friend Field operator*(double s, Field a) { return a *= s; }

 private:
  Grid grid_;
  std::vector<double> values_;
};

// Grid quadrature: sum of values times the cell volume.
double integrate(const Field& f);
double inner(const Field& a, const Field& b);  // integral of a*b
double l2_norm(const Field& f);                // sqrt(inner(f, f))
double mean(const Field& f);

}  // namespace gkp
