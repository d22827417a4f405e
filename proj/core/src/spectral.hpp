// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <vector>

#include "gkp/fft.hpp"
#include "gkp/grid.hpp"

namespace gkp::detail {

using Complex = std::complex<double>;

// Calls f(flat, xi, nyq) for every mode of the r2c layout of g.
template <class F>
void for_each_mode(const Grid& g, F&& f) {
  const int n = g.dim();
  std::vector<std::size_t> ext(g.sizes());
  ext.back() = ext.back() / 2 + 1;
  std::vector<std::size_t> k(n, 0);
  std::vector<double> xi(n);
  bool nyq[16] = {};
  std::size_t total = 1;
  for (auto e : ext) total *= e;
  for (int a = 0; a < n; ++a) {
    xi[a] = g.frequency(a, 0);
    nyq[a] = false;
  }
  for (std::size_t flat = 0; flat < total; ++flat) {
    f(flat, xi.data(), static_cast<const bool*>(nyq));
    for (int a = n - 1; a >= 0; --a) {
      if (++k[a] < ext[a]) {
        xi[a] = g.frequency(a, k[a]);
        nyq[a] = g.is_nyquist(a, k[a]);
        break;
      }
      k[a] = 0;
      xi[a] = g.frequency(a, 0);
      nyq[a] = false;
    }
  }
}

// Average of m over the sign flips of the Nyquist components of xi. The
// result is the Hermitian-consistent value on Nyquist planes: odd factors
// vanish there, even ones are unchanged.
template <class M>
Complex symmetrized(const M& m, double* xi, const bool* nyq, int dim) {
  int axes[16];
  int count = 0;
  for (int a = 0; a < dim; ++a) {
    if (nyq[a]) axes[count++] = a;
  }
  if (count == 0) return m(static_cast<const double*>(xi));
  Complex sum = 0.0;
  for (int mask = 0; mask < (1 << count); ++mask) {
    for (int b = 0; b < count; ++b) {
      double v = std::fabs(xi[axes[b]]);
      xi[axes[b]] = (mask >> b & 1) ? -v : v;
    }
    sum += m(static_cast<const double*>(xi));
  }
  return sum / static_cast<double>(1 << count);
}

template <class M>
std::vector<Complex> multiplier_table(const Grid& g, const M& m) {
  RealFft fft(g.sizes());
  std::vector<Complex> table(fft.complex_size());
  for_each_mode(g, [&](std::size_t i, const double* xi, const bool* nyq) {
    double x[16];
    for (int a = 0; a < g.dim(); ++a) x[a] = xi[a];
    table[i] = symmetrized(m, x, nyq, g.dim());
  });
  return table;
}

std::vector<Complex> forward(const Field& f);
Field backward(const Grid& g, std::vector<Complex> spectrum);
Field apply_table(const Field& f, const std::vector<Complex>& table);

}  // namespace gkp::detail
