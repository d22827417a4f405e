// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#include "gkp/free_space.hpp"

#include <gsl/gsl_sf_gamma.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gkp/errors.hpp"
#include "spectral.hpp"

namespace gkp {

namespace {

using detail::Complex;
constexpr double pi = std::numbers::pi;

Grid doubled(const Grid& g) {
  std::vector<double> L(g.half_lengths());
  std::vector<std::size_t> n(g.sizes());
  for (std::size_t a = 0; a < n.size(); ++a) {
    L[a] *= 2.0;
    n[a] *= 2;
  }
  return Grid(L, n);
}

double max_spacing(const Grid& g) {
  double h = 0.0;
  for (int a = 0; a < g.dim(); ++a) h = std::max(h, g.spacing(a));
  return h;
}

}  // namespace

FreeSpaceOperator::FreeSpaceOperator(const Grid& grid, const KernelSymbol& symbol, std::complex<double> kappa)
    : grid_(grid), padded_(doubled(grid)), fft_(padded_.sizes()) {
  const int n = grid.dim();
  if (symbol.dim() != n) throw PreconditionError("free space: symbol and grid dimensions differ");
  if (symbol.denom_power() != 1) throw UnsupportedError("free space: only q = 1 symbols are supported");
  alpha_ = std::pow(pi / max_spacing(grid), 2) / 160.0;

  for (const auto& [e, c] : symbol.numerator().terms()) {
    int deg = 0;
    int a = -1, b = -1;
    for (int i = 0; i < n; ++i) {
      for (int r = 0; r < e[i]; ++r) (a < 0 ? a : b) = i;
      deg += e[i];
    }
    if (deg < 1 || deg > 2) throw UnsupportedError("free space: numerator degree must be 1 or 2");
    Complex f = kappa * (deg == 1 ? Complex(0, -1) : Complex(-1, 0));
    if (std::fabs(f.imag()) > 1e-14 * std::abs(f)) {
      throw UnsupportedError("free space: kernel would not be real for this kappa");
    }
    terms_.push_back({a, b, f.real() * c.get_d()});
  }

  // Long-range kernel sampled at offsets i h (i < n) and (i - 2n) h.
  const double hv = grid.cell_volume();
  std::vector<double> k(padded_.size());
  std::vector<std::size_t> idx(n);
  double x[16];
  for (std::size_t flat = 0; flat < k.size(); ++flat) {
    padded_.unravel(flat, idx);
    for (int a = 0; a < n; ++a) {
      const auto m = grid.sizes()[a];
      const double h = grid.spacing(a);
      x[a] = idx[a] < m ? idx[a] * h : (static_cast<double>(idx[a]) - 2.0 * m) * h;
    }
    k[flat] = long_range_kernel(x) * hv;
  }
  multiplier_.resize(fft_.complex_size());
  fft_.forward(k.data(), multiplier_.data());

  const double a4 = 4.0 * alpha_;
  auto short_part = [&](const double* xi) -> Complex {
    double r2 = 0.0;
    for (int a = 0; a < n; ++a) r2 += xi[a] * xi[a];
    if (r2 == 0.0) return 0.0;
    std::span<const double> s(xi, n);
    double pv = symbol.numerator().eval(s);
    return kappa * (symbol(s) - pv / r2 * std::exp(-r2 / a4));
  };
  detail::for_each_mode(padded_, [&](std::size_t i, const double* xi, const bool* nyq) {
    double tmp[16];
    std::copy(xi, xi + n, tmp);
    multiplier_[i] += detail::symmetrized(short_part, tmp, nyq, n);
  });
  const double norm = 1.0 / static_cast<double>(padded_.size());
  for (auto& m : multiplier_) m *= norm;
}

double FreeSpaceOperator::long_range_kernel(const double* x) const {
  const int n = grid_.dim();
  double r2 = 0.0;
  for (int a = 0; a < n; ++a) r2 += x[a] * x[a];
  const double g0 = std::pow(alpha_ / pi, 0.5 * n);
  double sum = 0.0;
  if (r2 == 0.0) {
    for (const auto& t : terms_) {
      if (t.b >= 0 && t.a == t.b) sum += t.coeff * (-g0 / n);
    }
    return sum;
  }
  const double r = std::sqrt(r2);
  const double area = 2.0 * std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n);
  const double Q = gsl_sf_gamma_inc_P(0.5 * n, alpha_ * r2);
  const double g = g0 * std::exp(-alpha_ * r2);
  const double u1 = -Q / (area * std::pow(r, n - 1));
  const double u2 = -g + (n - 1) * Q / (area * std::pow(r, n));
  for (const auto& t : terms_) {
    if (t.b < 0) {
      sum += t.coeff * u1 * x[t.a] / r;
    } else {
      double xx = x[t.a] * x[t.b] / r2;
      double d2 = u2 * xx + u1 / r * ((t.a == t.b ? 1.0 : 0.0) - xx);
      sum += t.coeff * d2;
    }
  }
  return sum;
}

Field FreeSpaceOperator::apply(const Field& f) const {
  if (!(f.grid() == grid_)) throw PreconditionError("free space: field grid differs from operator grid");
  const int n = grid_.dim();
  std::vector<double> buf(padded_.size(), 0.0);
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < f.size(); ++i) {
    grid_.unravel(i, idx);
    buf[padded_.ravel(idx)] = f[i];
  }
  // Trapezoid weights on the closed box: halve the first slab of each axis and
  // place the other half at index n (the image of x = +L).
  const auto& P = padded_.sizes();
  std::size_t stride = padded_.size();
  for (int a = 0; a < n; ++a) {
    stride /= P[a];
    const std::size_t shift = grid_.sizes()[a] * stride;
    for (std::size_t flat = 0; flat < buf.size(); ++flat) {
      if ((flat / stride) % P[a] != 0) continue;
      buf[flat] *= 0.5;
      buf[flat + shift] = buf[flat];
    }
  }
  std::vector<Complex> spec(fft_.complex_size());
  fft_.forward(buf.data(), spec.data());
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= multiplier_[i];
  fft_.backward(spec.data(), buf.data());
  Field out(grid_);
  for (std::size_t i = 0; i < out.size(); ++i) {
    grid_.unravel(i, idx);
    out[i] = buf[padded_.ravel(idx)];
  }
  return out;
}

}  // namespace gkp
