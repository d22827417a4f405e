// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "gkp/errors.hpp"
#include "gkp/fft.hpp"
#include "gkp/grid.hpp"
#include "gkp/kernel.hpp"
#include "gkp/solver.hpp"

namespace gkp {
namespace {

double gauss(std::span<const double> x) { return std::exp(-(x[0] * x[0] + 2.0 * x[1] * x[1])); }

TEST(Grid, Layout) {
  Grid g({2.0, 4.0}, {8, 16});
  EXPECT_EQ(g.size(), 128u);
  EXPECT_DOUBLE_EQ(g.spacing(0), 0.5);
  EXPECT_DOUBLE_EQ(g.coordinate(1, 8), 0.0);
  EXPECT_DOUBLE_EQ(g.frequency(0, 1), M_PI / 2.0);
  EXPECT_DOUBLE_EQ(g.frequency(0, 7), -M_PI / 2.0);
  EXPECT_TRUE(g.is_nyquist(0, 4));
  std::size_t idx[2];
  g.unravel(g.origin_index(), idx);
  EXPECT_EQ(idx[0], 4u);
  EXPECT_EQ(idx[1], 8u);
  EXPECT_EQ(g.ravel(idx), g.origin_index());
}

TEST(Grid, Invariants) {
  EXPECT_THROW(Grid({1.0, 1.0}, {12, 16}), PreconditionError);
  EXPECT_THROW(Grid({1.0, 1.0}, {4, 16}), PreconditionError);
  EXPECT_THROW(Grid({0.0, 1.0}, {8, 8}), PreconditionError);
  EXPECT_THROW(Field(Grid::cube(2, 1.0, 8), std::vector<double>(63)), PreconditionError);
  std::vector<double> bad(64, 0.0);
  bad[3] = NAN;
  EXPECT_THROW(Field(Grid::cube(2, 1.0, 8), bad), PreconditionError);
}

TEST(Fft, RoundTrip) {
  RealFft fft({16, 8});
  std::vector<double> in(128), out(128);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  for (auto& v : in) v = n(rng);
  std::vector<std::complex<double>> spec(fft.complex_size());
  fft.forward(in.data(), spec.data());
  fft.backward(spec.data(), out.data());
  for (std::size_t i = 0; i < in.size(); ++i) EXPECT_NEAR(out[i] / 128.0, in[i], 1e-13);
}

TEST(Spectral, ParsevalConsistency) {
  Field f = Field::sample(Grid::cube(2, 8.0, 64), gauss);
  EXPECT_NEAR(parseval_mass(f), inner(f, f), 1e-12 * inner(f, f));
}

TEST(Spectral, DerivativeOfGaussian) {
  Field f = Field::sample(Grid::cube(2, 8.0, 128), gauss);
  Field d = spectral_derivative(f, 2);
  const Grid& g = f.grid();
  double x[2];
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.point(i, x);
    err = std::max(err, std::fabs(d[i] + 4.0 * x[1] * gauss(x)));
  }
  EXPECT_LT(err, 1e-10);
  EXPECT_THROW(spectral_derivative(f, 3), PreconditionError);
}

TEST(ApplySymbol, EigenModeOfK0) {
  // cos(x_1) on a box of half-length pi holds only the modes (+-1, 0), where
  // the K0 multiplier equals 1/2.
  const Grid g = Grid::cube(2, M_PI, 32);
  Field f = Field::sample(g, [](std::span<const double> x) { return std::cos(x[0]); });
  Field r = apply_symbol(f, monomial_symbol(2, k0_exponents(2)));
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(r[i], 0.5 * f[i], 1e-14);
}

TEST(ApplySymbol, ZeroFieldAndLinearity) {
  const Grid g = Grid::cube(2, 8.0, 32);
  const KernelSymbol s = monomial_symbol(2, k0_exponents(2));
  Field z = apply_symbol(Field(g), s, Boundary::free_space);
  EXPECT_EQ(z.max_abs(), 0.0);
  Field f = Field::sample(g, gauss);
  Field a = apply_symbol(f * 3.0, s);
  Field b = apply_symbol(f, s) * 3.0;
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-14);
}

TEST(ApplySymbol, ImaginaryMultiplierStaysReal) {
  // i (xi_1 xi_2^2 + xi_1^3) / |xi|^2 = i xi_1, the multiplier of d_1.
  const Grid g = Grid::cube(2, 8.0, 64);
  Field f = Field::sample(g, gauss);
  MultiIndexPoly num = MultiIndexPoly::monomial({1, 2}) + MultiIndexPoly::monomial({3, 0});
  KernelSymbol s(num, 1, Denominator::riesz);
  Field a = apply_symbol(f, s, Boundary::periodic, std::complex<double>(0.0, 1.0));
  Field b = spectral_derivative(f, 1);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
}

TEST(ApplySymbol, DeltaResponseMatchesQuadrature) {
  const Grid g = Grid::cube(2, 16.0, 512);
  Field delta(g);
  delta[g.origin_index()] = 1.0 / g.cell_volume();
  Field r = apply_symbol(delta, monomial_symbol(2, k0_exponents(2)), Boundary::free_space);
  std::vector<std::size_t> idx{256 + 80, 256};
  const double x[] = {5.0, 0.0};
  const double ref = kernel_value(k0_exponents(2), x).real();
  EXPECT_NEAR(r[g.ravel(idx)], ref, 2e-2 * std::fabs(ref));
}

TEST(Dealias, RemovesHighModes) {
  const Grid g = Grid::cube(2, M_PI, 16);
  Field f = Field::sample(g, [](std::span<const double> x) { return std::cos(x[0]) + std::cos(7.0 * x[1]); });
  Field d = dealias(f);
  double x[2];
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.point(i, x);
    EXPECT_NEAR(d[i], std::cos(x[0]), 1e-14);
  }
}

TEST(Interpolate, TrigonometricExactness) {
  const Grid g = Grid::cube(2, M_PI, 16);
  auto fn = [](std::span<const double> x) { return std::sin(2.0 * x[0]) * std::cos(3.0 * x[1]) + 0.5; };
  Field f = Field::sample(g, fn);
  const double p[] = {0.123, -1.7};
  EXPECT_NEAR(interpolate(f, p), fn(p), 1e-13);
  Field r = resample(f, Grid::cube(2, M_PI, 32));
  double x[2];
  for (std::size_t i = 0; i < r.size(); i += 37) {
    r.grid().point(i, x);
    EXPECT_NEAR(r[i], fn(x), 1e-13);
  }
}

TEST(CenterAlign, MovesPeakToOrigin) {
  const Grid g = Grid::cube(2, 10.0, 64);
  Field f = Field::sample(g, [](std::span<const double> x) {
    return std::exp(-((x[0] - 1.3) * (x[0] - 1.3) + (x[1] + 0.7) * (x[1] + 0.7)));
  });
  Field c = center_align(f);
  EXPECT_EQ(c.argmax_abs(), g.origin_index());
  EXPECT_NEAR(c[g.origin_index()], 1.0, 1e-4);
}

TEST(TransverseFields, SpectralIdentity) {
  const Grid g = Grid::cube(2, 10.0, 64);
  Field f = Field::sample(g, [](std::span<const double> x) {
    return -std::exp(-(x[0] * x[0] + x[1] * x[1]) / 4.0) * (x[0] * x[0] / 4.0 - 0.5);
  });
  TransverseFields t = transverse_fields(f);
  ASSERT_EQ(t.components.size(), 1u);
  Field lhs = spectral_derivative(t.components[0], 1);
  Field rhs = spectral_derivative(f, 2);
  EXPECT_LT(l2_norm(lhs - rhs), 1e-8 * l2_norm(rhs));
}

TEST(TransverseFields, ZeroOnTransverseModes) {
  const Grid g = Grid::cube(2, M_PI, 16);
  Field f = Field::sample(g, [](std::span<const double> x) { return std::cos(2.0 * x[1]); });
  TransverseFields t = transverse_fields(f);
  EXPECT_LT(t.components[0].max_abs(), 1e-15);
}

}  // namespace
}  // namespace gkp
