// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#include <gsl/gsl_integration.h>
#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gkp/diagnostics.hpp"
#include "gkp/errors.hpp"

namespace gkp {
namespace {

const Rational kOne(1, 1);

const WaveState& lump80() {
  static const WaveState w(lump_field(Grid::cube(2, 80.0, 1024)), kOne);
  return w;
}

const WaveState& lump160() {
  static const WaveState w(lump_field(Grid::cube(2, 160.0, 1024)), kOne);
  return w;
}

struct PolarCtx {
  double r;
};

double lump_sq_angle(double t, void* p) {
  const double r = static_cast<PolarCtx*>(p)->r;
  const double x[] = {r * std::cos(t), r * std::sin(t)};
  const double v = lump_value(1.0, x);
  return v * v;
}

double lump_sq_radius(double r, void* p) {
  auto* w = static_cast<gsl_integration_workspace*>(p);
  PolarCtx ctx{r};
  gsl_function g{&lump_sq_angle, &ctx};
  double v = 0, e = 0;
  gsl_integration_qag(&g, 0.0, 2.0 * M_PI, 1e-14, 1e-13, 1000, GSL_INTEG_GAUSS61, w, &v, &e);
  return r * v;
}

TEST(Lump, ClosedFormExamples) {
  const double o[] = {0.0, 0.0};
  const double z[] = {std::sqrt(3.0), 0.0};
  const double far[] = {1e4, 0.0};
  EXPECT_DOUBLE_EQ(lump_value(1.0, o), 8.0);
  EXPECT_NEAR(lump_value(1.0, z), 0.0, 1e-15);
  EXPECT_NEAR(1e8 * lump_value(1.0, far), -24.0, 1e-5);
  const double x3[] = {1.0, 0.0, 0.0};
  EXPECT_THROW(lump_value(1.0, x3), UnsupportedError);
}

TEST(Lump, MassOracle) {
  gsl_integration_workspace* inner_ws = gsl_integration_workspace_alloc(1000);
  gsl_integration_workspace* outer_ws = gsl_integration_workspace_alloc(1000);
  gsl_function g{&lump_sq_radius, inner_ws};
  double v = 0, e = 0;
  gsl_integration_qagiu(&g, 0.0, 1e-12, 1e-12, 1000, outer_ws, &v, &e);
  gsl_integration_workspace_free(outer_ws);
  gsl_integration_workspace_free(inner_ws);
  EXPECT_NEAR(v, 96.0 * M_PI, 1e-8 * 96.0 * M_PI);
  EXPECT_NEAR(mass(lump160()), 96.0 * M_PI, 5e-3 * 96.0 * M_PI);
}

TEST(Mass, ZeroAndHomogeneity) {
  const Grid g = Grid::cube(2, 20.0, 64);
  WaveState w(seed_field(g, Seed::gaussian_bump), kOne);
  WaveState twice(w.field * 2.0, kOne);
  EXPECT_NEAR(mass(twice), 4.0 * mass(w), 1e-12 * mass(w));
  Field zero(g);
  EXPECT_EQ(integrate(zero), 0.0);
}

TEST(EnergyAction, LumpValues) {
  EXPECT_NEAR(energy(lump160()), -16.0 * M_PI, 0.01 * 16.0 * M_PI);
  EXPECT_NEAR(action(lump160()), 32.0 * M_PI, 0.01 * 32.0 * M_PI);
}

TEST(VInfinity, Prediction) {
  AngularProfile a = v_infinity_prediction(lump160());
  EXPECT_NEAR(a(Direction({1.0, 0.0})), -24.0, 0.02 * 24.0);
  EXPECT_NEAR(a(Direction({0.0, 1.0})), 24.0, 0.02 * 24.0);
  EXPECT_NEAR(a(Direction::normalized({1.0, 1.0})), 0.0, 1e-12);
}

TEST(VInfinity, FromEnergyAndAction) {
  EnergyPrediction e = v_infinity_from_energy(lump160());
  const Direction e1({1.0, 0.0});
  EXPECT_NEAR(e.from_energy(e1), -24.0, 0.02 * 24.0);
  EXPECT_NEAR(e.from_action(e1), -24.0, 0.02 * 24.0);
  EXPECT_NEAR(e.from_energy(Direction::normalized({1.0, 1.0})), 0.0, 1e-12);
  WaveState p2(lump160().field, Rational(2, 1));
  EXPECT_THROW(v_infinity_from_energy(p2), UnsupportedError);
}

TEST(Profile, LumpExtrapolatedGap) {
  AsymptoticProfile p = profile_extract(lump80(), {10.0, 20.0, 30.0}, circle_directions(32));
  ASSERT_EQ(p.samples.size(), 3u);
  ASSERT_EQ(p.samples[0].size(), 32u);
  EXPECT_LT(p.sup_gap_extrapolated, 0.05);
  EXPECT_TRUE(p.uniform_claim);
  // Directions 4 and 12 of 32 sit at sigma_1 = +-1/sqrt(2).
  EXPECT_LT(std::fabs(p.samples[2][4]), 0.05 * 24.0);
  EXPECT_LT(std::fabs(p.samples[2][12]), 0.05 * 24.0);
  // Depends on sigma only through sigma_1^2.
  EXPECT_NEAR(p.extrapolated[3], p.extrapolated[29], 0.05 * 24.0);
  EXPECT_THROW(profile_extract(lump80(), {40.0}, circle_directions(8)), PreconditionError);
}

TEST(Decay, LumpExponents) {
  const Direction e1({1.0, 0.0});
  EXPECT_NEAR(decay_exponent(lump80(), e1, DecayQuantity::value).slope, -2.0, 0.1);
  EXPECT_NEAR(decay_exponent(lump80(), e1, DecayQuantity::gradient).slope, -3.0, 0.15);
}

TEST(Decay, SyntheticInverseSquare) {
  const Grid g = Grid::cube(2, 80.0, 512);
  Field f = Field::sample(g, [](std::span<const double> x) { return 1.0 / (1.0 + x[0] * x[0] + x[1] * x[1]); });
  WaveState w(f, kOne);
  EXPECT_NEAR(decay_exponent(w, Direction({0.6, 0.8}), DecayQuantity::value).slope, -2.0, 2e-2);
}

TEST(Pohozaev, RandomFieldFails) {
  const Grid g = Grid::cube(2, 20.0, 128);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n;
  Field f(g);
  for (auto& v : f.values()) v = n(rng);
  PohozaevReport r = pohozaev_check(WaveState(f, kOne));
  const double worst = std::max({std::fabs(r.identity_a), std::fabs(r.identity_b[0]), std::fabs(r.identity_c)});
  EXPECT_GT(worst, 0.1);
}

TEST(Pohozaev, LumpRatios) {
  PohozaevReport r = pohozaev_check(lump160());
  EXPECT_NEAR(r.ratio_nonlinear, 4.0, 0.02);
  EXPECT_NEAR(r.ratio_d1, 2.0 / 3.0, 0.005 * 2.0 / 3.0);
  EXPECT_NEAR(r.ratio_vk[0], 1.0 / 3.0, 0.005 / 3.0);
  EXPECT_LT(std::fabs(r.identity_a), 1e-3);
  EXPECT_LT(std::fabs(r.identity_b[0]), 1e-3);
  EXPECT_LT(std::fabs(r.identity_c), 1e-3);
}

TEST(Directions, Circle) {
  auto d = circle_directions(4);
  ASSERT_EQ(d.size(), 4u);
  EXPECT_NEAR(d[0][0], 1.0, 1e-15);
  EXPECT_NEAR(d[1][1], 1.0, 1e-15);
}

}  // namespace
}  // namespace gkp
