// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <vector>

#include "gkp/kernel.hpp"
#include "gkp/solver.hpp"

namespace gkp {

// 24c (3 - c x1^2 + c^2 x2^2) / (3 + c x1^2 + c^2 x2^2)^2, the explicit
// solitary wave for N = 2, p = 1 at speed c.
double lump_value(double c, std::span<const double> x);
Field lump_field(const Grid& grid, double c = 1.0);
// Relative L2 distance to the speed-c lump after center alignment.
double lump_distance(const Field& v, double c = 1.0);

double mass(const WaveState& w);            // integral of v^2
double power_integral(const WaveState& w);  // integral of v^{p+1} (signed power)

struct EnergyTerms {
  double mass = 0.0;        // integral v^2
  double d1 = 0.0;          // integral (d_1 v)^2
  std::vector<double> vk;   // integral v_k^2, k = 2..N
  double nonlinear = 0.0;   // integral v^{p+2}
};
EnergyTerms energy_terms(const WaveState& w);

double energy(const WaveState& w);
double action(const WaveState& w);

// v_inf(sigma) = amplitude * (1 - N sigma_1^2).
struct AngularProfile {
  int dim = 2;
  double amplitude = 0.0;
  double operator()(const Direction& sigma) const;
};

AngularProfile v_infinity_prediction(const WaveState& w);

struct EnergyPrediction {
  AngularProfile from_energy;
  AngularProfile from_action;
  double energy = 0.0;
  double action = 0.0;
};
// Only for p = 1 and N in {2, 3}; UnsupportedError otherwise.
EnergyPrediction v_infinity_from_energy(const WaveState& w);

struct AsymptoticProfile {
  std::vector<double> radii;
  std::vector<Direction> directions;
  std::vector<std::vector<double>> samples;  // [radius][direction] of R^N v(R sigma)
  std::vector<double> prediction;            // v_inf per direction
  std::vector<double> extrapolated;          // per direction, two largest radii, error model c/R
  double sup_gap_largest = 0.0;              // sup |v_R - v_inf| / sup |v_inf| at the largest R
  double sup_gap_extrapolated = 0.0;
  bool uniform_claim = true;                 // false when p < 1/N
  std::vector<std::string> warnings;
};

// Radii must not exceed 0.45 times the smallest half-length.
AsymptoticProfile profile_extract(const WaveState& w, const std::vector<double>& radii,
                                  const std::vector<Direction>& directions);
// n directions evenly spaced on the unit circle (N = 2).
std::vector<Direction> circle_directions(int n);

struct PohozaevReport {
  double mass = 0.0;
  double energy = 0.0;
  double action = 0.0;
  double identity_a = 0.0;               // -v^2 + 2/(p+2) v^{p+2} - 3 (d_1 v)^2 + sum v_j^2
  std::vector<double> identity_b;        // per transverse k
  double identity_c = 0.0;               // v^2 - v^{p+2}/(p+1) + (d_1 v)^2 + sum v_j^2
  double ratio_nonlinear = 0.0;          // integral v^{p+2} / integral v^2
  double ratio_d1 = 0.0;
  std::vector<double> ratio_vk;
  double expected_nonlinear = 0.0;
  double expected_d1 = 0.0;
  double expected_vk = 0.0;
  double ratio_error_nonlinear = 0.0;    // relative
  double ratio_error_d1 = 0.0;
  std::vector<double> ratio_error_vk;
};
// Identity residuals are normalized by the mass.
PohozaevReport pohozaev_check(const WaveState& w);

enum class DecayQuantity { value, gradient };

// Fit of log |v(R sigma)| (or |grad v|) against log R over
// R in [0.15, 0.45] * min half-length.
FitResult decay_exponent(const WaveState& w, const Direction& sigma, DecayQuantity which, int samples = 16);

}  // namespace gkp
