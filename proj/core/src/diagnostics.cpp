// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#include "gkp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gkp {

namespace {

constexpr double pi = std::numbers::pi;

double sum_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

double lump_value(double c, std::span<const double> x) {
  if (x.size() != 2) throw UnsupportedError("lump: defined only for N = 2");
  if (!(c > 0.0)) throw PreconditionError("lump: speed must be positive");
  const double a = c * x[0] * x[0];
  const double b = c * c * x[1] * x[1];
  const double d = 3.0 + a + b;
  return 24.0 * c * (3.0 - a + b) / (d * d);
}

Field lump_field(const Grid& grid, double c) {
  return Field::sample(grid, [c](std::span<const double> x) { return lump_value(c, x); });
}

double lump_distance(const Field& v, double c) {
  Field aligned = center_align(v);
  Field ref = lump_field(v.grid(), c);
  aligned -= ref;
  return l2_norm(aligned) / l2_norm(ref);
}

double mass(const WaveState& w) { return inner(w.field, w.field); }

double power_integral(const WaveState& w) { return integrate(signed_power(w.field, w.p.plus(1))); }

EnergyTerms energy_terms(const WaveState& w) {
  EnergyTerms t;
  t.mass = mass(w);
  Field d1 = spectral_derivative(w.field, 1);
  t.d1 = inner(d1, d1);
  for (const auto& vk : transverse_fields(w).components) t.vk.push_back(inner(vk, vk));
  t.nonlinear = integrate(signed_power(w.field, w.p.plus(2)));
  return t;
}

double energy(const WaveState& w) {
  EnergyTerms t = energy_terms(w);
  const double p = w.p.value();
  return 0.5 * t.d1 + 0.5 * sum_of(t.vk) - t.nonlinear / ((p + 1.0) * (p + 2.0));
}

double action(const WaveState& w) { return energy(w) + 0.5 * mass(w); }

double AngularProfile::operator()(const Direction& sigma) const {
  if (sigma.dim() != dim) throw PreconditionError("profile: direction dimension mismatch");
  return amplitude * (1.0 - dim * sigma.sigma1() * sigma.sigma1());
}

AngularProfile v_infinity_prediction(const WaveState& w) {
  const int n = w.field.grid().dim();
  return {n, riesz_constant(n) / (w.p.value() + 1.0) * power_integral(w)};
}

EnergyPrediction v_infinity_from_energy(const WaveState& w) {
  const int n = w.field.grid().dim();
  if (!(w.p == Rational(1, 1)) || (n != 2 && n != 3)) {
    throw UnsupportedError("energy form of the asymptotic profile needs p = 1 and N in {2, 3}");
  }
  EnergyPrediction out;
  out.energy = energy(w);
  out.action = out.energy + 0.5 * mass(w);
  const double g = std::tgamma(0.5 * n);
  const double pn = std::pow(pi, 0.5 * n);
  out.from_energy = {n, (7.0 - 2.0 * n) * g / (2.0 * (2.0 * n - 5.0) * pn) * out.energy};
  out.from_action = {n, (7.0 - 2.0 * n) * g / (4.0 * pn) * out.action};
  return out;
}

std::vector<Direction> circle_directions(int n) {
  std::vector<Direction> out;
  for (int i = 0; i < n; ++i) {
    double t = 2.0 * pi * i / n;
    out.push_back(Direction::normalized({std::cos(t), std::sin(t)}));
  }
  return out;
}

AsymptoticProfile profile_extract(const WaveState& w, const std::vector<double>& radii,
                                  const std::vector<Direction>& directions) {
  const Grid& g = w.field.grid();
  const int n = g.dim();
  const double bound = 0.45 * g.min_half_length();
  if (radii.empty() || directions.empty()) throw PreconditionError("profile: need radii and directions");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || radii[i] > bound) {
      throw PreconditionError("profile: radius " + std::to_string(radii[i]) + " outside (0, " +
                              std::to_string(bound) + "]; periodic images would contaminate it");
    }
    if (i > 0 && !(radii[i] > radii[i - 1])) throw PreconditionError("profile: radii must increase");
  }
  AsymptoticProfile prof;
  prof.radii = radii;
  prof.directions = directions;
  AngularProfile pred = v_infinity_prediction(w);
  for (const auto& d : directions) {
    if (d.dim() != n) throw PreconditionError("profile: direction dimension mismatch");
    prof.prediction.push_back(pred(d));
  }
  if (w.p.value() < 1.0 / n) {
    prof.uniform_claim = false;
    prof.warnings.push_back("p < 1/N: convergence is pointwise only, uniformity on the sphere is not claimed");
  }
  double abs_int = 0.0;
  for (double v : w.field.values()) abs_int += std::pow(std::fabs(v), w.p.value() + 1.0);
  abs_int *= g.cell_volume();
  if (std::fabs(power_integral(w)) < 1e-8 * abs_int) {
    prof.warnings.push_back("integral of v^{p+1} is near zero; the predicted profile is degenerate");
  }
  std::vector<double> x(n);
  for (double R : radii) {
    std::vector<double> row;
    for (const auto& d : directions) {
      for (int a = 0; a < n; ++a) x[a] = R * d[a];
      row.push_back(std::pow(R, n) * interpolate(w.field, x));
    }
    prof.samples.push_back(std::move(row));
  }
  const double scale = std::max(1e-300, std::fabs(pred.amplitude) * std::max(1.0, n - 1.0));
  const auto& last = prof.samples.back();
  for (std::size_t j = 0; j < directions.size(); ++j) {
    double e = last[j];
    if (radii.size() >= 2) {
      const double Ra = radii[radii.size() - 2], Rb = radii.back();
      const double ga = prof.samples[radii.size() - 2][j];
      e = (Rb * last[j] - Ra * ga) / (Rb - Ra);
    }
    prof.extrapolated.push_back(e);
    prof.sup_gap_largest = std::max(prof.sup_gap_largest, std::fabs(last[j] - prof.prediction[j]));
    prof.sup_gap_extrapolated = std::max(prof.sup_gap_extrapolated, std::fabs(e - prof.prediction[j]));
  }
  // Relative to sup |v_inf| = |A| max(1, N - 1) over the sphere.
  prof.sup_gap_largest /= scale;
  prof.sup_gap_extrapolated /= scale;
  return prof;
}

PohozaevReport pohozaev_check(const WaveState& w) {
  const int n = w.field.grid().dim();
  const double p = w.p.value();
  EnergyTerms t = energy_terms(w);
  PohozaevReport r;
  r.mass = t.mass;
  r.energy = 0.5 * t.d1 + 0.5 * sum_of(t.vk) - t.nonlinear / ((p + 1.0) * (p + 2.0));
  r.action = r.energy + 0.5 * t.mass;
  const double M = t.mass > 0.0 ? t.mass : 1.0;
  const double V = sum_of(t.vk);
  r.identity_a = (-t.mass + 2.0 / (p + 2.0) * t.nonlinear - 3.0 * t.d1 + V) / M;
  for (double vk : t.vk) {
    r.identity_b.push_back((t.mass - 2.0 / ((p + 1.0) * (p + 2.0)) * t.nonlinear + t.d1 - 2.0 * vk + V) / M);
  }
  r.identity_c = (t.mass - t.nonlinear / (p + 1.0) + t.d1 + V) / M;

  const double den = 4.0 + p * (3.0 - 2.0 * n);
  r.expected_nonlinear = 2.0 * (p + 1.0) * (p + 2.0) / den;
  r.expected_d1 = p * n / den;
  r.expected_vk = p / den;
  r.ratio_nonlinear = t.nonlinear / M;
  r.ratio_d1 = t.d1 / M;
  r.ratio_error_nonlinear = std::fabs(r.ratio_nonlinear / r.expected_nonlinear - 1.0);
  r.ratio_error_d1 = std::fabs(r.ratio_d1 / r.expected_d1 - 1.0);
  for (double vk : t.vk) {
    r.ratio_vk.push_back(vk / M);
    r.ratio_error_vk.push_back(std::fabs(vk / M / r.expected_vk - 1.0));
  }
  return r;
}

FitResult decay_exponent(const WaveState& w, const Direction& sigma, DecayQuantity which, int samples) {
  const Grid& g = w.field.grid();
  const int n = g.dim();
  if (sigma.dim() != n) throw PreconditionError("decay: direction dimension mismatch");
  if (samples < 8) throw PreconditionError("decay: need at least 8 radii");
  const double lo = 0.15 * g.min_half_length();
  const double hi = 0.45 * g.min_half_length();

  std::vector<Field> fields;
  if (which == DecayQuantity::value) {
    fields.push_back(w.field);
  } else {
    fields = spectral_gradient(w.field);
  }
  // Along a coordinate axis the radii are snapped to grid nodes so that no
  // interpolation enters the samples.
  int axis = -1;
  for (int a = 0; a < n; ++a) {
    if (std::fabs(std::fabs(sigma[a]) - 1.0) < 1e-14) axis = a;
  }
  std::vector<double> radii;
  for (int i = 0; i < samples; ++i) {
    double R = lo * std::pow(hi / lo, static_cast<double>(i) / (samples - 1));
    if (axis >= 0) R = std::round(R / g.spacing(axis)) * g.spacing(axis);
    if (radii.empty() || R > radii.back()) radii.push_back(R);
  }
  std::vector<std::pair<double, double>> pts;
  std::vector<double> x(n);
  std::vector<std::size_t> idx(n);
  for (double R : radii) {
    double s2 = 0.0;
    for (const auto& f : fields) {
      double v;
      if (axis >= 0) {
        for (int a = 0; a < n; ++a) idx[a] = g.sizes()[a] / 2;
        long off = std::lround(R / g.spacing(axis)) * (sigma[axis] > 0 ? 1 : -1);
        idx[axis] = static_cast<std::size_t>(static_cast<long>(idx[axis]) + off);
        v = f[g.ravel(idx)];
      } else {
        for (int a = 0; a < n; ++a) x[a] = R * sigma[a];
        v = interpolate(f, x);
      }
      s2 += v * v;
    }
    pts.emplace_back(R, std::sqrt(s2));
  }
  return decay_fit(pts);
}

}  // namespace gkp
