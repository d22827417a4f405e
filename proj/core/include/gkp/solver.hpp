// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gkp/errors.hpp"
#include "gkp/free_space.hpp"
#include "gkp/grid.hpp"
#include "gkp/kernel.hpp"
#include "gkp/symbol.hpp"

namespace gkp {

// Exponent p = num/den with den odd, so that u^p = Sign(u)^num |u|^p is
// defined for negative u.
struct Rational {
  long num = 1;
  long den = 1;

  Rational() = default;
  Rational(long n, long d);
  static Rational parse(std::string_view text);  // "m/n" or "m"
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  Rational plus(long k) const { return Rational(num + k * den, den); }
  std::string to_string() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

// 4 / (2N - 3): no non-trivial solitary wave exists for p at or above it.
double critical_exponent(int dim);
// Throws PreconditionError unless 0 < p < 4/(2N-3).
void check_admissible(const Rational& p, int dim);

enum class Boundary {
  periodic,    // convolution on the torus
  free_space,  // convolution on R^N with the field extended by zero
};
std::string to_string(Boundary b);
Boundary boundary_from_string(std::string_view s);

double signed_power(double u, const Rational& p);
Field signed_power(const Field& f, const Rational& p);

// Multiplies each mode by kappa * s(xi). The xi = 0 mode is set to zero.
Field apply_symbol(const Field& f, const KernelSymbol& s, Boundary boundary = Boundary::periodic,
                   std::complex<double> kappa = 1.0);

// Reusable convolution operator; the free-space variant precomputes its
// padded multiplier once.
class Convolution {
 public:
  Convolution(const Grid& grid, const KernelSymbol& s, Boundary boundary, std::complex<double> kappa = 1.0);
  Field operator()(const Field& f) const;

 private:
  Grid grid_;
  Boundary boundary_;
  std::vector<std::complex<double>> table_;
  std::shared_ptr<const FreeSpaceOperator> free_;
};

Field dealias(const Field& f);                       // 2/3 rule on every axis
Field spectral_derivative(const Field& f, int axis);  // 1-based axis, i xi_a
std::vector<Field> spectral_gradient(const Field& f);
double parseval_mass(const Field& f);  // integral of f^2 from the spectrum

// Trigonometric interpolation of the periodic extension.
double interpolate(const Field& f, std::span<const double> x);
Field resample(const Field& f, const Grid& target);
// Spectral translation moving the max-|f| point (refined by a parabola
// through its neighbours) to the origin.
Field center_align(const Field& f);

struct WaveState {
  WaveState(Field field, Rational p, double c = 1.0, Boundary boundary = Boundary::free_space);

  Field field;
  Rational p;
  double c;
  Boundary boundary;
  std::vector<IterationRecord> history;
  std::map<std::string, std::string> metadata;
};

enum class Seed { gaussian_bump, lump };
Seed seed_from_string(std::string_view s);
// gaussian_bump: -d_1^2 exp(-|x|^2/25). lump: closed form at speed 1 (N = 2).
// Periodic seeds have their mean removed.
Field seed_field(const Grid& grid, Seed seed, Boundary boundary = Boundary::free_space);

// T(v) = (1/(p+1)) K_0 * v^{p+1}.
class FixedPointMap {
 public:
  FixedPointMap(const Grid& grid, Rational p, Boundary boundary, bool dealiased = true);
  Field operator()(const Field& v) const;
  const Rational& p() const { return p_; }

 private:
  Rational p_;
  bool dealiased_;
  Convolution k0_;
};

struct SolveOptions {
  int max_iter = 2000;
  double tol = 1e-12;
  int divergence_window = 50;
  Boundary boundary = Boundary::free_space;
  bool dealiased = true;
  std::function<void(int, const IterationRecord&)> on_iteration;
};

WaveState solve_solitary_wave(const Grid& grid, const Rational& p, const Field& init, const SolveOptions& opt = {});
WaveState solve_solitary_wave(const Grid& grid, const Rational& p, Seed seed, const SolveOptions& opt = {});

double residual_conv(const WaveState& w);
double residual_h0(const WaveState& w);

struct TransverseFields {
  std::vector<Field> components;  // v_2 ... v_N
};
TransverseFields transverse_fields(const Field& v);
TransverseFields transverse_fields(const WaveState& w);

// d_k v at the points x via the principal-value gradient formula with
// kernel values from kernel_value.
struct Lemma3Options {
  int radial_nodes = 12;   // Gauss-Legendre nodes per radial piece
  int angular_nodes = 64;  // per full turn, N = 2
  QuadratureSpec quad{std::nullopt, std::nullopt, 1e-9, 1e-7, 1000};
};
std::vector<double> gradient_via_lemma3(const WaveState& w, int k, const std::vector<std::vector<double>>& x,
                                        const Lemma3Options& opt = {});
// Integral of K_0(y) y_k over the unit sphere.
double lemma3_sphere_coefficient(int dim, int k, const Lemma3Options& opt = {});

// Speed-c wave from a speed-1 wave: c^{1/p} v(sqrt(c) x_1, c x_perp). The
// first overload returns it on the correspondingly scaled grid (exact).
WaveState rescale(const WaveState& w, double c);
WaveState rescale(const WaveState& w, double c, const Grid& target);

}  // namespace gkp
