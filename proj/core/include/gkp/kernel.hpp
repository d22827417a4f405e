// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gkp/symbol.hpp"

namespace gkp {

struct QuadratureSpec {
  std::optional<double> lambda;        // splitting radius, default 1/|x|
  std::optional<double> outer_cutoff;  // finite upper radius, default none (Fourier integral to infinity)
  double abs_tol = 1e-12;              // absolute accuracy asked of f(x)
  double rel_tol = 1e-10;
  int max_subdivisions = 1000;

  void validate() const;
};

class Direction {
 public:
  // Throws unless the Euclidean norm is 1 within 1e-12.
  explicit Direction(std::vector<double> components);
  static Direction normalized(std::vector<double> v);

  const std::vector<double>& components() const { return c_; }
  double sigma1() const { return c_[0]; }
  int dim() const { return static_cast<int>(c_.size()); }
  double operator[](std::size_t i) const { return c_[i]; }

 private:
  std::vector<double> c_;
};

// Raw split representation: returns x_j^p f(x) for the distribution f with
// Fourier transform table.base(), using derivative orders p <= m along axis j.
std::complex<double> split_representation(const DerivativeTable& table, int axis, int p, int m,
                                          std::span<const double> x, double lambda,
                                          const QuadratureSpec& quad);

struct KernelOrders {
  int axis;  // 1-based
  int p;
  int m;
};
KernelOrders kernel_orders(const Exponents& d, std::span<const double> x);

// f(x) for the monomial kernel with exponents d. Purely imaginary for odd d.
std::complex<double> kernel_value(const Exponents& d, std::span<const double> x,
                                  const QuadratureSpec& quad = {});
std::complex<double> kernel_value(const DerivativeTable& table, const Exponents& d,
                                  std::span<const double> x, const QuadratureSpec& quad = {});

double riesz_constant(int dim);  // Gamma(N/2) / (2 pi^{N/2})

// Pointwise part of R_{1,1}; the Dirac mass 1/N at the origin and the
// principal value inside B(0,1) are not part of the returned value.
double riesz_value(std::span<const double> x);
double riesz_dirac_coefficient(int dim);
std::string riesz_principal_value_note();

double k0_limit(const Direction& sigma);

struct RieszCheck {
  std::complex<double> rhs;
  double lhs;
  double residual;
};
RieszCheck riesz_identity(const Direction& sigma, int axis, const QuadratureSpec& quad = {});
double verify_riesz_identity(const Direction& sigma, int axis, const QuadratureSpec& quad = {});

struct FitResult {
  double slope = 0.0;
  double slope_stderr = 0.0;
  double intercept = 0.0;
  std::size_t used = 0;
  std::size_t excluded = 0;
  std::vector<std::string> warnings;
};

// Least-squares slope of log|value| against log(radius).
FitResult decay_fit(std::span<const std::pair<double, double>> samples);

// Richardson extrapolation of g(R), g(2R) under an error model c/R.
double richardson_1_over_r(double g_r, double g_2r);

enum class SingularAxis { axis1, transverse };

struct SingularityFit {
  FitResult fit;
  double beta = 0.0;            // measured, -slope
  double predicted_beta = 0.0;  // from (x_1^2 + |x_perp|)^e |f| <= A (1 + log)
  bool log_factor = false;      // predicted bound carries |ln|x|| (N=2, d=(1,0,..))
  std::vector<std::pair<double, double>> samples;
};

// Fits |f(x)| ~ |x_a|^{-beta} for |x| in [r_min, r_max] along the chosen axis.
// For kernels odd in x_1 the transverse samples sit on x_1 = |x_perp|^2.
SingularityFit singularity_fit(const Exponents& d, SingularAxis axis, const QuadratureSpec& quad = {},
                               double r_min = 1e-3, double r_max = 1e-1, int count = 9);

}  // namespace gkp
