// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace gkp::quad {

using Integrand = std::function<double(double)>;

struct Result {
  double value = 0.0;
  double abserr = 0.0;
  bool converged = true;
};

struct Tolerance {
  double abs = 1e-12;
  double rel = 1e-10;
  std::size_t limit = 500;
  // When false, a missed tolerance is reported through Result::converged
  // instead of an exception.
  bool strict = true;
};

// Thin wrappers over GSL QUADPACK. All throw QuadratureError when the
// requested accuracy is missed by more than a factor 1e3.
Result qag(const Integrand& f, double a, double b, const Tolerance& tol);
Result qags(const Integrand& f, double a, double b, const Tolerance& tol);
Result qagiu(const Integrand& f, double a, const Tolerance& tol);

// Integral over [a, inf) of f(t) cos(omega t) (or sin).
Result qawf(const Integrand& f, double a, double omega, bool sine, const Tolerance& tol);
// Integral over [a, b] of f(t) cos(omega t) (or sin).
Result qawo(const Integrand& f, double a, double b, double omega, bool sine, const Tolerance& tol);

// qag over consecutive intervals of a sorted breakpoint list.
Result qag_pieces(const Integrand& f, std::span<const double> breaks, const Tolerance& tol);

std::size_t evaluation_count();

}  // namespace gkp::quad
