// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <map>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gkp {

using Exponents = std::vector<int>;

// Sparse polynomial in N variables with exact rational coefficients.
// Variables are indexed from 0; terms iterate in lexicographic exponent order.
class MultiIndexPoly {
 public:
  using Terms = std::map<Exponents, mpq_class>;

  MultiIndexPoly() = default;
  explicit MultiIndexPoly(int dim);

  static MultiIndexPoly monomial(const Exponents& e, const mpq_class& c = 1);
  static MultiIndexPoly constant(int dim, const mpq_class& c);
  static MultiIndexPoly variable(int dim, int var);

  int dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // -1 for the zero polynomial.
  int degree() const;
  int min_degree() const;

  void add_term(const Exponents& e, const mpq_class& c);

  MultiIndexPoly& operator+=(const MultiIndexPoly& o);
  MultiIndexPoly& operator-=(const MultiIndexPoly& o);
  MultiIndexPoly& operator*=(const mpq_class& s);
  friend MultiIndexPoly operator+(MultiIndexPoly a, const MultiIndexPoly& b) { return a += b; }
  friend MultiIndexPoly operator-(MultiIndexPoly a, const MultiIndexPoly& b) { return a -= b; }
  friend MultiIndexPoly operator*(MultiIndexPoly a, const mpq_class& s) { return a *= s; }
  friend MultiIndexPoly operator*(const MultiIndexPoly& a, const MultiIndexPoly& b);
  friend bool operator==(const MultiIndexPoly& a, const MultiIndexPoly& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  MultiIndexPoly derivative(int var) const;

  mpq_class eval(const std::vector<mpq_class>& xi) const;
  double eval(std::span<const double> xi) const;

  std::string to_string() const;

 private:
  int dim_ = 0;
  Terms terms_;
};

enum class Denominator {
  kp,     // |xi|^2 + xi_1^4
  riesz,  // |xi|^2
};

// P(xi) / D(xi)^q with D one of the two denominators above.
class KernelSymbol {
 public:
  KernelSymbol(MultiIndexPoly numerator, int denom_power, Denominator den = Denominator::kp);

  int dim() const { return numerator_.dim(); }
  int denom_power() const { return q_; }
  Denominator denominator() const { return den_; }
  const MultiIndexPoly& numerator() const { return numerator_; }

  // Throws SingularPointError at the origin.
  double operator()(std::span<const double> xi) const;
  // Unchecked, extended range. Used inside quadrature loops.
  long double eval_ld(const long double* xi) const;
  mpq_class eval_exact(const std::vector<mpq_class>& xi) const;

  // Coefficients of t -> P(t u) as a polynomial in t (index = power).
  std::vector<long double> ray_coefficients(const double* u) const;

  std::string to_json() const;
  static KernelSymbol from_json(std::string_view text);

  friend bool operator==(const KernelSymbol& a, const KernelSymbol& b) {
    return a.q_ == b.q_ && a.den_ == b.den_ && a.numerator_ == b.numerator_;
  }

 private:
  struct Compiled {
    std::vector<int> exps;
    long double coeff;
  };
  MultiIndexPoly numerator_;
  int q_;
  Denominator den_;
  std::vector<Compiled> compiled_;
  int max_exp_ = 0;
};

double eval_symbol(const KernelSymbol& s, std::span<const double> xi);

KernelSymbol monomial_symbol(int dim, const Exponents& d);
KernelSymbol riesz_symbol(int dim);

Exponents h0_exponents(int dim);
Exponents k0_exponents(int dim);
Exponents kk_exponents(int dim, int k);  // k is 1-based

// Caches d_j^p R for one base symbol. Safe for concurrent readers.
class DerivativeTable {
 public:
  explicit DerivativeTable(KernelSymbol base);

  const KernelSymbol& base() const { return base_; }
  // axis is 1-based.
  KernelSymbol derive(int axis, int order) const;

 private:
  KernelSymbol base_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, KernelSymbol> entries_;
};

KernelSymbol derive_symbol(const DerivativeTable& table, int axis, int order);

struct ExponentRecord {
  int origin_exponent;          // p + 2 - d
  bool lq_applies;              // p above the integrability onset
  double lq_threshold;          // L^q(B(0,1)^c) for q > threshold
  bool bounded_at_infinity;     // L^infinity(B(0,1)^c)
};

ExponentRecord predicted_exponents(const Exponents& d, int axis, int order);

}  // namespace gkp
