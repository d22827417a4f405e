// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "gkp/errors.hpp"
#include "gkp/symbol.hpp"

namespace gkp {
namespace {

MultiIndexPoly poly2(std::initializer_list<std::pair<Exponents, int>> terms) {
  MultiIndexPoly p(2);
  for (const auto& [e, c] : terms) p.add_term(e, c);
  return p;
}

TEST(MonomialSymbol, K0InTwoDimensions) {
  KernelSymbol s = monomial_symbol(2, {2, 0});
  EXPECT_EQ(s.denom_power(), 1);
  EXPECT_EQ(s.numerator(), MultiIndexPoly::monomial({2, 0}));
  const double xi[] = {0.5, 0.25};
  EXPECT_DOUBLE_EQ(s(xi), 0.25 / (0.25 + 0.0625 + 0.0625));
}

TEST(MonomialSymbol, H0AndEmptyNumerator) {
  EXPECT_EQ(monomial_symbol(2, {1, 0}).numerator(), MultiIndexPoly::monomial({1, 0}));
  KernelSymbol s = monomial_symbol(3, {0, 0, 0});
  EXPECT_EQ(s.numerator(), MultiIndexPoly::constant(3, 1));
  const double xi[] = {1.0, 1.0, 1.0};
  EXPECT_DOUBLE_EQ(s(xi), 0.25);
}

TEST(MonomialSymbol, FamilyExponents) {
  EXPECT_EQ(k0_exponents(3), (Exponents{2, 0, 0}));
  EXPECT_EQ(h0_exponents(3), (Exponents{1, 0, 0}));
  EXPECT_EQ(kk_exponents(3, 3), (Exponents{2, 0, 1}));
  EXPECT_THROW(kk_exponents(3, 4), PreconditionError);
}

TEST(DeriveSymbol, K0AlongAxisOne) {
  DerivativeTable t(monomial_symbol(2, k0_exponents(2)));
  KernelSymbol d = t.derive(1, 1);
  EXPECT_EQ(d.denom_power(), 2);
  EXPECT_EQ(d.numerator(), poly2({{{1, 2}, 2}, {{5, 0}, -2}}));
}

TEST(DeriveSymbol, K0AlongAxisTwo) {
  DerivativeTable t(monomial_symbol(2, k0_exponents(2)));
  KernelSymbol d = t.derive(2, 1);
  EXPECT_EQ(d.denom_power(), 2);
  EXPECT_EQ(d.numerator(), poly2({{{2, 1}, -2}}));
}

TEST(DeriveSymbol, ZerothOrderIsBase) {
  DerivativeTable t(monomial_symbol(3, kk_exponents(3, 2)));
  EXPECT_EQ(t.derive(2, 0), t.base());
  EXPECT_EQ(derive_symbol(t, 1, 0), t.base());
}

TEST(DeriveSymbol, RejectsBadAxis) {
  DerivativeTable t(monomial_symbol(2, k0_exponents(2)));
  EXPECT_THROW(t.derive(3, 1), PreconditionError);
  EXPECT_THROW(t.derive(0, 1), PreconditionError);
}

TEST(EvalSymbol, Examples) {
  const double e1[] = {1.0, 0.0};
  const double e2[] = {0.0, 1.0};
  EXPECT_DOUBLE_EQ(eval_symbol(monomial_symbol(2, k0_exponents(2)), e1), 0.5);
  EXPECT_DOUBLE_EQ(eval_symbol(monomial_symbol(2, h0_exponents(2)), e2), 0.0);
  DerivativeTable t(monomial_symbol(2, k0_exponents(2)));
  EXPECT_DOUBLE_EQ(eval_symbol(t.derive(1, 1), e1), -0.5);
}

TEST(EvalSymbol, OriginIsSingular) {
  const double zero[] = {0.0, 0.0};
  EXPECT_THROW(eval_symbol(monomial_symbol(2, k0_exponents(2)), zero), SingularPointError);
}

TEST(EvalSymbol, ExactAgreesWithDouble) {
  DerivativeTable t(monomial_symbol(3, k0_exponents(3)));
  KernelSymbol d = t.derive(1, 3);
  std::vector<mpq_class> q{mpq_class(1, 3), mpq_class(-2, 7), mpq_class(5, 4)};
  const double x[] = {1.0 / 3.0, -2.0 / 7.0, 5.0 / 4.0};
  EXPECT_NEAR(d.eval_exact(q).get_d(), d(x), 1e-13 * std::fabs(d(x)));
}

TEST(PredictedExponents, K0Origin) {
  ExponentRecord r = predicted_exponents({2, 0}, 1, 0);
  EXPECT_EQ(r.origin_exponent, 0);
  EXPECT_DOUBLE_EQ(r.lq_threshold, 1.5);
  EXPECT_EQ(predicted_exponents({2, 0}, 1, 2).origin_exponent, 2);
}

TEST(PredictedExponents, H0Transverse) {
  // (2N - 1) / (2p + 4 - d1 - 2 d_perp) with N = 2, p = 0, d = (1, 0).
  ExponentRecord r = predicted_exponents({1, 0}, 2, 0);
  EXPECT_DOUBLE_EQ(r.lq_threshold, 1.0);
  EXPECT_TRUE(r.lq_applies);
}

TEST(SymbolJson, RoundTrip) {
  DerivativeTable t(monomial_symbol(3, kk_exponents(3, 2)));
  for (int j = 1; j <= 3; ++j) {
    KernelSymbol d = t.derive(j, 4);
    EXPECT_EQ(KernelSymbol::from_json(d.to_json()), d);
  }
  KernelSymbol r = riesz_symbol(2);
  EXPECT_EQ(KernelSymbol::from_json(r.to_json()), r);
}

TEST(SymbolJson, Schema) {
  std::string j = monomial_symbol(2, {1, 0}).to_json();
  EXPECT_NE(j.find("\"dim\""), std::string::npos);
  EXPECT_NE(j.find("\"denom_power\""), std::string::npos);
  EXPECT_NE(j.find("\"exps\""), std::string::npos);
  EXPECT_NE(j.find("\"num\":\"1\""), std::string::npos);
  EXPECT_THROW(KernelSymbol::from_json("{\"dim\": 2}"), ParseError);
  EXPECT_THROW(KernelSymbol::from_json("not json"), ParseError);
}

struct Family {
  int dim;
  Exponents d;
};

std::vector<Family> families() {
  return {{2, {2, 0}}, {2, {1, 0}}, {2, {2, 1}}, {3, {2, 0, 0}}, {3, {1, 0, 0}}, {3, {2, 1, 0}}, {3, {2, 0, 1}}};
}

int total_degree(const Exponents& d) {
  int s = 0;
  for (int e : d) s += e;
  return s;
}

TEST(SymbolProperties, DerivativeMatchesFiniteDifference) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-40, 40);
  for (const auto& f : families()) {
    DerivativeTable t(monomial_symbol(f.dim, f.d));
    for (int j = 1; j <= f.dim; ++j) {
      for (int p = 0; p < 2 * f.dim; ++p) {
        KernelSymbol s = t.derive(j, p);
        KernelSymbol ds = t.derive(j, p + 1);
        for (int trial = 0; trial < 5; ++trial) {
          std::vector<double> xi(f.dim);
          for (auto& v : xi) v = (num(rng) + 0.5) / 16.0;
          std::vector<double> lo = xi, hi = xi;
          lo[j - 1] -= 1e-5;
          hi[j - 1] += 1e-5;
          const double fd = (s(hi) - s(lo)) / 2e-5;
          const double ex = ds(xi);
          EXPECT_LE(std::fabs(fd - ex), 1e-6 * std::max(std::fabs(ex), 1e-3))
              << "dim " << f.dim << " axis " << j << " order " << p;
        }
      }
    }
  }
}

TEST(SymbolProperties, LowestDegree) {
  for (const auto& f : families()) {
    DerivativeTable t(monomial_symbol(f.dim, f.d));
    for (int j = 1; j <= f.dim; ++j) {
      for (int p = 1; p <= 2 * f.dim; ++p) {
        const MultiIndexPoly P = t.derive(j, p).numerator();
        if (P.is_zero()) continue;
        EXPECT_GE(P.min_degree(), p + total_degree(f.d)) << "axis " << j << " order " << p;
      }
    }
  }
}

double envelope_max(const MultiIndexPoly& P, int dim, int order, int deg, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double best = 0.0;
  for (int i = 0; i < 10000; ++i) {
    std::vector<double> xi(dim);
    double n2 = 0.0;
    for (auto& v : xi) {
      v = g(rng);
      n2 += v * v;
    }
    const double r = std::pow(u(rng), 1.0 / dim) / std::sqrt(n2);
    for (auto& v : xi) v *= r;
    const double radius = r * std::sqrt(n2);
    if (radius == 0.0) continue;
    best = std::max(best, std::fabs(P.eval(xi)) / std::pow(radius, order + deg));
  }
  return best;
}

TEST(SymbolProperties, EnvelopeBounded) {
  std::mt19937_64 a(11), b(12);
  for (const auto& f : families()) {
    DerivativeTable t(monomial_symbol(f.dim, f.d));
    for (int p = 1; p <= 3; ++p) {
      const MultiIndexPoly P = t.derive(1, p).numerator();
      const double m1 = envelope_max(P, f.dim, p, total_degree(f.d), a);
      const double m2 = envelope_max(P, f.dim, p, total_degree(f.d), b);
      EXPECT_TRUE(std::isfinite(m1));
      EXPECT_LE(m2, 1.5 * m1);
    }
  }
}

TEST(SymbolProperties, OriginSlopeK0) {
  for (int dim : {2, 3}) {
    DerivativeTable t(monomial_symbol(dim, k0_exponents(dim)));
    std::vector<double> u = dim == 2 ? std::vector<double>{0.6, 0.8} : std::vector<double>{0.48, 0.6, 0.64};
    for (int j = 1; j <= dim; ++j) {
      for (int p = 1; p <= 3; ++p) {
        KernelSymbol s = t.derive(j, p);
        std::vector<double> x1(dim), x2(dim);
        for (int a = 0; a < dim; ++a) {
          x1[a] = 1e-4 * u[a];
          x2[a] = 1e-5 * u[a];
        }
        const double slope = std::log(std::fabs(s(x1)) / std::fabs(s(x2))) / std::log(10.0);
        EXPECT_NEAR(slope, -(p + 2 - 2), 0.05) << "dim " << dim << " axis " << j << " order " << p;
      }
    }
  }
}

TEST(DerivativeTable, ConcurrentReaders) {
  DerivativeTable t(monomial_symbol(3, k0_exponents(3)));
  std::vector<KernelSymbol> results(4, t.base());
  std::vector<std::thread> pool;
  for (int i = 0; i < 4; ++i) {
    pool.emplace_back([&t, &results, i] { results[i] = t.derive(1, 5); });
  }
  for (auto& th : pool) th.join();
  for (const auto& r : results) EXPECT_EQ(r, t.derive(1, 5));
}

}  // namespace
}  // namespace gkp
