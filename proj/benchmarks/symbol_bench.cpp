// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <vector>

#include "gkp/symbol.hpp"

namespace {

// Uncached derivation of order 2N along axis 1.
void BM_DeriveSymbol(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const gkp::KernelSymbol base = gkp::monomial_symbol(dim, gkp::k0_exponents(dim));
  for (auto _ : state) {
    gkp::DerivativeTable table(base);
    benchmark::DoNotOptimize(table.derive(1, 2 * dim));
  }
}
BENCHMARK(BM_DeriveSymbol)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_EvalSymbol(benchmark::State& state) {
  gkp::DerivativeTable table(gkp::monomial_symbol(3, gkp::k0_exponents(3)));
  const gkp::KernelSymbol s = table.derive(1, 6);
  const std::vector<double> xi{0.3, -0.2, 0.7};
  for (auto _ : state) benchmark::DoNotOptimize(s(xi));
}
BENCHMARK(BM_EvalSymbol);

}  // namespace
