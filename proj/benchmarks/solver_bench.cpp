// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "gkp/diagnostics.hpp"
#include "gkp/solver.hpp"

namespace {

void BM_FixedPointMap(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto boundary = state.range(1) ? gkp::Boundary::free_space : gkp::Boundary::periodic;
  const gkp::Grid g = gkp::Grid::cube(2, 40.0, n);
  const gkp::Field v = gkp::lump_field(g);
  gkp::FixedPointMap T(g, gkp::Rational(1, 1), boundary);
  for (auto _ : state) benchmark::DoNotOptimize(T(v));
}
BENCHMARK(BM_FixedPointMap)
    ->ArgsProduct({{256, 512}, {0, 1}})
    ->ArgNames({"n", "free"})
    ->Unit(benchmark::kMillisecond);

void BM_PohozaevCheck(benchmark::State& state) {
  const gkp::Grid g = gkp::Grid::cube(2, 80.0, static_cast<std::size_t>(state.range(0)));
  const gkp::WaveState w(gkp::lump_field(g), gkp::Rational(1, 1));
  for (auto _ : state) benchmark::DoNotOptimize(gkp::pohozaev_check(w));
}
BENCHMARK(BM_PohozaevCheck)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace
