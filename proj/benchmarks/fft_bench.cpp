// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "gkp/fft.hpp"

namespace {

void BM_RealFftForward(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  gkp::RealFft fft({n, n});
  std::vector<double> in(fft.real_size(), 1.0);
  std::vector<std::complex<double>> out(fft.complex_size());
  for (auto _ : state) {
    fft.forward(in.data(), out.data());
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(fft.real_size()));
}
BENCHMARK(BM_RealFftForward)->RangeMultiplier(2)->Range(128, 1024)->Unit(benchmark::kMicrosecond);

void BM_RealFftRoundTrip3d(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  gkp::RealFft fft({n, n, n});
  std::vector<double> in(fft.real_size(), 1.0);
  std::vector<std::complex<double>> spec(fft.complex_size());
  for (auto _ : state) {
    fft.forward(in.data(), spec.data());
    fft.backward(spec.data(), in.data());
    benchmark::DoNotOptimize(in.data());
  }
}
BENCHMARK(BM_RealFftRoundTrip3d)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
