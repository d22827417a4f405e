// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#include "spectral.hpp"

#include "gkp/errors.hpp"

namespace gkp::detail {

std::vector<Complex> forward(const Field& f) {
  RealFft fft(f.grid().sizes());
  std::vector<Complex> out(fft.complex_size());
  fft.forward(f.values().data(), out.data());
  return out;
}

Field backward(const Grid& g, std::vector<Complex> spectrum) {
  RealFft fft(g.sizes());
  if (spectrum.size() != fft.complex_size()) throw PreconditionError("spectrum length mismatch");
  std::vector<double> out(fft.real_size());
  fft.backward(spectrum.data(), out.data());
  const double s = 1.0 / static_cast<double>(out.size());
  for (double& v : out) v *= s;
  return Field(g, std::move(out));
}

Field apply_table(const Field& f, const std::vector<Complex>& table) {
  auto spec = forward(f);
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= table[i];
  return backward(f.grid(), std::move(spec));
}

}  // namespace gkp::detail
