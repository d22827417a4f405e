// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <vector>

#include "gkp/fft.hpp"
#include "gkp/grid.hpp"
#include "gkp/symbol.hpp"

namespace gkp {

// Convolution with the kernel of kappa * P / D on R^N (not on the torus),
// restricted to the grid box. The symbol is split at the origin:
//
//   P/D = [P/D - (P/|xi|^2) e^{-|xi|^2/4a}] + (P/|xi|^2) e^{-|xi|^2/4a}.
//
// The first bracket is continuous and its kernel decays fast, so it is
// applied spectrally. The second has an explicit kernel (derivatives of a
// Gaussian-smoothed Newton potential) which is convolved on a doubled grid
// with zero padding. Requires q = 1 and numerator terms of degree 1 or 2 for
// which kappa (-i)^{|e|} is real.
class FreeSpaceOperator {
 public:
  FreeSpaceOperator(const Grid& grid, const KernelSymbol& symbol, std::complex<double> kappa = 1.0);

  Field apply(const Field& f) const;

  const Grid& grid() const { return grid_; }
  double alpha() const { return alpha_; }

  // Physical-space long-range kernel at offset x.
  double long_range_kernel(const double* x) const;

 private:
  struct Term {
    int a, b;  // b = -1 for first-order terms
    double coeff;
  };
  Grid grid_;
  Grid padded_;
  RealFft fft_;
  double alpha_;
  std::vector<Term> terms_;
  std::vector<std::complex<double>> multiplier_;
};

}  // namespace gkp
