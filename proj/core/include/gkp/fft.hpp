// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace gkp {

// Real-to-complex transform of a row-major array (FFTW). The complex side has
// the last axis truncated to n/2 + 1. Plans are shared between instances of
// the same shape; execution is thread-safe.
class RealFft {
 public:
  explicit RealFft(std::vector<std::size_t> shape);

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t real_size() const { return real_size_; }
  std::size_t complex_size() const { return complex_size_; }

  // Unnormalized e^{-i x.xi} transform.
  void forward(const double* in, std::complex<double>* out) const;
  // Unnormalized inverse; overwrites `in`.
  void backward(std::complex<double>* in, double* out) const;

  struct Plans;

 private:
  std::vector<std::size_t> shape_;
  std::size_t real_size_ = 1;
  std::size_t complex_size_ = 1;
  std::shared_ptr<const Plans> plans_;
};

}  // namespace gkp
