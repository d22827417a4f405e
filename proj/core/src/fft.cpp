// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#include "gkp/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "gkp/errors.hpp"

namespace gkp {

struct RealFft::Plans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
  }
  static std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
  }
};

namespace {

std::shared_ptr<const RealFft::Plans> plans_for(const std::vector<std::size_t>& shape, std::size_t nr,
                                                std::size_t nc) {
  static std::mutex cache_mu;
  static std::map<std::vector<std::size_t>, std::weak_ptr<const RealFft::Plans>> cache;
  std::lock_guard lock(cache_mu);
  if (auto it = cache.find(shape); it != cache.end()) {
    if (auto sp = it->second.lock()) return sp;
  }
  std::vector<int> dims(shape.begin(), shape.end());
  auto plans = std::make_shared<RealFft::Plans>();
  {
    std::lock_guard plock(RealFft::Plans::planner_mutex());
    // Scratch buffers only fix the in/out layout; FFTW_ESTIMATE leaves them untouched.
    double* r = fftw_alloc_real(nr);
    fftw_complex* c = fftw_alloc_complex(nc);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    plans->fwd = fftw_plan_dft_r2c(static_cast<int>(dims.size()), dims.data(), r, c, flags);
    plans->bwd = fftw_plan_dft_c2r(static_cast<int>(dims.size()), dims.data(), c, r, flags);
    fftw_free(r);
    fftw_free(c);
  }
  if (!plans->fwd || !plans->bwd) throw Error("fftw: planning failed");
  cache[shape] = plans;
  return plans;
}

}  // namespace

RealFft::RealFft(std::vector<std::size_t> shape) : shape_(std::move(shape)) {
  if (shape_.empty()) throw PreconditionError("fft: empty shape");
  for (std::size_t i = 0; i < shape_.size(); ++i) {
    real_size_ *= shape_[i];
    complex_size_ *= (i + 1 == shape_.size()) ? shape_[i] / 2 + 1 : shape_[i];
  }
  plans_ = plans_for(shape_, real_size_, complex_size_);
}

void RealFft::forward(const double* in, std::complex<double>* out) const {
  fftw_execute_dft_r2c(plans_->fwd, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
}

void RealFft::backward(std::complex<double>* in, double* out) const {
  fftw_execute_dft_c2r(plans_->bwd, reinterpret_cast<fftw_complex*>(in), out);
}

}  // namespace gkp
