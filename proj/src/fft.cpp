/* Copyright 2026 The scatser Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "scatser/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

#include "scatser/error.hpp"

namespace scatser {

namespace fft_detail {

void *AlignedAlloc(std::size_t bytes) {
  void *p = fftw_malloc(bytes == 0 ? 1 : bytes);
  if (p == nullptr) throw std::bad_alloc();
  return p;
}

void AlignedFree(void *p) noexcept { fftw_free(p); }

}  // namespace fft_detail

namespace {

enum class Kind { kR2C, kC2R, kC2CForward, kC2CBackward };

class PlanCache {
 public:
  ~PlanCache() {
    for (auto &entry : plans_) fftw_destroy_plan(entry.second);
  }

  fftw_plan Get(Kind kind, int n) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(kind, n);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    // Planning arrays are scratch; FFTW_ESTIMATE leaves them untouched.
    const std::size_t nc = static_cast<std::size_t>(n);
    auto *r = static_cast<double *>(fftw_malloc(sizeof(double) * nc));
    auto *c1 = static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * nc));
    auto *c2 = static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * nc));
    fftw_plan p = nullptr;
    switch (kind) {
      case Kind::kR2C: p = fftw_plan_dft_r2c_1d(n, r, c1, FFTW_ESTIMATE); break;
      case Kind::kC2R:
        p = fftw_plan_dft_c2r_1d(n, c1, r, FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
        break;
      case Kind::kC2CForward:
        p = fftw_plan_dft_1d(n, c1, c2, FFTW_FORWARD, FFTW_ESTIMATE);
        break;
      case Kind::kC2CBackward:
        p = fftw_plan_dft_1d(n, c1, c2, FFTW_BACKWARD, FFTW_ESTIMATE);
        break;
    }
    fftw_free(r);
    fftw_free(c1);
    fftw_free(c2);
    if (p == nullptr) throw Error(ErrorCode::kInvalidArgument, "FFTW planning failed");
    plans_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<Kind, int>, fftw_plan> plans_;
};

PlanCache &Plans() {
  static PlanCache cache;
  return cache;
}

fftw_complex *AsFftw(Complex *p) { return reinterpret_cast<fftw_complex *>(p); }

}  // namespace

void RealForward(const RealBuffer &in, ComplexBuffer *out) {
  const int n = static_cast<int>(in.size());
  if (out->size() != in.size() / 2 + 1)
    throw Error(ErrorCode::kLengthMismatch, "RealForward output size");
  fftw_execute_dft_r2c(Plans().Get(Kind::kR2C, n), const_cast<double *>(in.data()),
                       AsFftw(out->data()));
}

void RealInverse(const ComplexBuffer &in, RealBuffer *out) {
  const int n = static_cast<int>(out->size());
  if (in.size() != out->size() / 2 + 1)
    throw Error(ErrorCode::kLengthMismatch, "RealInverse input size");
  ComplexBuffer scratch(in);
  fftw_execute_dft_c2r(Plans().Get(Kind::kC2R, n), AsFftw(scratch.data()),
                       out->data());
}

void ComplexForward(const ComplexBuffer &in, ComplexBuffer *out) {
  const int n = static_cast<int>(in.size());
  if (out->size() != in.size())
    throw Error(ErrorCode::kLengthMismatch, "ComplexForward size");
  fftw_execute_dft(Plans().Get(Kind::kC2CForward, n),
                   AsFftw(const_cast<Complex *>(in.data())), AsFftw(out->data()));
}

void ComplexInverse(const ComplexBuffer &in, ComplexBuffer *out) {
  const int n = static_cast<int>(in.size());
  if (out->size() != in.size())
    throw Error(ErrorCode::kLengthMismatch, "ComplexInverse size");
  fftw_execute_dft(Plans().Get(Kind::kC2CBackward, n),
                   AsFftw(const_cast<Complex *>(in.data())), AsFftw(out->data()));
}

std::size_t NextPow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

bool IsPow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace scatser
