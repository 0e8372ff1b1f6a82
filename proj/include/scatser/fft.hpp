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

#ifndef SCATSER_FFT_HPP_
#define SCATSER_FFT_HPP_

#include <complex>
#include <cstddef>
#include <new>
#include <vector>

namespace scatser {

using Complex = std::complex<double>;

namespace fft_detail {
void *AlignedAlloc(std::size_t bytes);
void AlignedFree(void *p) noexcept;
}  // namespace fft_detail

// SIMD-aligned storage so every buffer can be handed to a cached FFTW plan.
template <typename T>
struct FftwAllocator {
  using value_type = T;
  FftwAllocator() = default;
  template <typename U>
  FftwAllocator(const FftwAllocator<U> &) noexcept {}
  T *allocate(std::size_t n) {
    return static_cast<T *>(fft_detail::AlignedAlloc(n * sizeof(T)));
  }
  void deallocate(T *p, std::size_t) noexcept { fft_detail::AlignedFree(p); }
  template <typename U>
  bool operator==(const FftwAllocator<U> &) const noexcept { return true; }
};

using RealBuffer = std::vector<double, FftwAllocator<double>>;
using ComplexBuffer = std::vector<Complex, FftwAllocator<Complex>>;

// Unnormalized transforms. Plans are created once per (kind, n) under a lock
// with FFTW_ESTIMATE, so results are reproducible across runs; execution is
// thread-safe. Sizes come from the buffers: real length n, half spectrum
// n/2 + 1.

/// in.size() == n, out.size() == n/2 + 1.
void RealForward(const RealBuffer &in, ComplexBuffer *out);
/// in.size() == n/2 + 1 (preserved), out.size() == n. Output scaled by n.
void RealInverse(const ComplexBuffer &in, RealBuffer *out);
void ComplexForward(const ComplexBuffer &in, ComplexBuffer *out);
/// exp(+i...) direction, unnormalized.
void ComplexInverse(const ComplexBuffer &in, ComplexBuffer *out);

std::size_t NextPow2(std::size_t n);
bool IsPow2(std::size_t n);

}  // namespace scatser

#endif  // SCATSER_FFT_HPP_
