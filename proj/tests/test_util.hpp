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

// Signal generators and brute-force oracles shared by the unit and
// acceptance tests. Nothing here calls into the FFT backend.

#ifndef SCATSER_TESTS_TEST_UTIL_HPP_
#define SCATSER_TESTS_TEST_UTIL_HPP_

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "scatser/scattering.hpp"

namespace scatser::testing {

inline std::vector<double> WhiteNoise(std::size_t n, std::uint64_t seed, double sd = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, sd);
  std::vector<double> x(n);
  for (double &v : x) v = g(rng);
  return x;
}

inline std::vector<double> Sine(std::size_t n, double freq_hz, double rate_hz,
                                double amplitude = 1.0, double phase = 0.0) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = amplitude * std::sin(2.0 * M_PI * freq_hz * static_cast<double>(i) / rate_hz + phase);
  return x;
}

// O(n^2) DFT of a real sequence, bins 0..n/2.
inline std::vector<std::complex<double>> NaiveDft(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      // Reduce k*t mod n before the trig call to keep the phase exact.
      const double ang = -2.0 * M_PI * static_cast<double>((k * t) % n) / static_cast<double>(n);
      acc += x[t] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  return out;
}

// Band-limited noise: DFT brick-wall to [lo, hi] (normalized frequency) via
// the naive transform is too slow for long signals, so this sums random
// sinusoids on the bin grid instead.
inline std::vector<double> BandNoise(std::size_t n, double lo, double hi, std::uint64_t seed,
                                     std::size_t components = 400) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> f(lo, hi), ph(0.0, 2.0 * M_PI);
  std::normal_distribution<double> a(0.0, 1.0);
  std::vector<double> x(n, 0.0);
  for (std::size_t c = 0; c < components; ++c) {
    const double fc = f(rng), phase = ph(rng), amp = a(rng);
    for (std::size_t i = 0; i < n; ++i)
      x[i] += amp * std::cos(2.0 * M_PI * fc * static_cast<double>(i) + phase);
  }
  double e = 0.0;
  for (double v : x) e += v * v;
  const double s = 1.0 / std::sqrt(e / static_cast<double>(n));
  for (double &v : x) v *= s;
  return x;
}

inline double Norm(std::span<const double> x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return std::sqrt(e);
}

inline double DiffNorm(std::span<const double> a, std::span<const double> b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(e);
}

// All frames of all paths, path-major.
inline std::vector<double> FlattenFrames(const ScatteringFeatures &f) {
  std::vector<double> out;
  for (const auto &seq : f.frames) out.insert(out.end(), seq.begin(), seq.end());
  return out;
}

}  // namespace scatser::testing

#endif  // SCATSER_TESTS_TEST_UTIL_HPP_
