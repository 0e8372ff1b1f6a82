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

// Two-layer time scattering and log-frequency scattering.
//
//   S0 = |x * phi|
//   S1[l1] = |x * psi_l1| * phi
//   S2[l1, l2] = ||x * psi_l1| * psi_l2| * phi        for l2 < bandwidth(l1)
//
// All convolutions are circular on n_fft = next_pow2(n) samples and every
// averaged sequence is sampled with hop t/2. Frequency scattering takes the
// S1 frame at each time index, lays the geometric-region coefficients out by
// increasing log-frequency and applies a Q=1 Morlet modulus decomposition
// along that axis, without averaging.

#ifndef SCATSER_SCATTERING_HPP_
#define SCATSER_SCATTERING_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "scatser/audio_io.hpp"
#include "scatser/fft.hpp"
#include "scatser/filterbank.hpp"
#include "scatser/parallel.hpp"

namespace scatser {

struct ScatteringConfig {
  int q1 = 5;
  int q2 = 1;
  int t = 16384;
  int n = 51000;
  bool freq_scattering = false;
  int f_wavelet_len = 32;
  bool log_compress = false;
  double log_eps = 1e-7;
  int sample_rate_hz = 16000;

  std::size_t NFft() const { return NextPow2(static_cast<std::size_t>(n)); }
  int Hop() const { return t / 2; }
  std::size_t FrameCount() const { return NFft() / static_cast<std::size_t>(Hop()); }

  /// Checks everything that does not need a built bank; throws InvalidConfig.
  void Validate() const;
};

struct ScatteringPath {
  int order = 0;
  std::optional<int> lambda1_index;
  std::optional<int> lambda2_index;
  // Set only for frequency-scattering paths (which carry order 1 and the
  // lambda1 position on the log-frequency axis).
  std::optional<int> freq_wavelet_index;

  bool IsFrequency() const { return freq_wavelet_index.has_value(); }
  bool operator==(const ScatteringPath &) const = default;
};

struct ScatteringFeatures {
  std::vector<ScatteringPath> paths;           // canonical order
  std::vector<std::vector<double>> frames;     // frames[path][time]
  std::vector<double> utterance_vector;        // mean over time per path

  std::size_t FrameCount() const { return frames.empty() ? 0 : frames.front().size(); }
  /// Index of `path` in `paths`, or nullopt.
  std::optional<std::size_t> Find(const ScatteringPath &path) const;
};

/// (lambda1, lambda2) index pairs with center(lambda2) < bandwidth(lambda1),
/// lexicographic.
std::vector<std::pair<int, int>> AdmissiblePaths(const FilterBank &bank1,
                                                 const FilterBank &bank2);

/// |x * psi| at full resolution for every filter of `bank`.
/// Throws LengthMismatch unless x.size() == bank n_fft.
std::vector<RealBuffer> WaveletModulus(std::span<const double> x,
                                       const FilterBank &bank,
                                       Execution exec = Execution::kParallel);

struct SecondLayer {
  std::vector<std::pair<int, int>> paths;  // (lambda1, lambda2)
  std::vector<RealBuffer> envelopes;       // ||x*psi1| * psi2|, same order
};

/// Modulation layer over the first-layer envelopes; inadmissible paths are
/// omitted.
SecondLayer ScatterLayer2(const std::vector<RealBuffer> &u1, const FilterBank &bank2,
                          const FilterBank &bank1,
                          Execution exec = Execution::kParallel);

/// Circular convolution with phi (frequency-domain multiply) sampled every
/// `hop` samples. Each input must have the bank's n_fft length.
std::vector<std::vector<double>> LowpassAverage(const std::vector<RealBuffer> &u,
                                                std::span<const double> lowpass,
                                                int hop,
                                                Execution exec = Execution::kParallel);

/// Per-path mean over frames, in path order.
std::vector<double> PoolUtterance(const ScatteringFeatures &features);

/// Holds the filter banks for one configuration. Immutable after
/// construction and safe to share between threads.
class ScatteringTransform {
 public:
  explicit ScatteringTransform(const ScatteringConfig &cfg);

  const ScatteringConfig &config() const { return cfg_; }
  const FilterBank &bank1() const { return bank1_; }
  const FilterBank &bank2() const { return bank2_; }
  /// Bank along the log-frequency axis; only built when freq_scattering is on.
  const FilterBank *freq_bank() const { return freq_bank_ ? &*freq_bank_ : nullptr; }
  const std::vector<std::pair<int, int>> &admissible() const { return admissible_; }

  /// S0, S1, S2 frames plus pooled vector. Applies log compression to the
  /// frames when configured. `exec` picks the OpenMP or single-thread loop.
  ScatteringFeatures TimeScattering(const Waveform &x,
                                    Execution exec = Execution::kParallel) const;

  /// Appends frequency-scattering paths to `s_time`. Throws AxisTooShort when
  /// fewer than two geometric first-layer filters exist.
  ScatteringFeatures FrequencyScattering(const ScatteringFeatures &s_time) const;

  /// TimeScattering, plus FrequencyScattering when configured.
  ScatteringFeatures Compute(const Waveform &x,
                             Execution exec = Execution::kParallel) const;

  /// Signal after fix_length to n and zero padding to n_fft.
  RealBuffer PrepareSignal(const Waveform &x) const;

 private:
  ScatteringConfig cfg_;
  FilterBank bank1_;
  FilterBank bank2_;
  std::optional<FilterBank> freq_bank_;
  std::vector<std::pair<int, int>> admissible_;
  std::vector<double> lowpass_time_;  // real, even impulse response of phi
};

namespace reference {

/// Staged single-threaded implementation built directly from WaveletModulus,
/// ScatterLayer2 and LowpassAverage with full-length FFT convolutions. Kept to
/// cross-check the fused kernel in ScatteringTransform and for benchmarking.
ScatteringFeatures TimeScattering(const ScatteringTransform &transform,
                                  const Waveform &x);

}  // namespace reference

}  // namespace scatser

#endif  // SCATSER_SCATTERING_HPP_
