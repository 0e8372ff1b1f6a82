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

#ifndef SCATSER_AUDIO_IO_HPP_
#define SCATSER_AUDIO_IO_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace scatser {

/// Mono real-valued signal at a fixed sample rate. Nominal amplitude range is
/// [-1, 1]. Construction validates: non-empty, finite samples, positive rate.
class Waveform {
 public:
  Waveform(std::vector<double> samples, int sample_rate_hz);

  std::span<const double> samples() const { return samples_; }
  int sample_rate_hz() const { return sample_rate_hz_; }
  std::size_t size() const { return samples_.size(); }
  double operator[](std::size_t i) const { return samples_[i]; }

  bool operator==(const Waveform &) const = default;

 private:
  std::vector<double> samples_;
  int sample_rate_hz_;
};

enum class WavEncoding { kPcm16, kFloat32 };

/// Reads a RIFF/WAVE file holding PCM16 or IEEE float32 samples.
/// Channels are averaged to mono; PCM16 is scaled by 1/32768.
Waveform LoadWav(const std::filesystem::path &path);

/// Writes a mono WAV. PCM16 samples are rounded and clipped to int16.
void WriteWav(const std::filesystem::path &path, const Waveform &w,
              WavEncoding encoding = WavEncoding::kPcm16);

/// Band-limited resampling with a Kaiser-windowed sinc (80 dB design
/// attenuation, stopband starting at the lower of the two Nyquist rates).
/// Output length is round(len * target / source). Same rate returns a copy.
Waveform Resample(const Waveform &w, int target_hz);

/// Center-crops or symmetrically zero-pads to exactly n_samples. When the
/// padding is odd the extra zero goes on the right.
Waveform FixLength(const Waveform &w, std::size_t n_samples);

}  // namespace scatser

#endif  // SCATSER_AUDIO_IO_HPP_
