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

// Synthetic speaker-by-class dataset for end-to-end checks. The class sets
// the envelope modulation rate and the speaker sets the carrier frequency:
//
//   x(t) = 0.1 e(t) (r c(t) + w(t)) / sqrt(1 + r^2)
//   e(t) = 1 + d cos(2 pi f_m (1 + j_m) t + phase)
//
// where c is a unit-variance sinusoid at the speaker carrier (1 + j_c), w is
// unit white noise, r is the carrier-to-noise amplitude ratio, d ~ U(0.5, 0.9)
// and the jitters j ~ U(-0.03, 0.03).

#ifndef SCATSER_SYNTH_HPP_
#define SCATSER_SYNTH_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "scatser/audio_io.hpp"
#include "scatser/eval.hpp"

namespace scatser {

struct AmDatasetSpec {
  std::vector<double> carriers_hz{600.0, 1200.0, 2400.0, 4800.0};  // one per speaker
  std::vector<double> rates_hz{4.0, 16.0, 64.0};                   // one per class
  int per_cell = 10;
  int n = 51000;
  int sample_rate_hz = 16000;
  double carrier_to_noise = 0.3;
  std::uint64_t seed = 20260401;
  bool shuffle_labels = false;  // permute labels across utterances (control)
};

struct SynthUtterance {
  UtteranceInfo info;
  Waveform wave;
};

/// Utterance ids are `spk<s>_cls<c>_<r>`, speakers `spk<s>`, labels
/// `mod<rate>hz`. Deterministic for a given spec.
std::vector<SynthUtterance> GenerateAmDataset(const AmDatasetSpec &spec);

/// Writes one float32 WAV per utterance under `dir` plus `dir/manifest.csv`
/// and returns the manifest path.
std::filesystem::path WriteAmDataset(const std::vector<SynthUtterance> &data,
                                     const std::filesystem::path &dir);

}  // namespace scatser

#endif  // SCATSER_SYNTH_HPP_
