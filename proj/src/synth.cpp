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

#include "scatser/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "scatser/error.hpp"

namespace scatser {

namespace {

std::string RateLabel(double rate) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "mod%ghz", rate);
  return buf;
}

}  // namespace

std::vector<SynthUtterance> GenerateAmDataset(const AmDatasetSpec &spec) {
  if (spec.carriers_hz.empty() || spec.rates_hz.empty() || spec.per_cell < 1 || spec.n < 1 ||
      spec.sample_rate_hz < 1)
    throw Error(ErrorCode::kInvalidArgument, "empty synthetic dataset spec");
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> jitter(-0.03, 0.03);
  std::uniform_real_distribution<double> depth_dist(0.5, 0.9);
  std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * M_PI);
  std::normal_distribution<double> noise(0.0, 1.0);

  const double r = spec.carrier_to_noise;
  const double norm = 0.1 / std::sqrt(1.0 + r * r);
  std::vector<SynthUtterance> out;
  std::vector<double> x(static_cast<std::size_t>(spec.n));
  for (std::size_t s = 0; s < spec.carriers_hz.size(); ++s) {
    for (std::size_t c = 0; c < spec.rates_hz.size(); ++c) {
      for (int k = 0; k < spec.per_cell; ++k) {
        const double depth = depth_dist(rng);
        const double fm = spec.rates_hz[c] * (1.0 + jitter(rng));
        const double phase_m = phase_dist(rng);
        const double fc = spec.carriers_hz[s] * (1.0 + jitter(rng));
        const double phase_c = phase_dist(rng);
        for (int i = 0; i < spec.n; ++i) {
          const double t = static_cast<double>(i) / spec.sample_rate_hz;
          const double env = 1.0 + depth * std::cos(2.0 * M_PI * fm * t + phase_m);
          const double carrier = std::sqrt(2.0) * std::cos(2.0 * M_PI * fc * t + phase_c);
          x[static_cast<std::size_t>(i)] = norm * env * (r * carrier + noise(rng));
        }
        SynthUtterance u{{"spk" + std::to_string(s) + "_cls" + std::to_string(c) + "_" +
                              (k < 10 ? "0" : "") + std::to_string(k),
                          "spk" + std::to_string(s), RateLabel(spec.rates_hz[c])},
                         Waveform(x, spec.sample_rate_hz)};
        out.push_back(std::move(u));
      }
    }
  }
  if (spec.shuffle_labels) {
    std::vector<std::string> labels;
    for (const SynthUtterance &u : out) labels.push_back(u.info.label);
    std::shuffle(labels.begin(), labels.end(), rng);
    for (std::size_t i = 0; i < out.size(); ++i) out[i].info.label = labels[i];
  }
  return out;
}

std::filesystem::path WriteAmDataset(const std::vector<SynthUtterance> &data,
                                     const std::filesystem::path &dir) {
  std::filesystem::create_directories(dir);
  DatasetManifest manifest;
  for (const SynthUtterance &u : data) {
    const std::string file = u.info.utterance_id + ".wav";
    WriteWav(dir / file, u.wave, WavEncoding::kFloat32);
    manifest.rows.push_back({u.info.utterance_id, file, u.info.speaker_id, u.info.label});
  }
  const std::filesystem::path path = dir / "manifest.csv";
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kFileNotFound, "cannot write " + path.string());
  WriteManifest(out, manifest);
  return path;
}

}  // namespace scatser
