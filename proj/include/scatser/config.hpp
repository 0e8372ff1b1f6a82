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

#ifndef SCATSER_CONFIG_HPP_
#define SCATSER_CONFIG_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include "scatser/mfcc.hpp"
#include "scatser/scattering.hpp"
#include "scatser/svm.hpp"

namespace scatser {

enum class FeatureKind { kScatnet, kFScatnet, kMfcc, kScatLayer1, kScatLayer2 };

std::string_view FeatureKindName(FeatureKind kind);
/// Accepts scatnet, f-scatnet, mfcc, scat-layer1, scat-layer2; throws
/// InvalidArgument otherwise.
FeatureKind ParseFeatureKind(std::string_view name);
bool IsScatteringKind(FeatureKind kind);

// Everything a run needs. The text form is one `key = value` per line ('#'
// starts a comment, lists are comma separated); the JSON form is a single
// object with the same keys. Keys:
//
//   feature sample_rate_hz
//   q1 q2 t n freq_scattering f_wavelet_len log_compress log_eps
//   mfcc.n_coeffs mfcc.win_ms mfcc.hop_ms mfcc.n_fft mfcc.n_mels
//   mfcc.fmin_hz mfcc.fmax_hz
//   grid.c grid.gamma_scale
//   manifest cache_dir report_dir
struct RunConfig {
  FeatureKind feature = FeatureKind::kScatnet;
  int sample_rate_hz = 16000;
  ScatteringConfig scattering;
  MfccConfig mfcc;
  SvmGrid grid;
  std::string manifest;
  std::string cache_dir;
  std::string report_dir;

  /// Scattering settings with freq_scattering forced by the feature kind and
  /// the sample rate copied in.
  ScatteringConfig EffectiveScattering() const;

  /// FNV-1a 64 over the canonical text of the settings that change feature
  /// values for this kind, as 16 lowercase hex digits.
  std::string ConfigHash() const;

  std::string ToText() const;
  std::string ToJson() const;

  /// Detects JSON by a leading '{'. Unknown keys and malformed values throw
  /// InvalidConfig.
  static RunConfig Parse(std::string_view text);
  static RunConfig Load(const std::filesystem::path &path);

  bool operator==(const RunConfig &other) const { return ToText() == other.ToText(); }
};

std::uint64_t Fnv1a64(std::string_view bytes);

}  // namespace scatser

#endif  // SCATSER_CONFIG_HPP_
