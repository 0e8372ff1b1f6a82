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

// Utterance-level feature extraction and the SCATFEAT v1 text format:
//
//   #SCATFEAT v1 kind=<kind> dim=<d> config_hash=<hex>
//   utterance_id,speaker_id,label,v1,...,vd
//
// Rows are sorted by utterance_id and values use 17 significant digits.

#ifndef SCATSER_FEATURES_HPP_
#define SCATSER_FEATURES_HPP_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scatser/audio_io.hpp"
#include "scatser/config.hpp"
#include "scatser/error.hpp"
#include "scatser/matrix.hpp"
#include "scatser/parallel.hpp"
#include "scatser/scattering.hpp"

namespace scatser {

struct UtteranceInfo {
  std::string utterance_id;
  std::string speaker_id;
  std::string label;
};

struct FeatureRow {
  UtteranceInfo info;
  std::vector<double> values;
};

struct FeatureTable {
  FeatureKind kind = FeatureKind::kScatnet;
  std::string config_hash;
  std::size_t dim = 0;
  std::vector<FeatureRow> rows;

  Matrix Values() const;
  std::vector<std::string> Labels() const;
  std::vector<std::string> Speakers() const;  // sorted, unique
  std::vector<std::string> Classes() const;   // sorted, unique
};

void WriteFeatureCsv(std::ostream &out, const FeatureTable &table);
void WriteFeatureCsv(const std::filesystem::path &path, const FeatureTable &table);
/// Throws ParseError on a malformed header or row.
FeatureTable ReadFeatureCsv(std::istream &in);
FeatureTable ReadFeatureCsv(const std::filesystem::path &path);

/// Keeps the pooled entries whose path belongs to the feature kind: orders
/// 0 and 1 for scat-layer1, order 2 for scat-layer2, time paths for scatnet
/// and everything for f-scatnet.
std::vector<double> SelectPooled(const ScatteringFeatures &features, FeatureKind kind);

// Maps one waveform to its utterance vector for a run configuration. Holds
// the filter banks; thread-safe.
class FeatureExtractor {
 public:
  explicit FeatureExtractor(const RunConfig &cfg);

  /// Resamples to the configured rate when needed. `exec` controls the
  /// inner scattering loop.
  std::vector<double> Extract(const Waveform &x, Execution exec = Execution::kParallel) const;
  FeatureKind kind() const { return kind_; }
  const std::string &config_hash() const { return config_hash_; }

 private:
  FeatureKind kind_;
  int sample_rate_hz_;
  MfccConfig mfcc_;
  std::optional<ScatteringTransform> transform_;
  std::string config_hash_;
};

struct ExtractionFailure {
  std::string utterance_id;
  ErrorCode code = ErrorCode::kInvalidArgument;
  std::string message;
};

struct ExtractionResult {
  FeatureTable table;
  std::vector<ExtractionFailure> failures;  // sorted by utterance_id
};

using WaveformLoader = std::function<Waveform(std::size_t index)>;

/// Extracts every utterance, in parallel over utterances under kParallel.
/// Failures are collected rather than thrown; the table holds the rest,
/// sorted by utterance_id.
ExtractionResult ExtractFeatures(const std::vector<UtteranceInfo> &utterances,
                                 const WaveformLoader &load, const RunConfig &cfg,
                                 Execution exec = Execution::kParallel);

}  // namespace scatser

#endif  // SCATSER_FEATURES_HPP_
