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

// Leave-one-speaker-out evaluation. Fold k tests on the k-th speaker in
// sorted order, validates on the next one (cyclically) and trains on the
// rest. Hyperparameters come from a grid search scored by validation UAR;
// the final model is retrained on the training speakers only.

#ifndef SCATSER_EVAL_HPP_
#define SCATSER_EVAL_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "scatser/config.hpp"
#include "scatser/features.hpp"
#include "scatser/metrics.hpp"
#include "scatser/parallel.hpp"
#include "scatser/svm.hpp"

namespace scatser {

struct ManifestRow {
  std::string utterance_id;
  std::string path;  // resolved against the manifest directory when relative
  std::string speaker_id;
  std::string label;
};

struct DatasetManifest {
  std::vector<ManifestRow> rows;

  std::vector<std::string> Speakers() const;  // sorted, unique
  std::vector<std::string> Labels() const;    // sorted, unique
  std::vector<UtteranceInfo> Infos() const;
  /// Throws InvalidArgument on duplicate utterance ids and TooFewSpeakers
  /// below three speakers. Returns warnings for labels seen by only one
  /// speaker.
  std::vector<std::string> Validate() const;
};

/// CSV with header `utterance_id,path,speaker_id,label`. Throws ParseError.
DatasetManifest ParseManifest(std::istream &in, const std::filesystem::path &base_dir);
DatasetManifest ReadManifest(const std::filesystem::path &path);
void WriteManifest(std::ostream &out, const DatasetManifest &manifest);

struct LosoFold {
  std::vector<std::string> train_speakers;
  std::string valid_speaker;
  std::string test_speaker;
};

/// Throws TooFewSpeakers for fewer than three distinct speakers.
std::vector<LosoFold> LosoSplits(std::vector<std::string> speakers);

struct FoldReport {
  LosoFold fold;
  double best_c = 0.0;
  double best_gamma = 0.0;
  double valid_uar = 0.0;
  double accuracy = 0.0;
  double uar = 0.0;
  ConfusionMatrix confusion;
  std::vector<std::string> empty_classes;  // absent from this test speaker
  std::size_t n_train = 0;
  std::size_t n_valid = 0;
  std::size_t n_test = 0;
  int convergence_warnings = 0;
};

struct ExperimentReport {
  FeatureKind kind = FeatureKind::kScatnet;
  std::string config_hash;
  std::size_t dim = 0;
  std::vector<std::string> classes;
  std::vector<FoldReport> folds;
  double mean_accuracy = 0.0;
  double mean_uar = 0.0;
  ConfusionMatrix pooled;
  double pooled_accuracy = 0.0;
  double pooled_uar = 0.0;
  int convergence_warnings = 0;
};

/// Runs every LOSO fold on a feature table. Errors are rethrown with the
/// fold's test speaker prepended to the message.
ExperimentReport RunExperiment(const FeatureTable &table, const SvmGrid &grid,
                               Execution exec = Execution::kParallel);

std::string ReportJson(const ExperimentReport &report);
/// One row per fold plus a final `mean` row.
std::string ReportCsv(const ExperimentReport &report);
/// Aligned plain-text table with row-wise recalls.
std::string ConfusionText(const ConfusionMatrix &cm);

struct SweepRow {
  int q = 0;
  int t = 0;
  double mean_accuracy = 0.0;
  double mean_uar = 0.0;
  double pooled_uar = 0.0;
  std::string config_hash;
  int convergence_warnings = 0;
};

/// Extracts features (reusing `<cache_dir>/<kind>-<hash>.csv` when present
/// and writing it otherwise; empty cache_dir disables caching) and runs one
/// experiment per (q, t) cell, q-major. Throws InvalidConfig for MFCC runs
/// and the first extraction failure's error otherwise.
std::vector<SweepRow> ParamSweep(const DatasetManifest &manifest, const std::vector<int> &q_values,
                                 const std::vector<int> &t_values, const RunConfig &base,
                                 Execution exec = Execution::kParallel);
std::string SweepCsv(const std::vector<SweepRow> &rows);

/// Extraction over a manifest, loading each WAV from disk.
ExtractionResult ExtractManifest(const DatasetManifest &manifest, const RunConfig &cfg,
                                 Execution exec = Execution::kParallel);

/// Loads a cached table for `cfg` or extracts and caches it. Throws the
/// first extraction failure.
FeatureTable CachedFeatures(const DatasetManifest &manifest, const RunConfig &cfg,
                            Execution exec = Execution::kParallel);

}  // namespace scatser

#endif  // SCATSER_EVAL_HPP_
