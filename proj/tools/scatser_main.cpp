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

// scatser command-line front end.
//
// Exit status: 0 success, 1 usage or configuration error, 2 data error,
// 3 finished with SVM convergence warnings.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scatser/config.hpp"
#include "scatser/error.hpp"
#include "scatser/eval.hpp"
#include "scatser/features.hpp"
#include "scatser/filterbank.hpp"
#include "scatser/parallel.hpp"
#include "scatser/svm.hpp"
#include "scatser/synth.hpp"

namespace {

namespace fs = std::filesystem;
using namespace scatser;  // NOLINT

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitConvergence = 3;

void WriteText(const fs::path &path, const std::string &text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kFileNotFound, "cannot write " + path.string());
  out << text;
}

RunConfig LoadConfig(const std::string &path) {
  return path.empty() ? RunConfig{} : RunConfig::Load(path);
}

int WarnConvergence(int warnings) {
  if (warnings == 0) return kExitOk;
  std::cerr << "warning: " << warnings << " SVM machine(s) hit the iteration cap\n";
  return kExitConvergence;
}

struct ExtractArgs {
  std::string manifest, feature, config, out;
};

int Extract(const ExtractArgs &a) {
  RunConfig cfg = LoadConfig(a.config);
  if (!a.feature.empty()) cfg.feature = ParseFeatureKind(a.feature);
  const DatasetManifest manifest = ReadManifest(a.manifest);
  // Speaker count only matters for evaluation; extraction checks ids.
  try {
    manifest.Validate();
  } catch (const Error &e) {
    if (e.code() != ErrorCode::kTooFewSpeakers) throw;
  }
  const ExtractionResult res = ExtractManifest(manifest, cfg);
  if (!res.failures.empty()) {
    for (const ExtractionFailure &f : res.failures)
      std::cerr << "error: utterance '" << f.utterance_id << "': " << f.message << "\n";
    std::cerr << res.failures.size() << " of " << manifest.rows.size()
              << " utterance(s) failed; no feature file written\n";
    return kExitData;
  }
  WriteFeatureCsv(fs::path(a.out), res.table);
  std::cout << "wrote " << res.table.rows.size() << " rows, dim " << res.table.dim << ", kind "
            << FeatureKindName(res.table.kind) << ", config_hash " << res.table.config_hash
            << " to " << a.out << "\n";
  return kExitOk;
}

struct EvaluateArgs {
  std::string features, grid, config, report_dir;
};

int Evaluate(const EvaluateArgs &a) {
  const FeatureTable table = ReadFeatureCsv(fs::path(a.features));
  SvmGrid grid;
  if (!a.config.empty()) {
    const RunConfig cfg = RunConfig::Load(a.config);
    if (cfg.ConfigHash() != table.config_hash || cfg.feature != table.kind)
      throw Error(ErrorCode::kProvenanceMismatch,
                  "feature file has kind " + std::string(FeatureKindName(table.kind)) + " hash " +
                      table.config_hash + ", config gives kind " +
                      std::string(FeatureKindName(cfg.feature)) + " hash " + cfg.ConfigHash());
    grid = cfg.grid;
  }
  if (!a.grid.empty()) grid = RunConfig::Load(a.grid).grid;
  const ExperimentReport report = RunExperiment(table, grid);
  const fs::path dir(a.report_dir);
  WriteText(dir / "report.json", ReportJson(report));
  WriteText(dir / "folds.csv", ReportCsv(report));
  WriteText(dir / "confusion.txt", ConfusionText(report.pooled));
  std::printf("kind %s  config_hash %s  folds %zu\n", std::string(FeatureKindName(report.kind)).c_str(),
              report.config_hash.c_str(), report.folds.size());
  std::printf("mean accuracy %.4f  mean UAR %.4f  pooled UAR %.4f\n", report.mean_accuracy,
              report.mean_uar, report.pooled_uar);
  std::cout << ConfusionText(report.pooled);
  return WarnConvergence(report.convergence_warnings);
}

struct SweepArgs {
  std::string manifest, config, report_dir, cache_dir;
  std::vector<int> q{1, 3, 5, 8};
  std::vector<int> t{4096, 8192, 16384, 32768};
};

int Sweep(const SweepArgs &a) {
  RunConfig cfg = LoadConfig(a.config);
  if (!a.cache_dir.empty()) cfg.cache_dir = a.cache_dir;
  if (cfg.cache_dir.empty()) cfg.cache_dir = (fs::path(a.report_dir) / "cache").string();
  const DatasetManifest manifest = ReadManifest(a.manifest);
  for (const std::string &w : manifest.Validate()) std::cerr << "warning: " << w << "\n";
  const std::vector<SweepRow> rows = ParamSweep(manifest, a.q, a.t, cfg);
  const std::string csv = SweepCsv(rows);
  WriteText(fs::path(a.report_dir) / "sweep.csv", csv);
  std::cout << csv;
  int warnings = 0;
  for (const SweepRow &r : rows) warnings += r.convergence_warnings;
  return WarnConvergence(warnings);
}

struct FilterArgs {
  int q = 5, t = 16384, n = 51000, sample_rate = 16000;
  std::string out = "-";
};

int InspectFilters(const FilterArgs &a) {
  const FilterBank bank = BuildMorletBank(
      {a.q, a.t, static_cast<int>(NextPow2(static_cast<std::size_t>(a.n)))});
  std::ostringstream os;
  WriteFilterBankCsv(os, bank, a.sample_rate);
  if (a.out == "-") {
    std::cout << os.str();
  } else {
    WriteText(a.out, os.str());
  }
  const LpBounds lp = LittlewoodPaleyBounds(bank);
  std::fprintf(stderr, "%zu filters (%zu geometric), littlewood-paley max %.9f\n", bank.size(),
               bank.GeometricCount(), lp.max);
  return kExitOk;
}

struct TrainArgs {
  std::string features, out;
  double c = 1.0, gamma_scale = 1.0;
};

int Train(const TrainArgs &a) {
  const FeatureTable table = ReadFeatureCsv(fs::path(a.features));
  SvmParams params;
  params.c = a.c;
  params.gamma = a.gamma_scale / static_cast<double>(table.dim);
  const SvmModel model = SvmTrain(table.Values(), table.Labels(), params);
  WriteText(a.out, SvmModelToJson(model, table.config_hash));
  std::cout << "trained " << model.pairs.size() << " machine(s) on " << table.rows.size()
            << " rows, classes " << model.classes.size() << "\n";
  return WarnConvergence(model.ConvergenceWarnings());
}

struct PredictArgs {
  std::string model, features, out = "-";
};

int Predict(const PredictArgs &a) {
  std::ifstream in(a.model);
  if (!in) throw Error(ErrorCode::kFileNotFound, a.model);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string model_hash;
  const SvmModel model = SvmModelFromJson(buf.str(), &model_hash);
  const FeatureTable table = ReadFeatureCsv(fs::path(a.features));
  if (!model_hash.empty() && model_hash != table.config_hash)
    throw Error(ErrorCode::kProvenanceMismatch, "model trained on config_hash " + model_hash +
                                                    ", features have " + table.config_hash);
  const std::vector<std::string> pred = SvmPredictAll(model, table.Values());
  std::string csv = "utterance_id,label,predicted\n";
  std::size_t correct = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const UtteranceInfo &info = table.rows[i].info;
    csv += info.utterance_id + "," + info.label + "," + pred[i] + "\n";
    correct += pred[i] == info.label ? 1 : 0;
  }
  if (a.out == "-") {
    std::cout << csv;
  } else {
    WriteText(a.out, csv);
  }
  std::fprintf(stderr, "accuracy %.4f on %zu rows\n",
               pred.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(pred.size()),
               pred.size());
  return kExitOk;
}

struct SynthArgs {
  std::string out_dir;
  int per_cell = 10, n = 51000;
  std::uint64_t seed = AmDatasetSpec{}.seed;
  bool shuffle_labels = false;
};

int Synth(const SynthArgs &a) {
  AmDatasetSpec spec;
  spec.per_cell = a.per_cell;
  spec.n = a.n;
  spec.seed = a.seed;
  spec.shuffle_labels = a.shuffle_labels;
  const fs::path manifest = WriteAmDataset(GenerateAmDataset(spec), a.out_dir);
  std::cout << "wrote " << manifest.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Deep scattering features, MFCC baseline and LOSO SVM evaluation"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: SCATFEAT_THREADS or all cores)")
      ->check(CLI::PositiveNumber);

  ExtractArgs ex;
  auto *extract = app.add_subcommand("extract", "Extract utterance features to a SCATFEAT file");
  extract->add_option("--manifest", ex.manifest, "Manifest CSV")->required();
  extract->add_option("--feature", ex.feature, "scatnet|f-scatnet|mfcc|scat-layer1|scat-layer2");
  extract->add_option("--config", ex.config, "Run config (key = value or JSON)");
  extract->add_option("--out", ex.out, "Output feature file")->required();

  EvaluateArgs ev;
  auto *evaluate = app.add_subcommand("evaluate", "Leave-one-speaker-out SVM evaluation");
  evaluate->add_option("--features", ev.features, "SCATFEAT file")->required();
  evaluate->add_option("--grid", ev.grid, "Config file supplying grid.c and grid.gamma_scale");
  evaluate->add_option("--config", ev.config, "Config the features must have been extracted with");
  evaluate->add_option("--report-dir", ev.report_dir, "Report directory")->required();

  SweepArgs sw;
  auto *sweep = app.add_subcommand("sweep", "Q x T parameter sweep over a manifest");
  sweep->add_option("--manifest", sw.manifest, "Manifest CSV")->required();
  sweep->add_option("--q", sw.q, "Comma-separated Q values")->delimiter(',');
  sweep->add_option("--t", sw.t, "Comma-separated T values")->delimiter(',');
  sweep->add_option("--config", sw.config, "Base run config");
  sweep->add_option("--cache-dir", sw.cache_dir, "Feature cache (default <report-dir>/cache)");
  sweep->add_option("--report-dir", sw.report_dir, "Report directory")->required();

  FilterArgs fa;
  auto *inspect = app.add_subcommand("inspect-filters", "Dump a Morlet filter bank as CSV");
  inspect->add_option("--q", fa.q, "Filters per octave");
  inspect->add_option("--t", fa.t, "Averaging scale in samples");
  inspect->add_option("--n", fa.n, "Signal length (n_fft = next power of two)");
  inspect->add_option("--sample-rate", fa.sample_rate, "Sample rate for the Hz columns");
  inspect->add_option("--out", fa.out, "Output CSV, '-' for stdout");

  TrainArgs tr;
  auto *train = app.add_subcommand("train", "Train an SVM on a whole feature file");
  train->add_option("--features", tr.features, "SCATFEAT file")->required();
  train->add_option("--c", tr.c, "Soft-margin constant")->check(CLI::PositiveNumber);
  train->add_option("--gamma-scale", tr.gamma_scale, "RBF gamma = scale / dim")
      ->check(CLI::PositiveNumber);
  train->add_option("--out", tr.out, "Model JSON")->required();

  PredictArgs pr;
  auto *predict = app.add_subcommand("predict", "Label a feature file with a trained model");
  predict->add_option("--model", pr.model, "Model JSON")->required();
  predict->add_option("--features", pr.features, "SCATFEAT file")->required();
  predict->add_option("--out", pr.out, "Predictions CSV, '-' for stdout");

  SynthArgs sy;
  auto *synth = app.add_subcommand("synth", "Write the synthetic AM speaker/class dataset");
  synth->add_option("--out-dir", sy.out_dir, "Output directory")->required();
  synth->add_option("--per-cell", sy.per_cell, "Utterances per speaker and class");
  synth->add_option("--n", sy.n, "Samples per utterance");
  synth->add_option("--seed", sy.seed, "Generator seed");
  synth->add_flag("--shuffle-labels", sy.shuffle_labels, "Permute labels across utterances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  SetThreadCount(threads > 0 ? threads : DefaultThreadCount());
  try {
    if (*extract) return Extract(ex);
    if (*evaluate) return Evaluate(ev);
    if (*sweep) return Sweep(sw);
    if (*inspect) return InspectFilters(fa);
    if (*train) return Train(tr);
    if (*predict) return Predict(pr);
    if (*synth) return Synth(sy);
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kInvalidConfig ? kExitUsage : kExitData;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
