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

#include "scatser/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "scatser/audio_io.hpp"
#include "scatser/error.hpp"

namespace scatser {

namespace {

// Splits one CSV record; double quotes protect commas and "" is a literal
// quote.
std::vector<std::string> SplitCsv(const std::string &line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        out.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.emplace_back();
    } else {
      out.back() += ch;
    }
  }
  return out;
}

std::string QuoteCsv(const std::string &field) {
  if (field.find_first_of(",\"") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string Fmt(double v, const char *spec = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

Matrix SelectRows(const Matrix &all, const std::vector<std::size_t> &idx) {
  Matrix out(idx.size(), all.cols());
  for (std::size_t r = 0; r < idx.size(); ++r)
    std::copy(all.row(idx[r]).begin(), all.row(idx[r]).end(), out.row(r).begin());
  return out;
}

std::vector<std::string> SelectLabels(const std::vector<std::string> &all,
                                      const std::vector<std::size_t> &idx) {
  std::vector<std::string> out;
  for (std::size_t i : idx) out.push_back(all[i]);
  return out;
}

nlohmann::ordered_json ConfusionJson(const ConfusionMatrix &cm) {
  return {{"classes", cm.classes}, {"counts", cm.counts}};
}

}  // namespace

std::vector<std::string> DatasetManifest::Speakers() const {
  std::set<std::string> s;
  for (const ManifestRow &r : rows) s.insert(r.speaker_id);
  return {s.begin(), s.end()};
}

std::vector<std::string> DatasetManifest::Labels() const {
  std::set<std::string> s;
  for (const ManifestRow &r : rows) s.insert(r.label);
  return {s.begin(), s.end()};
}

std::vector<UtteranceInfo> DatasetManifest::Infos() const {
  std::vector<UtteranceInfo> out;
  for (const ManifestRow &r : rows) out.push_back({r.utterance_id, r.speaker_id, r.label});
  return out;
}

std::vector<std::string> DatasetManifest::Validate() const {
  std::set<std::string> ids;
  for (const ManifestRow &r : rows)
    if (!ids.insert(r.utterance_id).second)
      throw Error(ErrorCode::kInvalidArgument, "duplicate utterance_id '" + r.utterance_id + "'");
  if (Speakers().size() < 3)
    throw Error(ErrorCode::kTooFewSpeakers,
                "need at least 3 speakers, manifest has " + std::to_string(Speakers().size()));
  std::map<std::string, std::set<std::string>> speakers_per_label;
  for (const ManifestRow &r : rows) speakers_per_label[r.label].insert(r.speaker_id);
  std::vector<std::string> warnings;
  for (const auto &[label, speakers] : speakers_per_label)
    if (speakers.size() < 2)
      warnings.push_back("label '" + label + "' appears for only one speaker");
  return warnings;
}

DatasetManifest ParseManifest(std::istream &in, const std::filesystem::path &base_dir) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParseError, "empty manifest");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (SplitCsv(line) != std::vector<std::string>{"utterance_id", "path", "speaker_id", "label"})
    throw Error(ErrorCode::kParseError,
                "manifest header must be utterance_id,path,speaker_id,label");
  DatasetManifest m;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> f = SplitCsv(line);
    if (f.size() != 4 || f[0].empty() || f[1].empty() || f[2].empty() || f[3].empty())
      throw Error(ErrorCode::kParseError,
                  "manifest line " + std::to_string(line_no) + ": expected 4 non-empty fields");
    std::filesystem::path p(f[1]);
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    m.rows.push_back({f[0], p.string(), f[2], f[3]});
  }
  return m;
}

DatasetManifest ReadManifest(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFileNotFound, path.string());
  return ParseManifest(in, path.parent_path());
}

void WriteManifest(std::ostream &out, const DatasetManifest &manifest) {
  out << "utterance_id,path,speaker_id,label\n";
  for (const ManifestRow &r : manifest.rows)
    out << QuoteCsv(r.utterance_id) << ',' << QuoteCsv(r.path) << ',' << QuoteCsv(r.speaker_id)
        << ',' << QuoteCsv(r.label) << '\n';
}

std::vector<LosoFold> LosoSplits(std::vector<std::string> speakers) {
  std::sort(speakers.begin(), speakers.end());
  speakers.erase(std::unique(speakers.begin(), speakers.end()), speakers.end());
  const std::size_t n = speakers.size();
  if (n < 3)
    throw Error(ErrorCode::kTooFewSpeakers,
                "leave-one-speaker-out needs at least 3 speakers, got " + std::to_string(n));
  std::vector<LosoFold> folds;
  for (std::size_t k = 0; k < n; ++k) {
    LosoFold f;
    f.test_speaker = speakers[k];
    f.valid_speaker = speakers[(k + 1) % n];
    for (std::size_t s = 0; s < n; ++s)
      if (s != k && s != (k + 1) % n) f.train_speakers.push_back(speakers[s]);
    folds.push_back(std::move(f));
  }
  return folds;
}

ExperimentReport RunExperiment(const FeatureTable &table, const SvmGrid &grid, Execution exec) {
  ExperimentReport report;
  report.kind = table.kind;
  report.config_hash = table.config_hash;
  report.dim = table.dim;
  report.classes = table.Classes();
  report.pooled = ConfusionMatrix(report.classes);

  const Matrix x = table.Values();
  const std::vector<std::string> labels = table.Labels();
  for (const LosoFold &fold : LosoSplits(table.Speakers())) {
    try {
      std::vector<std::size_t> train, valid, test;
      const std::set<std::string> train_set(fold.train_speakers.begin(),
                                            fold.train_speakers.end());
      for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const std::string &spk = table.rows[r].info.speaker_id;
        if (spk == fold.test_speaker) test.push_back(r);
        else if (spk == fold.valid_speaker) valid.push_back(r);
        else if (train_set.count(spk)) train.push_back(r);
      }
      const Matrix train_x = SelectRows(x, train);
      const std::vector<std::string> train_y = SelectLabels(labels, train);

      FoldReport fr;
      fr.fold = fold;
      fr.n_train = train.size();
      fr.n_valid = valid.size();
      fr.n_test = test.size();
      const GridSearchResult gs = GridSearch(train_x, train_y, SelectRows(x, valid),
                                             SelectLabels(labels, valid), grid, exec);
      fr.best_c = gs.best_c;
      fr.best_gamma = gs.best_gamma;
      fr.valid_uar = gs.valid_uar;

      SvmParams params;
      params.c = gs.best_c;
      params.gamma = gs.best_gamma;
      const SvmModel model = SvmTrain(train_x, train_y, params);
      fr.convergence_warnings = gs.convergence_warnings + model.ConvergenceWarnings();
      fr.confusion = Confusion(SelectLabels(labels, test),
                               SvmPredictAll(model, SelectRows(x, test)), report.classes);
      const UarResult u = UarDetailed(fr.confusion);
      fr.uar = u.uar;
      fr.empty_classes = u.empty_classes;
      fr.accuracy = Accuracy(fr.confusion);

      report.pooled += fr.confusion;
      report.convergence_warnings += fr.convergence_warnings;
      report.folds.push_back(std::move(fr));
    } catch (const Error &e) {
      throw Error(e.code(), "fold with test speaker '" + fold.test_speaker + "': " + e.what());
    }
  }

  for (const FoldReport &f : report.folds) {
    report.mean_accuracy += f.accuracy;
    report.mean_uar += f.uar;
  }
  report.mean_accuracy /= static_cast<double>(report.folds.size());
  report.mean_uar /= static_cast<double>(report.folds.size());
  report.pooled_accuracy = Accuracy(report.pooled);
  report.pooled_uar = Uar(report.pooled);
  return report;
}

std::string ReportJson(const ExperimentReport &report) {
  nlohmann::ordered_json j;
  j["feature_kind"] = std::string(FeatureKindName(report.kind));
  j["config_hash"] = report.config_hash;
  j["dim"] = report.dim;
  j["classes"] = report.classes;
  nlohmann::ordered_json folds = nlohmann::ordered_json::array();
  for (const FoldReport &f : report.folds) {
    folds.push_back({{"test_speaker", f.fold.test_speaker},
                     {"valid_speaker", f.fold.valid_speaker},
                     {"train_speakers", f.fold.train_speakers},
                     {"n_train", f.n_train},
                     {"n_valid", f.n_valid},
                     {"n_test", f.n_test},
                     {"best_c", f.best_c},
                     {"best_gamma", f.best_gamma},
                     {"valid_uar", f.valid_uar},
                     {"accuracy", f.accuracy},
                     {"uar", f.uar},
                     {"empty_classes", f.empty_classes},
                     {"convergence_warnings", f.convergence_warnings},
                     {"confusion", ConfusionJson(f.confusion)}});
  }
  j["folds"] = folds;
  j["aggregate"] = {{"mean_accuracy", report.mean_accuracy},
                    {"mean_uar", report.mean_uar},
                    {"pooled_accuracy", report.pooled_accuracy},
                    {"pooled_uar", report.pooled_uar},
                    {"convergence_warnings", report.convergence_warnings},
                    {"pooled_confusion", ConfusionJson(report.pooled)}};
  return j.dump(2) + "\n";
}

std::string ReportCsv(const ExperimentReport &report) {
  std::string out = "fold,test_speaker,valid_speaker,best_c,best_gamma,accuracy,uar\n";
  for (std::size_t k = 0; k < report.folds.size(); ++k) {
    const FoldReport &f = report.folds[k];
    out += std::to_string(k) + "," + QuoteCsv(f.fold.test_speaker) + "," +
           QuoteCsv(f.fold.valid_speaker) + "," + Fmt(f.best_c, "%.17g") + "," +
           Fmt(f.best_gamma, "%.17g") + "," + Fmt(f.accuracy) + "," + Fmt(f.uar) + "\n";
  }
  out += "mean,,,,," + Fmt(report.mean_accuracy) + "," + Fmt(report.mean_uar) + "\n";
  return out;
}

std::string ConfusionText(const ConfusionMatrix &cm) {
  std::size_t width = std::string("true\\pred").size();
  for (const std::string &c : cm.classes) width = std::max(width, c.size());
  for (const auto &row : cm.counts)
    for (std::int64_t v : row) width = std::max(width, std::to_string(v).size());
  width += 2;
  auto pad = [&](const std::string &s) { return std::string(width - s.size(), ' ') + s; };

  std::string out = pad("true\\pred");
  for (const std::string &c : cm.classes) out += pad(c);
  out += pad("recall") + "\n";
  for (std::size_t i = 0; i < cm.size(); ++i) {
    out += pad(cm.classes[i]);
    for (std::int64_t v : cm.counts[i]) out += pad(std::to_string(v));
    const std::int64_t row = cm.RowSum(i);
    out += pad(row == 0 ? "-" : Fmt(static_cast<double>(cm.counts[i][i]) /
                                    static_cast<double>(row), "%.3f"));
    out += "\n";
  }
  return out;
}

ExtractionResult ExtractManifest(const DatasetManifest &manifest, const RunConfig &cfg,
                                 Execution exec) {
  const WaveformLoader load = [&](std::size_t i) { return LoadWav(manifest.rows[i].path); };
  return ExtractFeatures(manifest.Infos(), load, cfg, exec);
}

FeatureTable CachedFeatures(const DatasetManifest &manifest, const RunConfig &cfg,
                            Execution exec) {
  const std::string hash = cfg.ConfigHash();
  std::filesystem::path cache;
  if (!cfg.cache_dir.empty())
    cache = std::filesystem::path(cfg.cache_dir) /
            (std::string(FeatureKindName(cfg.feature)) + "-" + hash + ".csv");

  if (!cache.empty() && std::filesystem::exists(cache)) {
    FeatureTable t = ReadFeatureCsv(cache);
    if (t.config_hash != hash || t.kind != cfg.feature)
      throw Error(ErrorCode::kProvenanceMismatch, cache.string() + " holds config_hash " +
                                                      t.config_hash + ", expected " + hash);
    std::vector<std::string> cached_ids, wanted_ids;
    for (const FeatureRow &r : t.rows) cached_ids.push_back(r.info.utterance_id);
    for (const ManifestRow &r : manifest.rows) wanted_ids.push_back(r.utterance_id);
    std::sort(wanted_ids.begin(), wanted_ids.end());
    if (cached_ids == wanted_ids) return t;
  }

  ExtractionResult res = ExtractManifest(manifest, cfg, exec);
  if (!res.failures.empty()) {
    const ExtractionFailure &f = res.failures.front();
    throw Error(f.code, "utterance '" + f.utterance_id + "': " + f.message);
  }
  if (!cache.empty()) {
    std::filesystem::create_directories(cache.parent_path());
    WriteFeatureCsv(cache, res.table);
  }
  return std::move(res.table);
}

std::vector<SweepRow> ParamSweep(const DatasetManifest &manifest, const std::vector<int> &q_values,
                                 const std::vector<int> &t_values, const RunConfig &base,
                                 Execution exec) {
  if (!IsScatteringKind(base.feature))
    throw Error(ErrorCode::kInvalidConfig, "parameter sweep needs a scattering feature kind");
  std::vector<SweepRow> rows;
  for (int q : q_values) {
    for (int t : t_values) {
      RunConfig cfg = base;
      cfg.scattering.q1 = q;
      cfg.scattering.t = t;
      cfg.EffectiveScattering().Validate();
      const FeatureTable table = CachedFeatures(manifest, cfg, exec);
      const ExperimentReport r = RunExperiment(table, cfg.grid, exec);
      rows.push_back({q, t, r.mean_accuracy, r.mean_uar, r.pooled_uar, r.config_hash,
                      r.convergence_warnings});
    }
  }
  return rows;
}

std::string SweepCsv(const std::vector<SweepRow> &rows) {
  std::string out = "q,t,mean_accuracy,mean_uar,pooled_uar,config_hash\n";
  for (const SweepRow &r : rows)
    out += std::to_string(r.q) + "," + std::to_string(r.t) + "," + Fmt(r.mean_accuracy) + "," +
           Fmt(r.mean_uar) + "," + Fmt(r.pooled_uar) + "," + r.config_hash + "\n";
  return out;
}

}  // namespace scatser
