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

#include "scatser/features.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <exception>
#include <fstream>
#include <set>
#include <sstream>

#include "scatser/error.hpp"
#include "scatser/mfcc.hpp"

namespace scatser {

namespace {

std::vector<std::string> SplitCommas(const std::string &line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

void CheckField(const std::string &value, const char *what) {
  if (value.empty() || value.find_first_of(",\n\r") != std::string::npos)
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " '" + value + "' is empty or holds a comma or newline");
}

// Value of `key=` inside the header line.
std::string HeaderField(const std::string &header, const std::string &key) {
  std::istringstream ss(header);
  std::string token;
  while (ss >> token)
    if (token.rfind(key + "=", 0) == 0) return token.substr(key.size() + 1);
  throw Error(ErrorCode::kParseError, "feature header lacks '" + key + "='");
}

}  // namespace

Matrix FeatureTable::Values() const {
  Matrix m(rows.size(), dim);
  for (std::size_t r = 0; r < rows.size(); ++r)
    std::copy(rows[r].values.begin(), rows[r].values.end(), m.row(r).begin());
  return m;
}

std::vector<std::string> FeatureTable::Labels() const {
  std::vector<std::string> out;
  for (const FeatureRow &r : rows) out.push_back(r.info.label);
  return out;
}

std::vector<std::string> FeatureTable::Speakers() const {
  std::set<std::string> s;
  for (const FeatureRow &r : rows) s.insert(r.info.speaker_id);
  return {s.begin(), s.end()};
}

std::vector<std::string> FeatureTable::Classes() const {
  std::set<std::string> s;
  for (const FeatureRow &r : rows) s.insert(r.info.label);
  return {s.begin(), s.end()};
}

void WriteFeatureCsv(std::ostream &out, const FeatureTable &table) {
  out << "#SCATFEAT v1 kind=" << FeatureKindName(table.kind) << " dim=" << table.dim
      << " config_hash=" << table.config_hash << "\n";
  char buf[32];
  for (const FeatureRow &row : table.rows) {
    CheckField(row.info.utterance_id, "utterance_id");
    CheckField(row.info.speaker_id, "speaker_id");
    CheckField(row.info.label, "label");
    if (row.values.size() != table.dim)
      throw Error(ErrorCode::kDimensionMismatch, "row " + row.info.utterance_id);
    out << row.info.utterance_id << ',' << row.info.speaker_id << ',' << row.info.label;
    for (double v : row.values) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out << ',' << buf;
    }
    out << '\n';
  }
}

void WriteFeatureCsv(const std::filesystem::path &path, const FeatureTable &table) {
  std::ostringstream ss;
  WriteFeatureCsv(ss, table);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kFileNotFound, "cannot write " + path.string());
  out << ss.str();
}

FeatureTable ReadFeatureCsv(std::istream &in) {
  std::string header;
  if (!std::getline(in, header) || header.rfind("#SCATFEAT v1 ", 0) != 0)
    throw Error(ErrorCode::kParseError, "missing '#SCATFEAT v1' header");
  FeatureTable table;
  try {
    table.kind = ParseFeatureKind(HeaderField(header, "kind"));
  } catch (const Error &e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  const std::string dim_text = HeaderField(header, "dim");
  auto res = std::from_chars(dim_text.data(), dim_text.data() + dim_text.size(), table.dim);
  if (res.ec != std::errc() || res.ptr != dim_text.data() + dim_text.size())
    throw Error(ErrorCode::kParseError, "bad dim '" + dim_text + "'");
  table.config_hash = HeaderField(header, "config_hash");

  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = SplitCommas(line);
    if (fields.size() != table.dim + 3)
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": expected " +
                                              std::to_string(table.dim + 3) + " fields, got " +
                                              std::to_string(fields.size()));
    FeatureRow row;
    row.info = {fields[0], fields[1], fields[2]};
    row.values.reserve(table.dim);
    for (std::size_t k = 3; k < fields.size(); ++k) {
      const std::string &f = fields[k];
      char *end = nullptr;
      const double v = std::strtod(f.c_str(), &end);
      if (f.empty() || end != f.c_str() + f.size())
        throw Error(ErrorCode::kParseError,
                    "line " + std::to_string(line_no) + ": bad number '" + f + "'");
      row.values.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

FeatureTable ReadFeatureCsv(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileNotFound, path.string());
  return ReadFeatureCsv(in);
}

std::vector<double> SelectPooled(const ScatteringFeatures &features, FeatureKind kind) {
  std::vector<double> out;
  for (std::size_t p = 0; p < features.paths.size(); ++p) {
    const ScatteringPath &path = features.paths[p];
    bool keep = false;
    switch (kind) {
      case FeatureKind::kScatnet: keep = !path.IsFrequency(); break;
      case FeatureKind::kFScatnet: keep = true; break;
      case FeatureKind::kScatLayer1: keep = !path.IsFrequency() && path.order <= 1; break;
      case FeatureKind::kScatLayer2: keep = !path.IsFrequency() && path.order == 2; break;
      case FeatureKind::kMfcc: keep = false; break;
    }
    if (keep) out.push_back(features.utterance_vector[p]);
  }
  return out;
}

FeatureExtractor::FeatureExtractor(const RunConfig &cfg)
    : kind_(cfg.feature),
      sample_rate_hz_(cfg.sample_rate_hz),
      mfcc_(cfg.mfcc),
      config_hash_(cfg.ConfigHash()) {
  if (IsScatteringKind(kind_)) transform_.emplace(cfg.EffectiveScattering());
  else mfcc_.Validate(sample_rate_hz_);
}

std::vector<double> FeatureExtractor::Extract(const Waveform &x, Execution exec) const {
  const Waveform w = x.sample_rate_hz() == sample_rate_hz_ ? x : Resample(x, sample_rate_hz_);
  if (!transform_) return MfccStats(MfccFrames(w, mfcc_));
  return SelectPooled(transform_->Compute(w, exec), kind_);
}

ExtractionResult ExtractFeatures(const std::vector<UtteranceInfo> &utterances,
                                 const WaveformLoader &load, const RunConfig &cfg,
                                 Execution exec) {
  const FeatureExtractor extractor(cfg);
  const std::size_t n = utterances.size();
  std::vector<std::vector<double>> values(n);
  std::vector<std::string> errors(n);
  std::vector<ErrorCode> codes(n, ErrorCode::kInvalidArgument);
  std::vector<char> failed(n, 0);

  // Parallel over utterances; each utterance runs its scattering loop on the
  // worker thread so the two levels do not oversubscribe.
  const Execution inner = exec == Execution::kParallel ? Execution::kSerial : exec;
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic) if (exec == Execution::kParallel)
  for (long i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      values[k] = extractor.Extract(load(k), inner);
    } catch (const Error &e) {
      failed[k] = 1;
      errors[k] = e.what();
      codes[k] = e.code();
    } catch (const std::exception &e) {
      failed[k] = 1;
      errors[k] = e.what();
    }
  }

  ExtractionResult result;
  result.table.kind = cfg.feature;
  result.table.config_hash = extractor.config_hash();
  std::vector<std::size_t> order(n);
  for (std::size_t k = 0; k < n; ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return utterances[a].utterance_id < utterances[b].utterance_id;
  });
  for (std::size_t k : order) {
    if (failed[k]) {
      result.failures.push_back({utterances[k].utterance_id, codes[k], errors[k]});
      continue;
    }
    if (result.table.rows.empty()) result.table.dim = values[k].size();
    result.table.rows.push_back({utterances[k], std::move(values[k])});
  }
  return result;
}

}  // namespace scatser
