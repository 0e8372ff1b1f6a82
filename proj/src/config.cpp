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

#include "scatser/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "scatser/error.hpp"

namespace scatser {

namespace {

using Entries = std::vector<std::pair<std::string, std::string>>;

const std::set<std::string> kBoolKeys = {"freq_scattering", "log_compress"};
const std::set<std::string> kListKeys = {"grid.c", "grid.gamma_scale"};
const std::set<std::string> kStringKeys = {"feature", "manifest", "cache_dir", "report_dir"};
const std::set<std::string> kDoubleKeys = {"log_eps", "mfcc.win_ms", "mfcc.hop_ms",
                                           "mfcc.fmin_hz", "mfcc.fmax_hz"};

std::string FormatDouble(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string FormatList(const std::vector<double> &values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += FormatDouble(values[i]);
  }
  return out;
}

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double ParseDouble(const std::string &key, const std::string &value) {
  double v = 0.0;
  const std::string t = Trim(value);
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size() || t.empty())
    throw Error(ErrorCode::kInvalidConfig, key + ": not a number: '" + value + "'");
  return v;
}

int ParseInt(const std::string &key, const std::string &value) {
  int v = 0;
  const std::string t = Trim(value);
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size() || t.empty())
    throw Error(ErrorCode::kInvalidConfig, key + ": not an integer: '" + value + "'");
  return v;
}

bool ParseBool(const std::string &key, const std::string &value) {
  const std::string t = Trim(value);
  if (t == "true" || t == "1" || t == "on") return true;
  if (t == "false" || t == "0" || t == "off") return false;
  throw Error(ErrorCode::kInvalidConfig, key + ": not a boolean: '" + value + "'");
}

std::vector<double> ParseList(const std::string &key, const std::string &value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(ParseDouble(key, item));
  if (out.empty()) throw Error(ErrorCode::kInvalidConfig, key + ": empty list");
  return out;
}

Entries ScatteringEntries(const RunConfig &c) {
  const ScatteringConfig &s = c.scattering;
  return {{"q1", std::to_string(s.q1)},
          {"q2", std::to_string(s.q2)},
          {"t", std::to_string(s.t)},
          {"n", std::to_string(s.n)},
          {"freq_scattering", s.freq_scattering ? "true" : "false"},
          {"f_wavelet_len", std::to_string(s.f_wavelet_len)},
          {"log_compress", s.log_compress ? "true" : "false"},
          {"log_eps", FormatDouble(s.log_eps)}};
}

Entries MfccEntries(const RunConfig &c) {
  const MfccConfig &m = c.mfcc;
  return {{"mfcc.n_coeffs", std::to_string(m.n_coeffs)},
          {"mfcc.win_ms", FormatDouble(m.win_ms)},
          {"mfcc.hop_ms", FormatDouble(m.hop_ms)},
          {"mfcc.n_fft", std::to_string(m.n_fft)},
          {"mfcc.n_mels", std::to_string(m.n_mels)},
          {"mfcc.fmin_hz", FormatDouble(m.fmin_hz)},
          {"mfcc.fmax_hz", FormatDouble(m.fmax_hz)}};
}

Entries AllEntries(const RunConfig &c) {
  Entries e = {{"feature", std::string(FeatureKindName(c.feature))},
               {"sample_rate_hz", std::to_string(c.sample_rate_hz)}};
  for (auto &kv : ScatteringEntries(c)) e.push_back(std::move(kv));
  for (auto &kv : MfccEntries(c)) e.push_back(std::move(kv));
  e.emplace_back("grid.c", FormatList(c.grid.c_values));
  e.emplace_back("grid.gamma_scale", FormatList(c.grid.gamma_scales));
  e.emplace_back("manifest", c.manifest);
  e.emplace_back("cache_dir", c.cache_dir);
  e.emplace_back("report_dir", c.report_dir);
  return e;
}

void Set(RunConfig *c, const std::string &key, const std::string &value) {
  ScatteringConfig &s = c->scattering;
  MfccConfig &m = c->mfcc;
  if (key == "feature") c->feature = ParseFeatureKind(Trim(value));
  else if (key == "sample_rate_hz") c->sample_rate_hz = ParseInt(key, value);
  else if (key == "q1") s.q1 = ParseInt(key, value);
  else if (key == "q2") s.q2 = ParseInt(key, value);
  else if (key == "t") s.t = ParseInt(key, value);
  else if (key == "n") s.n = ParseInt(key, value);
  else if (key == "freq_scattering") s.freq_scattering = ParseBool(key, value);
  else if (key == "f_wavelet_len") s.f_wavelet_len = ParseInt(key, value);
  else if (key == "log_compress") s.log_compress = ParseBool(key, value);
  else if (key == "log_eps") s.log_eps = ParseDouble(key, value);
  else if (key == "mfcc.n_coeffs") m.n_coeffs = ParseInt(key, value);
  else if (key == "mfcc.win_ms") m.win_ms = ParseDouble(key, value);
  else if (key == "mfcc.hop_ms") m.hop_ms = ParseDouble(key, value);
  else if (key == "mfcc.n_fft") m.n_fft = ParseInt(key, value);
  else if (key == "mfcc.n_mels") m.n_mels = ParseInt(key, value);
  else if (key == "mfcc.fmin_hz") m.fmin_hz = ParseDouble(key, value);
  else if (key == "mfcc.fmax_hz") m.fmax_hz = ParseDouble(key, value);
  else if (key == "grid.c") c->grid.c_values = ParseList(key, value);
  else if (key == "grid.gamma_scale") c->grid.gamma_scales = ParseList(key, value);
  else if (key == "manifest") c->manifest = value;
  else if (key == "cache_dir") c->cache_dir = value;
  else if (key == "report_dir") c->report_dir = value;
  else throw Error(ErrorCode::kInvalidConfig, "unknown key '" + key + "'");
}

RunConfig ParseText(std::string_view text) {
  RunConfig c;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string t = Trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::kInvalidConfig,
                  "line " + std::to_string(line_no) + ": expected key = value");
    Set(&c, Trim(t.substr(0, eq)), Trim(t.substr(eq + 1)));
  }
  return c;
}

RunConfig ParseJson(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kInvalidConfig, "JSON config must be an object");
  RunConfig c;
  for (const auto &[key, value] : j.items()) {
    std::string text_value;
    if (value.is_string()) {
      text_value = value.get<std::string>();
    } else if (value.is_boolean()) {
      text_value = value.get<bool>() ? "true" : "false";
    } else if (value.is_number_integer()) {
      text_value = std::to_string(value.get<long long>());
    } else if (value.is_number()) {
      text_value = FormatDouble(value.get<double>());
    } else if (value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (!value[i].is_number())
          throw Error(ErrorCode::kInvalidConfig, key + ": list entries must be numbers");
        if (i) text_value += ',';
        text_value += FormatDouble(value[i].get<double>());
      }
    } else {
      throw Error(ErrorCode::kInvalidConfig, key + ": unsupported JSON value");
    }
    Set(&c, key, text_value);
  }
  return c;
}

}  // namespace

std::string_view FeatureKindName(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kScatnet: return "scatnet";
    case FeatureKind::kFScatnet: return "f-scatnet";
    case FeatureKind::kMfcc: return "mfcc";
    case FeatureKind::kScatLayer1: return "scat-layer1";
    case FeatureKind::kScatLayer2: return "scat-layer2";
  }
  return "unknown";
}

FeatureKind ParseFeatureKind(std::string_view name) {
  for (FeatureKind k : {FeatureKind::kScatnet, FeatureKind::kFScatnet, FeatureKind::kMfcc,
                        FeatureKind::kScatLayer1, FeatureKind::kScatLayer2})
    if (FeatureKindName(k) == name) return k;
  throw Error(ErrorCode::kInvalidArgument, "unknown feature kind '" + std::string(name) + "'");
}

bool IsScatteringKind(FeatureKind kind) { return kind != FeatureKind::kMfcc; }

ScatteringConfig RunConfig::EffectiveScattering() const {
  ScatteringConfig s = scattering;
  s.sample_rate_hz = sample_rate_hz;
  s.freq_scattering = feature == FeatureKind::kFScatnet;
  return s;
}

std::uint64_t Fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

std::string RunConfig::ConfigHash() const {
  std::string canon = "feature=" + std::string(FeatureKindName(feature)) +
                      "\nsample_rate_hz=" + std::to_string(sample_rate_hz) + "\n";
  RunConfig effective = *this;
  effective.scattering = EffectiveScattering();
  const Entries entries =
      IsScatteringKind(feature) ? ScatteringEntries(effective) : MfccEntries(effective);
  for (const auto &[k, v] : entries) canon += k + "=" + v + "\n";
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(Fnv1a64(canon)));
  return hex;
}

std::string RunConfig::ToText() const {
  std::string out;
  for (const auto &[k, v] : AllEntries(*this)) out += k + " = " + v + "\n";
  return out;
}

std::string RunConfig::ToJson() const {
  nlohmann::ordered_json j;
  for (const auto &[k, v] : AllEntries(*this)) {
    if (kStringKeys.count(k)) j[k] = v;
    else if (kBoolKeys.count(k)) j[k] = v == "true";
    else if (kListKeys.count(k)) j[k] = ParseList(k, v);
    else if (kDoubleKeys.count(k)) j[k] = ParseDouble(k, v);
    else j[k] = ParseInt(k, v);
  }
  return j.dump(2) + "\n";
}

RunConfig RunConfig::Parse(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return ParseJson(text);
  return ParseText(text);
}

RunConfig RunConfig::Load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFileNotFound, path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return Parse(ss.str());
}

}  // namespace scatser
