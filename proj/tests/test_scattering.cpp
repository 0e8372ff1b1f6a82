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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "scatser/error.hpp"
#include "scatser/scattering.hpp"
#include "test_util.hpp"

namespace {

using scatser::Execution;
using scatser::FilterBank;
using scatser::RealBuffer;
using scatser::ScatteringConfig;
using scatser::ScatteringFeatures;
using scatser::ScatteringPath;
using scatser::ScatteringTransform;
using scatser::Waveform;
namespace t = scatser::testing;

// Small configuration so unit tests stay fast: n = n_fft = 16384, T = 4096.
ScatteringConfig SmallConfig() {
  ScatteringConfig cfg;
  cfg.t = 4096;
  cfg.n = 16384;
  return cfg;
}

const ScatteringTransform &Small() {
  static const ScatteringTransform transform(SmallConfig());
  return transform;
}

double MaxAbs(const ScatteringFeatures &f) {
  double m = 0.0;
  for (const auto &seq : f.frames)
    for (double v : seq) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST_SUITE("scattering") {

TEST_CASE("config validation") {
  ScatteringConfig cfg = SmallConfig();
  cfg.t = 32768;
  CHECK_THROWS_AS(cfg.Validate(), scatser::Error);
  cfg = SmallConfig();
  cfg.t = 3000;
  CHECK_THROWS_AS(cfg.Validate(), scatser::Error);
  cfg = SmallConfig();
  cfg.freq_scattering = true;
  cfg.f_wavelet_len = 24;
  CHECK_THROWS_AS(cfg.Validate(), scatser::Error);
  CHECK(ScatteringConfig{}.NFft() == 65536);
  CHECK(ScatteringConfig{}.FrameCount() == 8);
}

TEST_CASE("wavelet modulus of zero is zero") {
  const FilterBank &bank = Small().bank1();
  const auto u = scatser::WaveletModulus(std::vector<double>(16384, 0.0), bank);
  REQUIRE(u.size() == bank.size());
  double worst = 0.0;
  for (const auto &seq : u)
    for (double v : seq) worst = std::max(worst, std::abs(v));
  CHECK(worst == 0.0);
}

TEST_CASE("wavelet modulus length mismatch") {
  try {
    scatser::WaveletModulus(std::vector<double>(1000, 0.0), Small().bank1());
    FAIL("expected LengthMismatch");
  } catch (const scatser::Error &e) {
    CHECK(e.code() == scatser::ErrorCode::kLengthMismatch);
  }
}

TEST_CASE("wavelet modulus is exactly homogeneous under halving") {
  const std::vector<double> x = t::WhiteNoise(16384, 21);
  std::vector<double> h = x;
  for (double &v : h) v *= 0.5;
  const auto a = scatser::WaveletModulus(x, Small().bank1());
  const auto b = scatser::WaveletModulus(h, Small().bank1());
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < a[i].size(); ++k) mismatches += b[i][k] != 0.5 * a[i][k];
  CHECK(mismatches == 0);
}

TEST_CASE("sine at a geometric center peaks at that filter") {
  const FilterBank &bank = Small().bank1();
  for (std::size_t target : {3u, 10u, 20u, 30u}) {
    REQUIRE(target < bank.GeometricCount());
    const double f = bank.filters[target].center;
    std::vector<double> x(16384);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(2.0 * M_PI * f * static_cast<double>(i));
    const auto u = scatser::WaveletModulus(x, bank);
    std::size_t best = 0;
    double best_mean = -1.0;
    for (std::size_t l = 0; l < u.size(); ++l) {
      double mean = 0.0;
      for (std::size_t i = 2048; i < 16384 - 2048; ++i) mean += u[l][i];
      if (mean > best_mean) {
        best_mean = mean;
        best = l;
      }
    }
    CHECK(best == target);
  }
}

TEST_CASE("second layer kills constant envelopes and counts admissible paths") {
  const ScatteringTransform &tr = Small();
  std::vector<RealBuffer> u1(tr.bank1().size(), RealBuffer(16384, 0.0));
  for (std::size_t i = 0; i < u1.size(); ++i)
    std::fill(u1[i].begin(), u1[i].end(), 1.0 + static_cast<double>(i));
  const auto layer2 = scatser::ScatterLayer2(u1, tr.bank2(), tr.bank1());
  double worst = 0.0;
  for (const auto &env : layer2.envelopes)
    for (double v : env) worst = std::max(worst, std::abs(v));
  CHECK(worst < 1e-9 * static_cast<double>(u1.size()));

  std::size_t expect = 0;
  for (const auto &f1 : tr.bank1().filters)
    for (const auto &f2 : tr.bank2().filters) expect += f2.center < f1.bandwidth ? 1 : 0;
  CHECK(layer2.paths.size() == expect);
  CHECK(tr.admissible().size() == expect);
  for (auto [a, b] : layer2.paths)
    CHECK(tr.bank2().filters[static_cast<std::size_t>(b)].center <
          tr.bank1().filters[static_cast<std::size_t>(a)].bandwidth);
}

TEST_CASE("lowpass of ones is one") {
  const FilterBank &bank = Small().bank1();
  const auto out = scatser::LowpassAverage({RealBuffer(16384, 1.0)}, bank.lowpass, 2048);
  REQUIRE(out.size() == 1);
  REQUIRE(out[0].size() == 8);
  for (double v : out[0]) CHECK(std::abs(v - 1.0) < 1e-9);
}

TEST_CASE("lowpass of an impulse traces phi") {
  const FilterBank &bank = Small().bank1();
  const std::size_t n = 16384, p = 5000;
  RealBuffer impulse(n, 0.0);
  impulse[p] = 1.0;
  const auto out = scatser::LowpassAverage({impulse}, bank.lowpass, 2048);
  // phi(t) as a Gaussian: sigma_t = 1 / (2 pi sigma_f), unit DC gain.
  const double sigma_t = 1.0 / (2.0 * M_PI * bank.lowpass_sigma);
  for (std::size_t m = 0; m < out[0].size(); ++m) {
    double d = std::abs(static_cast<double>(m * 2048) - static_cast<double>(p));
    d = std::min(d, static_cast<double>(n) - d);
    const double expect =
        std::exp(-d * d / (2 * sigma_t * sigma_t)) / (std::sqrt(2 * M_PI) * sigma_t);
    CHECK(std::abs(out[0][m] - expect) < 1e-9);
  }
}

TEST_CASE("lowpass commutes with a one-hop circular shift") {
  const FilterBank &bank = Small().bank1();
  const std::vector<double> x = t::WhiteNoise(16384, 4);
  RealBuffer a(x.begin(), x.end()), b(16384);
  for (std::size_t i = 0; i < 16384; ++i) b[(i + 2048) % 16384] = a[i];
  const auto fa = scatser::LowpassAverage({a}, bank.lowpass, 2048);
  const auto fb = scatser::LowpassAverage({b}, bank.lowpass, 2048);
  for (std::size_t m = 0; m < 8; ++m) CHECK(std::abs(fb[0][(m + 1) % 8] - fa[0][m]) < 1e-9);
}

TEST_CASE("path layout") {
  const ScatteringTransform &tr = Small();
  const ScatteringFeatures f = tr.TimeScattering(Waveform(t::WhiteNoise(16384, 3), 16000));
  REQUIRE(f.paths.size() == 1 + tr.bank1().size() + tr.admissible().size());
  CHECK(f.paths[0] == ScatteringPath{0, std::nullopt, std::nullopt, std::nullopt});
  for (std::size_t i = 0; i < tr.bank1().size(); ++i)
    CHECK(f.paths[1 + i] == ScatteringPath{1, static_cast<int>(i), std::nullopt, std::nullopt});
  for (std::size_t p = 1 + tr.bank1().size() + 1; p < f.paths.size(); ++p) {
    const auto &a = f.paths[p - 1], &b = f.paths[p];
    CHECK(std::tie(*a.lambda1_index, *a.lambda2_index) < std::tie(*b.lambda1_index, *b.lambda2_index));
  }
  for (const auto &seq : f.frames) CHECK(seq.size() == f.FrameCount());
  CHECK(f.utterance_vector.size() == f.paths.size());
  CHECK(f.Find(f.paths[7]) == std::optional<std::size_t>(7));
}

TEST_CASE("zero input gives zero features") {
  const ScatteringFeatures f = Small().TimeScattering(Waveform(std::vector<double>(16384, 0.0), 16000));
  CHECK(MaxAbs(f) == 0.0);
  for (double v : f.utterance_vector) CHECK(v == 0.0);
}

TEST_CASE("non-negativity and scale homogeneity") {
  const std::vector<double> x = t::WhiteNoise(16384, 12, 0.1);
  std::vector<double> y = x;
  for (double &v : y) v *= 3.7;
  const ScatteringFeatures a = Small().TimeScattering(Waveform(x, 16000));
  const ScatteringFeatures b = Small().TimeScattering(Waveform(y, 16000));
  double min_coeff = 0.0;
  for (const auto &seq : a.frames)
    for (double v : seq) min_coeff = std::min(min_coeff, v);
  CHECK(min_coeff >= 0.0);
  const auto fa = t::FlattenFrames(a), fb = t::FlattenFrames(b);
  double worst = 0.0;
  for (std::size_t k = 0; k < fa.size(); ++k)
    if (fa[k] > 0.0) worst = std::max(worst, std::abs(fb[k] / (3.7 * fa[k]) - 1.0));
  CHECK(worst < 1e-9);
}

TEST_CASE("circular shift by one hop shifts frames by one index") {
  const std::vector<double> x = t::WhiteNoise(16384, 13);
  std::vector<double> y(16384);
  for (std::size_t i = 0; i < 16384; ++i) y[(i + 2048) % 16384] = x[i];
  const ScatteringFeatures a = Small().TimeScattering(Waveform(x, 16000));
  const ScatteringFeatures b = Small().TimeScattering(Waveform(y, 16000));
  double worst = 0.0;
  for (std::size_t p = 0; p < a.frames.size(); ++p)
    for (std::size_t m = 0; m < 8; ++m)
      worst = std::max(worst, std::abs(b.frames[p][(m + 1) % 8] - a.frames[p][m]));
  CHECK(worst < 1e-9);
}

TEST_CASE("non-expansive on random pairs") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const std::vector<double> x = t::WhiteNoise(16384, 50 + s), y = t::WhiteNoise(16384, 90 + s);
    const auto fx = t::FlattenFrames(Small().TimeScattering(Waveform(x, 16000)));
    const auto fy = t::FlattenFrames(Small().TimeScattering(Waveform(y, 16000)));
    CHECK(t::DiffNorm(fx, fy) <= t::DiffNorm(x, y) + 1e-6);
  }
}

TEST_CASE("fused kernel matches the staged reference and serial matches parallel") {
  const Waveform x(t::WhiteNoise(16384, 14), 16000);
  const ScatteringFeatures par = Small().TimeScattering(x, Execution::kParallel);
  const ScatteringFeatures ser = Small().TimeScattering(x, Execution::kSerial);
  const ScatteringFeatures ref = scatser::reference::TimeScattering(Small(), x);
  REQUIRE(par.paths == ref.paths);
  CHECK(par.frames == ser.frames);
  double worst = 0.0, scale = 0.0;
  for (std::size_t p = 0; p < par.frames.size(); ++p)
    for (std::size_t m = 0; m < par.frames[p].size(); ++m) {
      worst = std::max(worst, std::abs(par.frames[p][m] - ref.frames[p][m]));
      scale = std::max(scale, std::abs(ref.frames[p][m]));
    }
  CHECK(worst <= 1e-12 * scale);
}

TEST_CASE("fix_length and padding are applied internally") {
  ScatteringConfig cfg = SmallConfig();
  cfg.n = 12000;  // n_fft 16384
  const ScatteringTransform tr(cfg);
  const Waveform long_x(t::WhiteNoise(20000, 15), 16000);
  const RealBuffer prepared = tr.PrepareSignal(long_x);
  REQUIRE(prepared.size() == 16384);
  CHECK(prepared[0] == long_x[4000]);
  CHECK(prepared[11999] == long_x[15999]);
  CHECK(std::all_of(prepared.begin() + 12000, prepared.end(), [](double v) { return v == 0.0; }));
  try {
    tr.TimeScattering(Waveform(std::vector<double>(100, 0.0), 8000));
    FAIL("expected a sample-rate error");
  } catch (const scatser::Error &e) {
    CHECK(e.code() == scatser::ErrorCode::kInvalidArgument);
  }
}

TEST_CASE("log compression maps frames through ln(s + eps)") {
  ScatteringConfig cfg = SmallConfig();
  cfg.log_compress = true;
  const ScatteringTransform tr(cfg);
  const Waveform x(t::WhiteNoise(16384, 16), 16000);
  const ScatteringFeatures plain = Small().TimeScattering(x);
  const ScatteringFeatures logged = tr.TimeScattering(x);
  double worst = 0.0;
  for (std::size_t p = 0; p < plain.frames.size(); ++p)
    for (std::size_t m = 0; m < plain.frames[p].size(); ++m)
      worst = std::max(worst, std::abs(logged.frames[p][m] - std::log(plain.frames[p][m] + 1e-7)));
  CHECK(worst < 1e-12);
  const ScatteringFeatures zero = tr.TimeScattering(Waveform(std::vector<double>(16384, 0.0), 16000));
  for (double v : zero.utterance_vector) CHECK(v == doctest::Approx(std::log(1e-7)));
}

TEST_CASE("pooling is the per-path frame mean") {
  ScatteringFeatures f;
  f.paths = {ScatteringPath{0, {}, {}, {}}, ScatteringPath{1, 0, {}, {}}};
  f.frames = {{2.0}, {5.0}};
  CHECK(scatser::PoolUtterance(f) == std::vector<double>{2.0, 5.0});
  f.frames = {{1.0, 3.0}, {4.0, -2.0}};
  CHECK(scatser::PoolUtterance(f) == std::vector<double>{2.0, 1.0});
  f.frames = {{1.0, 2.0, 7.0}, {0.5, 0.25, 4.0}};
  const auto a = scatser::PoolUtterance(f);
  f.frames = {{7.0, 1.0, 2.0}, {4.0, 0.5, 0.25}};
  const auto b = scatser::PoolUtterance(f);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-15));
}

TEST_CASE("frequency scattering of a constant S1 profile vanishes") {
  ScatteringConfig cfg = SmallConfig();
  cfg.freq_scattering = true;
  const ScatteringTransform tr(cfg);
  ScatteringFeatures s = tr.TimeScattering(Waveform(std::vector<double>(16384, 0.0), 16000));
  for (std::size_t i = 0; i < tr.bank1().size(); ++i)
    std::fill(s.frames[1 + i].begin(), s.frames[1 + i].end(), 2.5);
  const ScatteringFeatures fs = tr.FrequencyScattering(s);
  const std::size_t geo = tr.bank1().GeometricCount();
  REQUIRE(tr.freq_bank() != nullptr);
  CHECK(fs.paths.size() == s.paths.size() + tr.freq_bank()->size() * geo);
  double worst = 0.0;
  for (std::size_t p = s.paths.size(); p < fs.paths.size(); ++p) {
    CHECK(fs.paths[p].IsFrequency());
    for (double v : fs.frames[p]) worst = std::max(worst, std::abs(v));
  }
  CHECK(worst < 1e-9 * 2.5);
}

TEST_CASE("frequency scattering path count and order") {
  ScatteringConfig cfg;
  cfg.freq_scattering = true;
  const ScatteringTransform tr(cfg);
  const std::size_t geo = tr.bank1().GeometricCount();
  const ScatteringFeatures f = tr.Compute(Waveform(t::WhiteNoise(51000, 17, 0.1), 16000));
  const std::size_t time_paths = 1 + tr.bank1().size() + tr.admissible().size();
  CHECK(f.paths.size() == time_paths + tr.freq_bank()->size() * geo);
  for (std::size_t j = 0; j < tr.freq_bank()->size(); ++j)
    for (std::size_t idx = 0; idx < geo; ++idx) {
      const ScatteringPath &p = f.paths[time_paths + j * geo + idx];
      CHECK(p.order == 1);
      CHECK(*p.lambda1_index == static_cast<int>(idx));
      CHECK(*p.freq_wavelet_index == static_cast<int>(j));
    }
}

TEST_CASE("octave transposition shifts the frequency-scattering pattern by q1 bins") {
  ScatteringConfig cfg;
  cfg.freq_scattering = true;
  const ScatteringTransform tr(cfg);
  auto harmonic = [](double f0) {
    std::vector<double> x(51000, 0.0);
    for (int k = 1; k <= 6; ++k)
      for (std::size_t i = 0; i < x.size(); ++i)
        x[i] += std::cos(2.0 * M_PI * k * f0 * static_cast<double>(i) / 16000.0 + 0.3 * k) / k;
    return x;
  };
  const ScatteringFeatures a = tr.Compute(Waveform(harmonic(200.0), 16000));
  const ScatteringFeatures b = tr.Compute(Waveform(harmonic(400.0), 16000));
  const std::size_t geo = tr.bank1().GeometricCount();
  const std::size_t base = 1 + tr.bank1().size() + tr.admissible().size();
  const std::size_t q1 = static_cast<std::size_t>(cfg.q1);
  // Interior: lambda1 indices whose shifted partner exists and whose
  // frequencies stay inside the region both signals excite.
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < tr.freq_bank()->size(); ++j) {
    for (std::size_t idx = 8; idx + q1 + 8 < geo; ++idx) {
      const double vb = b.utterance_vector[base + j * geo + idx];
      const double va = a.utterance_vector[base + j * geo + idx + q1];
      num += (va - vb) * (va - vb);
      den += va * va;
    }
  }
  const double rel = std::sqrt(num / den);
  CAPTURE(rel);
  CHECK(rel < 0.10);
}

TEST_CASE("frequency axis too short") {
  ScatteringConfig cfg;
  cfg.q1 = 1;
  cfg.t = 4;
  cfg.n = 64;
  cfg.freq_scattering = true;
  cfg.f_wavelet_len = 2;
  try {
    ScatteringTransform tr(cfg);
    FAIL("expected AxisTooShort");
  } catch (const scatser::Error &e) {
    CHECK(e.code() == scatser::ErrorCode::kAxisTooShort);
  }
}

}  // TEST_SUITE
