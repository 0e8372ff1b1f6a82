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

// Serial vs OpenMP kernels, and the fused scattering kernel vs the staged
// reference. Thread count follows SCATFEAT_THREADS / OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "scatser/config.hpp"
#include "scatser/features.hpp"
#include "scatser/parallel.hpp"
#include "scatser/scattering.hpp"
#include "scatser/svm.hpp"

namespace {

using scatser::Execution;

std::vector<double> Noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 0.1);
  std::vector<double> x(n);
  for (double &v : x) v = g(rng);
  return x;
}

const scatser::ScatteringTransform &Transform() {
  static const scatser::ScatteringTransform tr(scatser::ScatteringConfig{});
  return tr;
}

void BM_TimeScattering(benchmark::State &state, Execution exec) {
  const scatser::Waveform x(Noise(51000, 1), 16000);
  for (auto _ : state) benchmark::DoNotOptimize(Transform().TimeScattering(x, exec));
}

void BM_TimeScatteringReference(benchmark::State &state) {
  const scatser::Waveform x(Noise(51000, 1), 16000);
  for (auto _ : state) benchmark::DoNotOptimize(scatser::reference::TimeScattering(Transform(), x));
}

void BM_WaveletModulus(benchmark::State &state, Execution exec) {
  const std::vector<double> x = Noise(65536, 2);
  for (auto _ : state) benchmark::DoNotOptimize(scatser::WaveletModulus(x, Transform().bank1(), exec));
}

void BM_ExtractFeatures(benchmark::State &state, Execution exec) {
  scatser::RunConfig cfg;
  cfg.scattering.t = 4096;
  cfg.scattering.n = 16384;
  std::vector<scatser::UtteranceInfo> infos;
  for (int i = 0; i < 8; ++i) infos.push_back({"u" + std::to_string(i), "s", "l"});
  const scatser::WaveformLoader load = [](std::size_t i) {
    return scatser::Waveform(Noise(16384, 10 + i), 16000);
  };
  for (auto _ : state) benchmark::DoNotOptimize(scatser::ExtractFeatures(infos, load, cfg, exec));
}

void BM_GridSearch(benchmark::State &state, Execution exec) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  scatser::Matrix x, v;
  std::vector<std::string> y, vy;
  for (int i = 0; i < 120; ++i) {
    std::vector<double> row(20);
    for (double &r : row) r = g(rng) + (i % 3);
    (i < 80 ? x : v).AppendRow(row);
    (i < 80 ? y : vy).push_back("c" + std::to_string(i % 3));
  }
  for (auto _ : state)
    benchmark::DoNotOptimize(scatser::GridSearch(x, y, v, vy, scatser::SvmGrid{}, exec));
}

}  // namespace

BENCHMARK_CAPTURE(BM_TimeScattering, serial, Execution::kSerial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_TimeScattering, parallel, Execution::kParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TimeScatteringReference)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_WaveletModulus, serial, Execution::kSerial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_WaveletModulus, parallel, Execution::kParallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ExtractFeatures, serial, Execution::kSerial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ExtractFeatures, parallel, Execution::kParallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_GridSearch, serial, Execution::kSerial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_GridSearch, parallel, Execution::kParallel)->Unit(benchmark::kMillisecond);

int main(int argc, char **argv) {
  scatser::SetThreadCount(scatser::DefaultThreadCount());
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
