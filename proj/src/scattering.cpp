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

#include "scatser/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "scatser/error.hpp"

namespace scatser {

namespace {

// z = IDFT(spectrum * response) over the non-negative half, |z| into `out`.
// spectrum holds n/2 + 1 bins of a real signal's DFT.
void AnalyticModulus(const ComplexBuffer &spectrum, const std::vector<double> &response,
                     ComplexBuffer *work_in, ComplexBuffer *work_out, RealBuffer *out) {
  const std::size_t n = work_in->size();
  const std::size_t half = n / 2;
  for (std::size_t k = 0; k <= half; ++k) (*work_in)[k] = spectrum[k] * response[k];
  std::fill(work_in->begin() + static_cast<std::ptrdiff_t>(half + 1), work_in->end(),
            Complex(0.0, 0.0));
  ComplexInverse(*work_in, work_out);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) (*out)[i] = std::abs((*work_out)[i]) * scale;
}

// Circular convolution with the even kernel `phi_time`, evaluated only at
// multiples of `hop`.
void SampleLowpass(const double *u, const std::vector<double> &phi_time, int hop,
                   double *frames) {
  const std::size_t n = phi_time.size();
  const std::size_t h = static_cast<std::size_t>(hop);
  const std::size_t n_frames = n / h;
  for (std::size_t m = 0; m < n_frames; ++m) {
    const std::size_t shift = m * h;
    double acc = 0.0;
    for (std::size_t i = shift; i < n; ++i) acc += u[i] * phi_time[i - shift];
    for (std::size_t i = 0; i < shift; ++i) acc += u[i] * phi_time[i + n - shift];
    frames[m] = acc;
  }
}

void ApplyLogCompression(ScatteringFeatures *f, double eps) {
  for (auto &path : f->frames) {
    for (double &v : path) v = std::log(v + eps);
  }
}

std::vector<ScatteringPath> TimePaths(std::size_t n_first,
                                      const std::vector<std::pair<int, int>> &second) {
  std::vector<ScatteringPath> paths;
  paths.reserve(1 + n_first + second.size());
  paths.push_back(ScatteringPath{0, std::nullopt, std::nullopt, std::nullopt});
  for (std::size_t i = 0; i < n_first; ++i)
    paths.push_back(ScatteringPath{1, static_cast<int>(i), std::nullopt, std::nullopt});
  for (auto [a, b] : second) paths.push_back(ScatteringPath{2, a, b, std::nullopt});
  return paths;
}

}  // namespace

void ScatteringConfig::Validate() const {
  if (q1 < 1 || q2 < 1) throw Error(ErrorCode::kInvalidConfig, "q1 and q2 must be >= 1");
  if (n < 1) throw Error(ErrorCode::kInvalidConfig, "n must be positive");
  if (t < 2 || !IsPow2(static_cast<std::size_t>(t)))
    throw Error(ErrorCode::kInvalidConfig, "t must be a power of two >= 2");
  if (static_cast<std::size_t>(t) > NFft())
    throw Error(ErrorCode::kInvalidConfig,
                "t=" + std::to_string(t) + " exceeds next_pow2(n)=" + std::to_string(NFft()));
  if (!(log_eps > 0.0)) throw Error(ErrorCode::kInvalidConfig, "log_eps must be positive");
  if (sample_rate_hz <= 0) throw Error(ErrorCode::kInvalidConfig, "sample rate must be positive");
  if (freq_scattering &&
      (f_wavelet_len < 2 || !IsPow2(static_cast<std::size_t>(f_wavelet_len))))
    throw Error(ErrorCode::kInvalidConfig, "f_wavelet_len must be a power of two >= 2");
}

std::optional<std::size_t> ScatteringFeatures::Find(const ScatteringPath &path) const {
  auto it = std::find(paths.begin(), paths.end(), path);
  if (it == paths.end()) return std::nullopt;
  return static_cast<std::size_t>(it - paths.begin());
}

std::vector<std::pair<int, int>> AdmissiblePaths(const FilterBank &bank1,
                                                 const FilterBank &bank2) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < bank1.size(); ++i) {
    for (std::size_t j = 0; j < bank2.size(); ++j) {
      if (bank2.filters[j].center < bank1.filters[i].bandwidth)
        out.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return out;
}

std::vector<RealBuffer> WaveletModulus(std::span<const double> x, const FilterBank &bank,
                                       Execution exec) {
  const std::size_t n = static_cast<std::size_t>(bank.spec.n_fft);
  if (x.size() != n)
    throw Error(ErrorCode::kLengthMismatch, "signal length " + std::to_string(x.size()) +
                                                " != n_fft " + std::to_string(n));
  RealBuffer xb(x.begin(), x.end());
  ComplexBuffer spectrum(n / 2 + 1);
  RealForward(xb, &spectrum);

  std::vector<RealBuffer> u(bank.size(), RealBuffer(n));
  const int count = static_cast<int>(bank.size());
#pragma omp parallel if (exec == Execution::kParallel)
  {
    ComplexBuffer work_in(n), work_out(n);
#pragma omp for schedule(dynamic, 1)
    for (int i = 0; i < count; ++i)
      AnalyticModulus(spectrum, bank.filters[static_cast<std::size_t>(i)].response,
                      &work_in, &work_out, &u[static_cast<std::size_t>(i)]);
  }
  return u;
}

SecondLayer ScatterLayer2(const std::vector<RealBuffer> &u1, const FilterBank &bank2,
                          const FilterBank &bank1, Execution exec) {
  if (bank1.spec.n_fft != bank2.spec.n_fft)
    throw Error(ErrorCode::kLengthMismatch, "layer banks differ in n_fft");
  if (u1.size() != bank1.size())
    throw Error(ErrorCode::kLengthMismatch, "u1 count != first-layer filter count");
  const std::size_t n = static_cast<std::size_t>(bank2.spec.n_fft);

  SecondLayer out;
  out.paths = AdmissiblePaths(bank1, bank2);
  out.envelopes.assign(out.paths.size(), RealBuffer(n));
  // Paths are grouped by lambda1; first[i] is the first slot for lambda1 = i.
  std::vector<std::size_t> first(bank1.size() + 1, out.paths.size());
  for (std::size_t p = out.paths.size(); p-- > 0;)
    first[static_cast<std::size_t>(out.paths[p].first)] = p;
  for (std::size_t i = bank1.size(); i-- > 0;)
    first[i] = std::min(first[i], first[i + 1]);

  for (const auto &env : u1) {
    if (env.size() != n) throw Error(ErrorCode::kLengthMismatch, "envelope length != n_fft");
  }

  const int count = static_cast<int>(bank1.size());
#pragma omp parallel if (exec == Execution::kParallel)
  {
    ComplexBuffer spectrum(n / 2 + 1), work_in(n), work_out(n);
#pragma omp for schedule(dynamic, 1)
    for (int i = 0; i < count; ++i) {
      const std::size_t lo = first[static_cast<std::size_t>(i)];
      const std::size_t hi = first[static_cast<std::size_t>(i) + 1];
      if (lo == hi) continue;
      RealForward(u1[static_cast<std::size_t>(i)], &spectrum);
      for (std::size_t p = lo; p < hi; ++p)
        AnalyticModulus(spectrum,
                        bank2.filters[static_cast<std::size_t>(out.paths[p].second)].response,
                        &work_in, &work_out, &out.envelopes[p]);
    }
  }
  return out;
}

std::vector<std::vector<double>> LowpassAverage(const std::vector<RealBuffer> &u,
                                                std::span<const double> lowpass, int hop,
                                                Execution exec) {
  const std::size_t n = lowpass.size();
  if (hop <= 0 || n % static_cast<std::size_t>(hop) != 0)
    throw Error(ErrorCode::kInvalidArgument, "hop must divide n_fft");
  const std::size_t n_frames = n / static_cast<std::size_t>(hop);
  for (const auto &seq : u) {
    if (seq.size() != n) throw Error(ErrorCode::kLengthMismatch, "sequence length != n_fft");
  }
  std::vector<std::vector<double>> out(u.size(), std::vector<double>(n_frames));
  const int count = static_cast<int>(u.size());
#pragma omp parallel if (exec == Execution::kParallel)
  {
    ComplexBuffer spectrum(n / 2 + 1);
    RealBuffer smooth(n);
#pragma omp for schedule(static)
    for (int p = 0; p < count; ++p) {
      const auto &seq = u[static_cast<std::size_t>(p)];
      RealForward(seq, &spectrum);
      for (std::size_t k = 0; k <= n / 2; ++k) spectrum[k] *= lowpass[k];
      RealInverse(spectrum, &smooth);
      for (std::size_t m = 0; m < n_frames; ++m)
        out[static_cast<std::size_t>(p)][m] =
            smooth[m * static_cast<std::size_t>(hop)] / static_cast<double>(n);
    }
  }
  return out;
}

std::vector<double> PoolUtterance(const ScatteringFeatures &features) {
  std::vector<double> v(features.frames.size(), 0.0);
  for (std::size_t p = 0; p < features.frames.size(); ++p) {
    const auto &seq = features.frames[p];
    if (seq.empty()) throw Error(ErrorCode::kTooFewFrames, "path with no frames");
    double acc = 0.0;
    for (double s : seq) acc += s;
    v[p] = acc / static_cast<double>(seq.size());
  }
  return v;
}

ScatteringTransform::ScatteringTransform(const ScatteringConfig &cfg) : cfg_(cfg) {
  cfg_.Validate();
  const int n_fft = static_cast<int>(cfg_.NFft());
  bank1_ = BuildMorletBank({cfg_.q1, cfg_.t, n_fft});
  bank2_ = BuildMorletBank({cfg_.q2, cfg_.t, n_fft});
  admissible_ = AdmissiblePaths(bank1_, bank2_);

  // phi is real and even, so its impulse response is too.
  const std::size_t n = cfg_.NFft();
  ComplexBuffer half(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) half[k] = Complex(bank1_.lowpass[k], 0.0);
  RealBuffer impulse(n);
  RealInverse(half, &impulse);
  lowpass_time_.resize(n);
  for (std::size_t i = 0; i < n; ++i) lowpass_time_[i] = impulse[i] / static_cast<double>(n);

  if (cfg_.freq_scattering) {
    const std::size_t geo = bank1_.GeometricCount();
    if (geo < 2)
      throw Error(ErrorCode::kAxisTooShort,
                  "frequency scattering needs >= 2 geometric first-layer filters");
    if (static_cast<std::size_t>(cfg_.f_wavelet_len) > geo)
      throw Error(ErrorCode::kInvalidConfig,
                  "f_wavelet_len=" + std::to_string(cfg_.f_wavelet_len) +
                      " exceeds the " + std::to_string(geo) +
                      " geometric first-layer filters");
    const int n_axis = static_cast<int>(NextPow2(geo + 2 * static_cast<std::size_t>(cfg_.f_wavelet_len)));
    freq_bank_ = BuildMorletBank({1, cfg_.f_wavelet_len, n_axis});
  }
}

RealBuffer ScatteringTransform::PrepareSignal(const Waveform &x) const {
  if (x.sample_rate_hz() != cfg_.sample_rate_hz)
    throw Error(ErrorCode::kInvalidArgument,
                "expected " + std::to_string(cfg_.sample_rate_hz) + " Hz input, got " +
                    std::to_string(x.sample_rate_hz()));
  Waveform fixed = FixLength(x, static_cast<std::size_t>(cfg_.n));
  RealBuffer padded(cfg_.NFft(), 0.0);
  std::copy(fixed.samples().begin(), fixed.samples().end(), padded.begin());
  return padded;
}

ScatteringFeatures ScatteringTransform::TimeScattering(const Waveform &x,
                                                       Execution exec) const {
  const std::size_t n = cfg_.NFft();
  const std::size_t n_frames = cfg_.FrameCount();
  const int hop = cfg_.Hop();
  RealBuffer signal = PrepareSignal(x);
  ComplexBuffer spectrum(n / 2 + 1);
  RealForward(signal, &spectrum);

  ScatteringFeatures out;
  out.paths = TimePaths(bank1_.size(), admissible_);
  out.frames.assign(out.paths.size(), std::vector<double>(n_frames));

  SampleLowpass(signal.data(), lowpass_time_, hop, out.frames[0].data());
  for (double &v : out.frames[0]) v = std::abs(v);

  const std::size_t n1 = bank1_.size();
  std::vector<std::size_t> first(n1 + 1, admissible_.size());
  for (std::size_t p = admissible_.size(); p-- > 0;)
    first[static_cast<std::size_t>(admissible_[p].first)] = p;
  for (std::size_t i = n1; i-- > 0;) first[i] = std::min(first[i], first[i + 1]);
  const std::size_t s2_offset = 1 + n1;

  const int count = static_cast<int>(n1);
#pragma omp parallel if (exec == Execution::kParallel)
  {
    ComplexBuffer work_in(n), work_out(n), envelope_spectrum(n / 2 + 1);
    RealBuffer u1(n), u2(n);
#pragma omp for schedule(dynamic, 1)
    for (int ii = 0; ii < count; ++ii) {
      const std::size_t i = static_cast<std::size_t>(ii);
      AnalyticModulus(spectrum, bank1_.filters[i].response, &work_in, &work_out, &u1);
      SampleLowpass(u1.data(), lowpass_time_, hop, out.frames[1 + i].data());
      if (first[i] == first[i + 1]) continue;
      RealForward(u1, &envelope_spectrum);
      for (std::size_t p = first[i]; p < first[i + 1]; ++p) {
        const auto &psi2 = bank2_.filters[static_cast<std::size_t>(admissible_[p].second)];
        AnalyticModulus(envelope_spectrum, psi2.response, &work_in, &work_out, &u2);
        SampleLowpass(u2.data(), lowpass_time_, hop, out.frames[s2_offset + p].data());
      }
    }
  }

  if (cfg_.log_compress) ApplyLogCompression(&out, cfg_.log_eps);
  out.utterance_vector = PoolUtterance(out);
  return out;
}

ScatteringFeatures ScatteringTransform::FrequencyScattering(
    const ScatteringFeatures &s_time) const {
  const std::size_t geo = bank1_.GeometricCount();
  if (geo < 2)
    throw Error(ErrorCode::kAxisTooShort,
                "frequency scattering needs >= 2 geometric first-layer filters");
  const FilterBank bank = freq_bank_ ? *freq_bank_
                                     : BuildMorletBank({1, cfg_.f_wavelet_len,
                                                        static_cast<int>(NextPow2(
                                                            geo + 2 * static_cast<std::size_t>(
                                                                          cfg_.f_wavelet_len)))});
  const std::size_t n_axis = static_cast<std::size_t>(bank.spec.n_fft);
  const std::size_t offset = (n_axis - geo) / 2;
  const std::size_t n_frames = s_time.FrameCount();

  // Axis position k holds lambda1 index geo-1-k (increasing log-frequency).
  std::vector<std::size_t> s1_rows(geo);
  for (std::size_t idx = 0; idx < geo; ++idx) {
    auto row = s_time.Find(ScatteringPath{1, static_cast<int>(idx), std::nullopt, std::nullopt});
    if (!row) throw Error(ErrorCode::kInvalidArgument, "missing first-order path");
    s1_rows[idx] = *row;
  }

  ScatteringFeatures out = s_time;
  const std::size_t base = out.paths.size();
  const std::size_t n_wavelets = bank.size();
  for (std::size_t j = 0; j < n_wavelets; ++j) {
    for (std::size_t idx = 0; idx < geo; ++idx)
      out.paths.push_back(ScatteringPath{1, static_cast<int>(idx), std::nullopt,
                                         static_cast<int>(j)});
  }
  out.frames.resize(out.paths.size(), std::vector<double>(n_frames));

  RealBuffer axis(n_axis);
  RealBuffer modulus(n_axis);
  ComplexBuffer spectrum(n_axis / 2 + 1), work_in(n_axis), work_out(n_axis);
  for (std::size_t m = 0; m < n_frames; ++m) {
    for (std::size_t k = 0; k < geo; ++k)
      axis[offset + k] = s_time.frames[s1_rows[geo - 1 - k]][m];
    // Edge replication keeps a constant profile constant on the circle.
    std::fill(axis.begin(), axis.begin() + static_cast<std::ptrdiff_t>(offset), axis[offset]);
    std::fill(axis.begin() + static_cast<std::ptrdiff_t>(offset + geo), axis.end(),
              axis[offset + geo - 1]);
    RealForward(axis, &spectrum);
    for (std::size_t j = 0; j < n_wavelets; ++j) {
      AnalyticModulus(spectrum, bank.filters[j].response, &work_in, &work_out, &modulus);
      for (std::size_t k = 0; k < geo; ++k) {
        const std::size_t idx = geo - 1 - k;
        out.frames[base + j * geo + idx][m] = modulus[offset + k];
      }
    }
  }
  out.utterance_vector = PoolUtterance(out);
  return out;
}

ScatteringFeatures ScatteringTransform::Compute(const Waveform &x, Execution exec) const {
  ScatteringFeatures s = TimeScattering(x, exec);
  if (cfg_.freq_scattering) return FrequencyScattering(s);
  return s;
}

namespace reference {

ScatteringFeatures TimeScattering(const ScatteringTransform &transform, const Waveform &x) {
  const auto &cfg = transform.config();
  RealBuffer signal = transform.PrepareSignal(x);
  const auto &lowpass = transform.bank1().lowpass;

  std::vector<RealBuffer> u1 = WaveletModulus(signal, transform.bank1(), Execution::kSerial);
  SecondLayer u2 = ScatterLayer2(u1, transform.bank2(), transform.bank1(), Execution::kSerial);

  ScatteringFeatures out;
  out.paths = TimePaths(u1.size(), u2.paths);
  auto s0 = LowpassAverage({signal}, lowpass, cfg.Hop(), Execution::kSerial);
  for (double &v : s0[0]) v = std::abs(v);
  auto s1 = LowpassAverage(u1, lowpass, cfg.Hop(), Execution::kSerial);
  auto s2 = LowpassAverage(u2.envelopes, lowpass, cfg.Hop(), Execution::kSerial);
  out.frames.reserve(out.paths.size());
  out.frames.push_back(std::move(s0[0]));
  for (auto &f : s1) out.frames.push_back(std::move(f));
  for (auto &f : s2) out.frames.push_back(std::move(f));

  if (cfg.log_compress) ApplyLogCompression(&out, cfg.log_eps);
  out.utterance_vector = PoolUtterance(out);
  return out;
}

}  // namespace reference

}  // namespace scatser
