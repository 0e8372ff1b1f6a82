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

#include "scatser/mfcc.hpp"

#include <cmath>
#include <string>

#include "scatser/error.hpp"
#include "scatser/fft.hpp"

namespace scatser {

namespace {
constexpr double kLogFloor = 1e-10;
}  // namespace

int MfccConfig::WindowSamples(int sample_rate_hz) const {
  return static_cast<int>(std::lround(win_ms * 1e-3 * sample_rate_hz));
}

int MfccConfig::HopSamples(int sample_rate_hz) const {
  return static_cast<int>(std::lround(hop_ms * 1e-3 * sample_rate_hz));
}

void MfccConfig::Validate(int sample_rate_hz) const {
  if (n_coeffs < 1 || n_mels < 1 || n_coeffs > n_mels)
    throw Error(ErrorCode::kInvalidConfig, "need 1 <= n_coeffs <= n_mels");
  if (n_fft < 2 || !IsPow2(static_cast<std::size_t>(n_fft)))
    throw Error(ErrorCode::kInvalidConfig, "mfcc n_fft must be a power of two");
  const int win = WindowSamples(sample_rate_hz);
  if (win < 1 || win > n_fft)
    throw Error(ErrorCode::kInvalidConfig, "window must fit in n_fft");
  if (HopSamples(sample_rate_hz) < 1)
    throw Error(ErrorCode::kInvalidConfig, "hop must be at least one sample");
  if (!(fmin_hz >= 0.0) || !(fmax_hz > fmin_hz) || fmax_hz > 0.5 * sample_rate_hz)
    throw Error(ErrorCode::kInvalidConfig, "need 0 <= fmin < fmax <= Nyquist");
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

Matrix MelFilterbank(const MfccConfig &cfg, int sample_rate_hz) {
  cfg.Validate(sample_rate_hz);
  const std::size_t n_bins = static_cast<std::size_t>(cfg.n_fft) / 2 + 1;
  const double mel_lo = HzToMel(cfg.fmin_hz);
  const double mel_hi = HzToMel(cfg.fmax_hz);
  std::vector<double> edges(static_cast<std::size_t>(cfg.n_mels) + 2);
  for (std::size_t i = 0; i < edges.size(); ++i)
    edges[i] = MelToHz(mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) /
                                    static_cast<double>(edges.size() - 1));

  Matrix fb(static_cast<std::size_t>(cfg.n_mels), n_bins);
  for (std::size_t m = 0; m < fb.rows(); ++m) {
    const double left = edges[m], center = edges[m + 1], right = edges[m + 2];
    for (std::size_t k = 0; k < n_bins; ++k) {
      const double f = static_cast<double>(k) * sample_rate_hz / cfg.n_fft;
      double rise = (f - left) / (center - left);
      double fall = (right - f) / (right - center);
      fb(m, k) = std::max(0.0, std::min(rise, fall));
    }
  }
  return fb;
}

std::vector<double> HammingWindow(int n) {
  std::vector<double> w(static_cast<std::size_t>(n), 1.0);
  if (n == 1) return w;
  for (int i = 0; i < n; ++i)
    w[static_cast<std::size_t>(i)] = 0.54 - 0.46 * std::cos(2.0 * M_PI * i / (n - 1));
  return w;
}

Matrix DctMatrix(int n_out, int n_in) {
  Matrix d(static_cast<std::size_t>(n_out), static_cast<std::size_t>(n_in));
  for (int k = 0; k < n_out; ++k) {
    const double scale = k == 0 ? std::sqrt(1.0 / n_in) : std::sqrt(2.0 / n_in);
    for (int i = 0; i < n_in; ++i)
      d(static_cast<std::size_t>(k), static_cast<std::size_t>(i)) =
          scale * std::cos(M_PI * k * (i + 0.5) / n_in);
  }
  return d;
}

std::size_t MfccFrameCount(std::size_t length, int win, int hop) {
  if (length < static_cast<std::size_t>(win)) return 0;
  return 1 + (length - static_cast<std::size_t>(win)) / static_cast<std::size_t>(hop);
}

Matrix MfccFrames(const Waveform &x, const MfccConfig &cfg) {
  const int sr = x.sample_rate_hz();
  cfg.Validate(sr);
  const int win = cfg.WindowSamples(sr);
  const int hop = cfg.HopSamples(sr);
  const std::size_t n_frames = MfccFrameCount(x.size(), win, hop);
  if (n_frames == 0)
    throw Error(ErrorCode::kSignalTooShort, "signal of " + std::to_string(x.size()) +
                                                " samples is shorter than one window");

  const Matrix mel = MelFilterbank(cfg, sr);
  const Matrix dct = DctMatrix(cfg.n_coeffs, cfg.n_mels);
  const std::vector<double> window = HammingWindow(win);
  const std::size_t n_bins = static_cast<std::size_t>(cfg.n_fft) / 2 + 1;

  Matrix out(static_cast<std::size_t>(cfg.n_coeffs), n_frames);
  RealBuffer frame(static_cast<std::size_t>(cfg.n_fft));
  ComplexBuffer spectrum(n_bins);
  std::vector<double> power(n_bins), log_mel(static_cast<std::size_t>(cfg.n_mels));
  const auto samples = x.samples();
  for (std::size_t f = 0; f < n_frames; ++f) {
    std::fill(frame.begin(), frame.end(), 0.0);
    const std::size_t start = f * static_cast<std::size_t>(hop);
    for (int i = 0; i < win; ++i)
      frame[static_cast<std::size_t>(i)] =
          samples[start + static_cast<std::size_t>(i)] * window[static_cast<std::size_t>(i)];
    RealForward(frame, &spectrum);
    for (std::size_t k = 0; k < n_bins; ++k) power[k] = std::norm(spectrum[k]);
    for (std::size_t m = 0; m < mel.rows(); ++m) {
      double e = 0.0;
      for (std::size_t k = 0; k < n_bins; ++k) e += mel(m, k) * power[k];
      log_mel[m] = std::log(e + kLogFloor);
    }
    for (std::size_t c = 0; c < dct.rows(); ++c) {
      double acc = 0.0;
      for (std::size_t m = 0; m < log_mel.size(); ++m) acc += dct(c, m) * log_mel[m];
      out(c, f) = acc;
    }
  }
  return out;
}

std::vector<double> MfccStats(const Matrix &frames) {
  if (frames.cols() < 2)
    throw Error(ErrorCode::kTooFewFrames, "need at least two frames for statistics");
  const std::size_t n_coeffs = frames.rows();
  const double n = static_cast<double>(frames.cols());
  std::vector<double> out(2 * n_coeffs);
  for (std::size_t c = 0; c < n_coeffs; ++c) {
    double mean = 0.0;
    for (double v : frames.row(c)) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : frames.row(c)) var += (v - mean) * (v - mean);
    out[c] = mean;
    out[n_coeffs + c] = std::sqrt(var / n);
  }
  return out;
}

}  // namespace scatser
