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

#ifndef SCATSER_MFCC_HPP_
#define SCATSER_MFCC_HPP_

#include <cstddef>
#include <vector>

#include "scatser/audio_io.hpp"
#include "scatser/matrix.hpp"

namespace scatser {

struct MfccConfig {
  int n_coeffs = 13;
  double win_ms = 20.0;
  double hop_ms = 10.0;
  int n_fft = 512;
  int n_mels = 26;
  double fmin_hz = 0.0;
  double fmax_hz = 8000.0;

  int WindowSamples(int sample_rate_hz) const;
  int HopSamples(int sample_rate_hz) const;
  void Validate(int sample_rate_hz) const;  // throws InvalidConfig
};

double HzToMel(double hz);
double MelToHz(double mel);

/// n_mels x (n_fft/2 + 1) triangular filters, peaks evenly spaced in mel,
/// each peak-normalized to 1.
Matrix MelFilterbank(const MfccConfig &cfg, int sample_rate_hz);

/// Symmetric Hamming window of length n.
std::vector<double> HammingWindow(int n);

/// Orthonormal DCT-II basis, n_out x n_in.
Matrix DctMatrix(int n_out, int n_in);

/// Number of full frames: 1 + floor((len - win) / hop).
std::size_t MfccFrameCount(std::size_t length, int win, int hop);

/// n_coeffs x n_frames cepstra: Hamming window, |DFT|^2 at n_fft, mel
/// energies, ln(e + 1e-10), orthonormal DCT-II, coefficients 0..n_coeffs-1.
/// Throws SignalTooShort when the signal is shorter than one window.
Matrix MfccFrames(const Waveform &x, const MfccConfig &cfg);

/// [per-coefficient mean, per-coefficient population std] over frames
/// (columns). Throws TooFewFrames for fewer than two frames.
std::vector<double> MfccStats(const Matrix &frames);

}  // namespace scatser

#endif  // SCATSER_MFCC_HPP_
