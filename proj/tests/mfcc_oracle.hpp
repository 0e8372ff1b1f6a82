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

// Direct MFCC reference: every stage written from its definition with an
// O(n^2) DFT and no shared code with the library pipeline.

#ifndef SCATSER_TESTS_MFCC_ORACLE_HPP_
#define SCATSER_TESTS_MFCC_ORACLE_HPP_

#include <cmath>
#include <vector>

#include "scatser/matrix.hpp"

namespace scatser::testing {

// 13 x frames, for the default configuration (20 ms, 10 ms, 512 bins, 26 mels,
// 0 Hz to Nyquist).
inline Matrix NaiveMfcc(const std::vector<double> &x, int rate) {
  const int win = rate / 50, hop = rate / 100, n_fft = 512, n_mels = 26, n_coeffs = 13;
  const double fmax = 8000.0;
  const std::size_t frames = 1 + (x.size() - static_cast<std::size_t>(win)) / hop;

  auto mel = [](double f) { return 2595.0 * std::log10(1.0 + f / 700.0); };
  auto inv = [](double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); };
  std::vector<double> edge(n_mels + 2);
  for (int i = 0; i < n_mels + 2; ++i) edge[i] = inv(mel(fmax) * i / (n_mels + 1));

  // Twiddles tabulated once; index (k * t) mod n_fft keeps every angle exact.
  std::vector<double> cos_tab(n_fft), sin_tab(n_fft);
  for (int i = 0; i < n_fft; ++i) {
    cos_tab[i] = std::cos(2.0 * M_PI * i / n_fft);
    sin_tab[i] = std::sin(2.0 * M_PI * i / n_fft);
  }

  Matrix out(n_coeffs, frames);
  for (std::size_t f = 0; f < frames; ++f) {
    std::vector<double> seg(win);
    for (int i = 0; i < win; ++i)
      seg[i] = x[f * hop + i] * (0.54 - 0.46 * std::cos(2.0 * M_PI * i / (win - 1)));
    std::vector<double> power(n_fft / 2 + 1);
    for (int k = 0; k <= n_fft / 2; ++k) {
      double re = 0.0, im = 0.0;
      for (int i = 0; i < win; ++i) {
        const int idx = (k * i) % n_fft;
        re += seg[i] * cos_tab[idx];
        im -= seg[i] * sin_tab[idx];
      }
      power[k] = re * re + im * im;
    }
    std::vector<double> logmel(n_mels);
    for (int m = 0; m < n_mels; ++m) {
      double e = 0.0;
      for (int k = 0; k <= n_fft / 2; ++k) {
        const double hz = static_cast<double>(k) * rate / n_fft;
        double w = 0.0;
        if (hz > edge[m] && hz <= edge[m + 1]) w = (hz - edge[m]) / (edge[m + 1] - edge[m]);
        else if (hz > edge[m + 1] && hz < edge[m + 2])
          w = (edge[m + 2] - hz) / (edge[m + 2] - edge[m + 1]);
        e += w * power[k];
      }
      logmel[m] = std::log(e + 1e-10);
    }
    for (int c = 0; c < n_coeffs; ++c) {
      double acc = 0.0;
      for (int m = 0; m < n_mels; ++m) acc += logmel[m] * std::cos(M_PI * c * (m + 0.5) / n_mels);
      out(c, f) = acc * std::sqrt((c == 0 ? 1.0 : 2.0) / n_mels);
    }
  }
  return out;
}

}  // namespace scatser::testing

#endif  // SCATSER_TESTS_MFCC_ORACLE_HPP_
