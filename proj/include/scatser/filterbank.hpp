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

#ifndef SCATSER_FILTERBANK_HPP_
#define SCATSER_FILTERBANK_HPP_

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace scatser {

struct FilterBankSpec {
  int q = 5;        // wavelets per octave
  int t = 16384;    // averaging scale in samples, power of two
  int n_fft = 65536;

  void Validate() const;  // throws InvalidSpec
};

enum class FilterRegion { kGeometric, kLinear };

// One analytic band-pass filter sampled on the n_fft DFT grid. Frequencies
// are normalized (cycles per sample). `bandwidth` is the full half-power
// width, `sigma` the Gaussian standard deviation in frequency.
struct BandpassFilter {
  double center = 0.0;
  double bandwidth = 0.0;
  double sigma = 0.0;
  FilterRegion region = FilterRegion::kGeometric;
  std::vector<double> response;  // n_fft real gains, zero on negative bins
};

struct FilterBank {
  FilterBankSpec spec;
  std::vector<BandpassFilter> filters;  // center strictly decreasing
  std::vector<double> lowpass;          // phi, unit gain at DC
  double lowpass_sigma = 0.0;           // Gaussian std of phi in frequency
  double bandpass_gain = 1.0;           // scale applied to unit-peak wavelets

  std::size_t size() const { return filters.size(); }
  std::size_t GeometricCount() const;
};

/// Normalized frequency of DFT bin k on an n-point grid; bin n/2 maps to +0.5.
double BinFrequency(std::size_t k, std::size_t n);

/// Morlet (Gaussian with zero-mean correction) bank with Q filters per octave.
///
/// Geometric region: centers lambda_max * 2^(-k/Q) for every center >= Q/T,
/// with lambda_max = (1 + 2^(-1/Q)) / 4 so the top filter's half-power point
/// sits on Nyquist and neighbours cross at half power. Linear region: centers
/// continue downward at spacing 1/T, each with half-power bandwidth 1/T, while
/// the center stays >= 1/T. phi is a unit-peak Gaussian whose half-power point
/// is at 1/T. Band-pass filters are then scaled by the largest common gain
/// that keeps the Littlewood-Paley sum <= 1 on every bin.
FilterBank BuildMorletBank(const FilterBankSpec &spec);

struct LpBounds {
  double min = 0.0;
  double max = 0.0;
};

/// |phi(w)|^2 + 1/2 sum_lambda (|psi(w)|^2 + |psi(-w)|^2) for every bin.
std::vector<double> LittlewoodPaleySum(const FilterBank &bank);

/// Bounds over all bins.
LpBounds LittlewoodPaleyBounds(const FilterBank &bank);
/// Bounds over bins whose |frequency| lies in [f_lo, f_hi].
LpBounds LittlewoodPaleyBounds(const FilterBank &bank, double f_lo, double f_hi);

/// CSV rows `index,center_freq_hz,bandwidth_hz,region` with region geo|lin.
void WriteFilterBankCsv(std::ostream &os, const FilterBank &bank,
                        int sample_rate_hz);

}  // namespace scatser

#endif  // SCATSER_FILTERBANK_HPP_
