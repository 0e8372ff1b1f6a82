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

#include "scatser/filterbank.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include "scatser/error.hpp"
#include "scatser/fft.hpp"

namespace scatser {

namespace {

const double kSqrtLn2 = std::sqrt(std::log(2.0));

// Gaussian bump at `center` minus a DC Gaussian of the same width, weighted
// so the response at zero frequency vanishes exactly. Analytic: negative
// frequency bins stay zero.
std::vector<double> MorletResponse(double center, double sigma, std::size_t n) {
  std::vector<double> r(n, 0.0);
  const double kappa = std::exp(-center * center / (2.0 * sigma * sigma));
  for (std::size_t k = 0; k <= n / 2; ++k) {
    double w = static_cast<double>(k) / static_cast<double>(n);
    double d = w - center;
    r[k] = std::exp(-d * d / (2.0 * sigma * sigma)) -
           kappa * std::exp(-w * w / (2.0 * sigma * sigma));
  }
  return r;
}

// Per-bin 1/2 (|psi(w)|^2 + |psi(-w)|^2) summed over the band-pass filters.
std::vector<double> HalfBandpassEnergy(const FilterBank &bank) {
  const std::size_t n = static_cast<std::size_t>(bank.spec.n_fft);
  std::vector<double> b(n, 0.0);
  for (const auto &f : bank.filters) {
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t mirror = (n - k) % n;
      b[k] += 0.5 * (f.response[k] * f.response[k] +
                     f.response[mirror] * f.response[mirror]);
    }
  }
  return b;
}

}  // namespace

void FilterBankSpec::Validate() const {
  if (q < 1) throw Error(ErrorCode::kInvalidSpec, "q must be >= 1");
  if (t < 1 || !IsPow2(static_cast<std::size_t>(t)))
    throw Error(ErrorCode::kInvalidSpec, "t must be a power of two");
  if (n_fft < 2 || !IsPow2(static_cast<std::size_t>(n_fft)))
    throw Error(ErrorCode::kInvalidSpec, "n_fft must be a power of two");
  if (t > n_fft) throw Error(ErrorCode::kInvalidSpec, "t must not exceed n_fft");
}

std::size_t FilterBank::GeometricCount() const {
  return static_cast<std::size_t>(
      std::count_if(filters.begin(), filters.end(), [](const BandpassFilter &f) {
        return f.region == FilterRegion::kGeometric;
      }));
}

double BinFrequency(std::size_t k, std::size_t n) {
  if (k <= n / 2) return static_cast<double>(k) / static_cast<double>(n);
  return (static_cast<double>(k) - static_cast<double>(n)) / static_cast<double>(n);
}

FilterBank BuildMorletBank(const FilterBankSpec &spec) {
  spec.Validate();
  const std::size_t n = static_cast<std::size_t>(spec.n_fft);
  const double q = spec.q;
  const double t = spec.t;
  const double ratio = std::exp2(-1.0 / q);
  // sigma = s * lambda makes neighbours at lambda and ratio*lambda cross at
  // their half-power points.
  const double rel_sigma = (1.0 - ratio) / ((1.0 + ratio) * kSqrtLn2);
  const double lambda_max = (1.0 + ratio) / 4.0;
  const double geo_floor = q / t;
  // Relative slack absorbs rounding of lambda_max * ratio^k near Q/T.
  const double tol = 1e-12;

  FilterBank bank;
  bank.spec = spec;
  for (int k = 0;; ++k) {
    double lambda = lambda_max * std::exp2(-k / q);
    if (lambda < geo_floor * (1.0 - tol)) break;
    BandpassFilter f;
    f.center = lambda;
    f.sigma = rel_sigma * lambda;
    f.bandwidth = 2.0 * f.sigma * kSqrtLn2;
    f.region = FilterRegion::kGeometric;
    bank.filters.push_back(std::move(f));
  }
  if (bank.filters.empty())
    throw Error(ErrorCode::kInvalidSpec,
                "geometric region empty: q/t = " + std::to_string(geo_floor) +
                    " exceeds top center " + std::to_string(lambda_max));

  const double lin_sigma = 0.5 / (t * kSqrtLn2);
  const double last_geo = bank.filters.back().center;
  for (int m = 1;; ++m) {
    double lambda = last_geo - m / t;
    if (lambda < (1.0 / t) * (1.0 - tol)) break;
    BandpassFilter f;
    f.center = lambda;
    f.sigma = lin_sigma;
    f.bandwidth = 1.0 / t;
    f.region = FilterRegion::kLinear;
    bank.filters.push_back(std::move(f));
  }

  for (auto &f : bank.filters) f.response = MorletResponse(f.center, f.sigma, n);

  bank.lowpass_sigma = 1.0 / (t * kSqrtLn2);
  bank.lowpass.resize(n);
  std::vector<double> one_minus_phi2(n);
  for (std::size_t k = 0; k < n; ++k) {
    double w = BinFrequency(k, n);
    double a = w * w / (bank.lowpass_sigma * bank.lowpass_sigma);
    bank.lowpass[k] = std::exp(-0.5 * a);
    one_minus_phi2[k] = -std::expm1(-a);
  }

  // Largest g with |phi|^2 + g^2 B <= 1 everywhere.
  std::vector<double> b = HalfBandpassEnergy(bank);
  double g2 = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    if (b[k] > 0.0) g2 = std::min(g2, one_minus_phi2[k] / b[k]);
  }
  bank.bandpass_gain = std::sqrt(g2);
  for (auto &f : bank.filters) {
    for (double &v : f.response) v *= bank.bandpass_gain;
  }
  return bank;
}

std::vector<double> LittlewoodPaleySum(const FilterBank &bank) {
  std::vector<double> lp = HalfBandpassEnergy(bank);
  for (std::size_t k = 0; k < lp.size(); ++k) lp[k] += bank.lowpass[k] * bank.lowpass[k];
  return lp;
}

LpBounds LittlewoodPaleyBounds(const FilterBank &bank) {
  std::vector<double> lp = LittlewoodPaleySum(bank);
  auto [lo, hi] = std::minmax_element(lp.begin(), lp.end());
  return {*lo, *hi};
}

LpBounds LittlewoodPaleyBounds(const FilterBank &bank, double f_lo, double f_hi) {
  std::vector<double> lp = LittlewoodPaleySum(bank);
  LpBounds out{std::numeric_limits<double>::infinity(),
               -std::numeric_limits<double>::infinity()};
  bool any = false;
  for (std::size_t k = 0; k < lp.size(); ++k) {
    double w = std::abs(BinFrequency(k, lp.size()));
    if (w < f_lo || w > f_hi) continue;
    out.min = std::min(out.min, lp[k]);
    out.max = std::max(out.max, lp[k]);
    any = true;
  }
  if (!any) throw Error(ErrorCode::kInvalidArgument, "no bins in requested band");
  return out;
}

void WriteFilterBankCsv(std::ostream &os, const FilterBank &bank,
                        int sample_rate_hz) {
  os << "index,center_freq_hz,bandwidth_hz,region\n";
  char buf[96];
  for (std::size_t i = 0; i < bank.filters.size(); ++i) {
    const auto &f = bank.filters[i];
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%s\n", i,
                  f.center * sample_rate_hz, f.bandwidth * sample_rate_hz,
                  f.region == FilterRegion::kGeometric ? "geo" : "lin");
    os << buf;
  }
}

}  // namespace scatser
