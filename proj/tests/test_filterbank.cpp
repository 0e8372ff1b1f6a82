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
#include <sstream>
#include <string>

#include "doctest.h"
#include "scatser/error.hpp"
#include "scatser/filterbank.hpp"

namespace {

using scatser::BuildMorletBank;
using scatser::FilterBank;
using scatser::FilterRegion;

void CheckSpacing(const FilterBank &bank) {
  const double ratio = std::pow(2.0, -1.0 / bank.spec.q);
  const double cutoff = static_cast<double>(bank.spec.q) / bank.spec.t;
  for (std::size_t k = 1; k < bank.size(); ++k) {
    const auto &prev = bank.filters[k - 1];
    const auto &cur = bank.filters[k];
    CHECK(cur.center < prev.center);
    if (cur.region == FilterRegion::kGeometric) {
      CHECK(cur.center >= cutoff);
      CHECK(std::abs(cur.center / prev.center - ratio) < 1e-9);
    } else if (prev.region == FilterRegion::kLinear) {
      CHECK(cur.center < cutoff);
      CHECK(std::abs((prev.center - cur.center) - 1.0 / bank.spec.t) < 1e-9);
    }
  }
}

}  // namespace

TEST_SUITE("filterbank") {

TEST_CASE("q=1 geometric ratios are one half") {
  const FilterBank bank = BuildMorletBank({1, 4096, 65536});
  REQUIRE(bank.GeometricCount() >= 2);
  for (std::size_t k = 1; k < bank.GeometricCount(); ++k)
    CHECK(std::abs(bank.filters[k].center / bank.filters[k - 1].center - 0.5) < 1e-9);
  CheckSpacing(bank);
}

TEST_CASE("default bank spacing and regions") {
  const FilterBank bank = BuildMorletBank({5, 16384, 65536});
  CheckSpacing(bank);
  CHECK(bank.GeometricCount() > 40);
  CHECK(bank.size() > bank.GeometricCount());
  CHECK(bank.filters.back().center >= 1.0 / 16384 - 1e-12);
  CHECK(bank.filters.front().center <= 0.5);
  for (std::size_t k = 0; k < bank.size(); ++k)
    CHECK((bank.filters[k].region == FilterRegion::kGeometric) == (k < bank.GeometricCount()));
}

TEST_CASE("top filter reaches Nyquist at half power") {
  for (int q : {1, 3, 5, 8}) {
    const FilterBank bank = BuildMorletBank({q, 16384, 65536});
    const auto &top = bank.filters.front();
    CHECK(std::abs(top.center + top.bandwidth / 2 - 0.5) < 1e-9);
  }
}

TEST_CASE("every filter is zero at DC, real, non-negative and analytic") {
  for (int q : {1, 5}) {
    const FilterBank bank = BuildMorletBank({q, 4096, 16384});
    const std::size_t n = 16384;
    for (const auto &f : bank.filters) {
      REQUIRE(f.response.size() == n);
      CHECK(std::abs(f.response[0]) < 1e-12);
      double min_gain = 0.0, max_negative = 0.0;
      for (std::size_t k = 0; k <= n / 2; ++k) min_gain = std::min(min_gain, f.response[k]);
      for (std::size_t k = n / 2 + 1; k < n; ++k)
        max_negative = std::max(max_negative, std::abs(f.response[k]));
      CHECK(min_gain >= 0.0);
      CHECK(max_negative == 0.0);
    }
    CHECK(bank.lowpass[0] == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("littlewood-paley bounds over the A1 grid") {
  for (int q : {1, 3, 5, 8}) {
    for (int t : {4096, 16384, 32768}) {
      CAPTURE(q);
      CAPTURE(t);
      const FilterBank bank = BuildMorletBank({q, t, 65536});
      CHECK(scatser::LittlewoodPaleyBounds(bank).max <= 1.0 + 1e-6);
      const auto band = scatser::LittlewoodPaleyBounds(bank, 1.0 / t, bank.filters.front().center);
      CHECK(band.min >= 0.5);
    }
  }
}

TEST_CASE("lowpass-only bank has littlewood-paley max one") {
  FilterBank bank = BuildMorletBank({5, 4096, 16384});
  bank.filters.clear();
  const auto b = scatser::LittlewoodPaleyBounds(bank);
  CHECK(b.max == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("geometric count follows the octave formula") {
  for (int q : {1, 2, 3, 5, 8, 12}) {
    for (int t : {1024, 4096, 16384, 32768}) {
      const FilterBank bank = BuildMorletBank({q, t, 65536});
      const double lmax = bank.filters.front().center;
      const double expect = std::ceil(q * std::log2(lmax * t / q));
      CAPTURE(q);
      CAPTURE(t);
      CHECK(std::abs(static_cast<double>(bank.GeometricCount()) - expect) <= 1.0);
    }
  }
}

TEST_CASE("doubling n_fft leaves centers and bandwidths unchanged") {
  const FilterBank a = BuildMorletBank({5, 8192, 32768});
  const FilterBank b = BuildMorletBank({5, 8192, 65536});
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(std::abs(a.filters[k].center - b.filters[k].center) < 1e-9);
    CHECK(std::abs(a.filters[k].bandwidth - b.filters[k].bandwidth) < 1e-9);
  }
}

TEST_CASE("invalid specs") {
  auto code_of = [](scatser::FilterBankSpec spec) {
    try {
      BuildMorletBank(spec);
    } catch (const scatser::Error &e) {
      return e.code();
    }
    return scatser::ErrorCode::kParseError;
  };
  CHECK(code_of({8, 16, 1024}) == scatser::ErrorCode::kInvalidSpec);  // empty geometric region
  CHECK(code_of({5, 1000, 4096}) == scatser::ErrorCode::kInvalidSpec);
  CHECK(code_of({5, 8192, 4096}) == scatser::ErrorCode::kInvalidSpec);
  CHECK(code_of({0, 1024, 4096}) == scatser::ErrorCode::kInvalidSpec);
}

TEST_CASE("csv dump lists every filter with its region") {
  const FilterBank bank = BuildMorletBank({5, 16384, 65536});
  std::ostringstream os;
  scatser::WriteFilterBankCsv(os, bank, 16000);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "index,center_freq_hz,bandwidth_hz,region");
  std::size_t rows = 0, geo = 0, lin = 0;
  while (std::getline(is, line)) {
    ++rows;
    if (line.ends_with(",geo")) ++geo;
    if (line.ends_with(",lin")) ++lin;
  }
  CHECK(rows == bank.size());
  CHECK(geo == bank.GeometricCount());
  CHECK(lin == bank.size() - bank.GeometricCount());
}

}  // TEST_SUITE
