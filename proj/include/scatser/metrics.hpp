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

#ifndef SCATSER_METRICS_HPP_
#define SCATSER_METRICS_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace scatser {

// Rows are true classes, columns predicted classes.
struct ConfusionMatrix {
  std::vector<std::string> classes;
  std::vector<std::vector<std::int64_t>> counts;

  explicit ConfusionMatrix(std::vector<std::string> classes_in = {});

  std::size_t size() const { return classes.size(); }
  std::int64_t Total() const;
  std::int64_t RowSum(std::size_t i) const;
  /// Throws DimensionMismatch when the class lists differ.
  ConfusionMatrix &operator+=(const ConfusionMatrix &other);
  bool operator==(const ConfusionMatrix &) const = default;
};

/// Throws UnknownLabel for labels outside `classes`, LengthMismatch when the
/// label lists differ in length.
ConfusionMatrix Confusion(const std::vector<std::string> &true_labels,
                          const std::vector<std::string> &pred_labels,
                          const std::vector<std::string> &classes);

struct UarResult {
  double uar = 0.0;
  std::vector<std::string> empty_classes;  // rows excluded from the mean
};

/// Mean per-class recall over rows with at least one sample. Throws
/// EmptyMatrix when every row is empty.
UarResult UarDetailed(const ConfusionMatrix &cm);
double Uar(const ConfusionMatrix &cm);

/// Trace over total. Throws EmptyMatrix when the total is zero.
double Accuracy(const ConfusionMatrix &cm);

}  // namespace scatser

#endif  // SCATSER_METRICS_HPP_
