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

#include "scatser/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "scatser/error.hpp"

namespace scatser {

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> classes_in)
    : classes(std::move(classes_in)),
      counts(classes.size(), std::vector<std::int64_t>(classes.size(), 0)) {}

std::int64_t ConfusionMatrix::Total() const {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < size(); ++i) total += RowSum(i);
  return total;
}

std::int64_t ConfusionMatrix::RowSum(std::size_t i) const {
  return std::accumulate(counts[i].begin(), counts[i].end(), std::int64_t{0});
}

ConfusionMatrix &ConfusionMatrix::operator+=(const ConfusionMatrix &other) {
  if (other.classes != classes)
    throw Error(ErrorCode::kDimensionMismatch, "confusion matrices have different classes");
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) counts[i][j] += other.counts[i][j];
  return *this;
}

ConfusionMatrix Confusion(const std::vector<std::string> &true_labels,
                          const std::vector<std::string> &pred_labels,
                          const std::vector<std::string> &classes) {
  if (true_labels.size() != pred_labels.size())
    throw Error(ErrorCode::kLengthMismatch, "true and predicted label counts differ");
  ConfusionMatrix cm(classes);
  auto index_of = [&](const std::string &label) {
    auto it = std::find(classes.begin(), classes.end(), label);
    if (it == classes.end()) throw Error(ErrorCode::kUnknownLabel, "label '" + label + "'");
    return static_cast<std::size_t>(it - classes.begin());
  };
  for (std::size_t k = 0; k < true_labels.size(); ++k)
    ++cm.counts[index_of(true_labels[k])][index_of(pred_labels[k])];
  return cm;
}

UarResult UarDetailed(const ConfusionMatrix &cm) {
  UarResult result;
  double sum = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < cm.size(); ++i) {
    const std::int64_t row = cm.RowSum(i);
    if (row == 0) {
      result.empty_classes.push_back(cm.classes[i]);
      continue;
    }
    sum += static_cast<double>(cm.counts[i][i]) / static_cast<double>(row);
    ++used;
  }
  if (used == 0) throw Error(ErrorCode::kEmptyMatrix, "no class has any samples");
  result.uar = sum / static_cast<double>(used);
  return result;
}

double Uar(const ConfusionMatrix &cm) { return UarDetailed(cm).uar; }

double Accuracy(const ConfusionMatrix &cm) {
  const std::int64_t total = cm.Total();
  if (total == 0) throw Error(ErrorCode::kEmptyMatrix, "no samples");
  std::int64_t trace = 0;
  for (std::size_t i = 0; i < cm.size(); ++i) trace += cm.counts[i][i];
  return static_cast<double>(trace) / static_cast<double>(total);
}

}  // namespace scatser
