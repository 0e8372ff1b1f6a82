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

// Z-score standardization and a one-vs-one RBF support vector machine.
//
// Each binary machine solves the C-SVC dual
//
//   min_a  1/2 a'Qa - e'a,   0 <= a <= C,   y'a = 0,   Q_ij = y_i y_j k(x_i, x_j)
//
// with k(u, v) = exp(-gamma |u - v|^2), by SMO using the maximal violating
// pair (ties resolved toward the lowest index).

#ifndef SCATSER_SVM_HPP_
#define SCATSER_SVM_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scatser/matrix.hpp"
#include "scatser/parallel.hpp"

namespace scatser {

struct Standardizer {
  std::vector<double> mean;
  std::vector<double> std;  // floored at kStdFloor

  static constexpr double kStdFloor = 1e-12;

  /// Throws TooFewRows for fewer than two rows.
  static Standardizer Fit(const Matrix &x);
  /// Throws DimensionMismatch on a width mismatch.
  Matrix Apply(const Matrix &x) const;
  std::vector<double> Apply(std::span<const double> x) const;
  std::size_t dim() const { return mean.size(); }
};

struct SvmParams {
  double c = 1.0;
  double gamma = 1.0;
  double tolerance = 1e-3;       // stop when the maximal KKT violation is below this
  long max_iterations = 1000000;
};

struct BinaryMachine {
  int positive_class = 0;  // index into SvmModel::classes, label +1
  int negative_class = 0;  // label -1
  Matrix support_vectors;  // standardized
  std::vector<double> alpha_y;
  double bias = 0.0;
  long iterations = 0;
  bool converged = true;
  double kkt_gap = 0.0;    // maximal violation recomputed from the final alphas
};

struct SvmModel {
  std::vector<std::string> classes;  // sorted
  std::vector<BinaryMachine> pairs;  // (i, j), i < j, lexicographic
  double gamma = 0.0;
  double c = 0.0;
  Standardizer standardizer;

  /// Number of machines that hit the iteration cap.
  int ConvergenceWarnings() const;
};

struct Prediction {
  std::string label;
  std::vector<double> decision_values;  // one per machine, in pair order
};

/// Fits the standardizer on `x`, then trains one machine per class pair.
/// Throws DegenerateClass when fewer than two classes are present and
/// DimensionMismatch when labels and rows disagree.
SvmModel SvmTrain(const Matrix &x, const std::vector<std::string> &labels,
                  const SvmParams &params);

/// Throws DimensionMismatch when x has the wrong width.
Prediction SvmPredict(const SvmModel &model, std::span<const double> x);
std::vector<std::string> SvmPredictAll(const SvmModel &model, const Matrix &x);

/// Decision value of one machine on an already standardized vector.
double DecisionValue(const BinaryMachine &machine, double gamma,
                     std::span<const double> z);

struct BinaryProblemResult {
  std::vector<double> alpha;
  double bias = 0.0;
  long iterations = 0;
  bool converged = true;
};

/// Raw SMO solve on a precomputed kernel matrix; y entries are +1 or -1.
BinaryProblemResult SolveSmo(const Matrix &kernel, const std::vector<double> &y,
                             const SvmParams &params);

/// Maximal KKT violation m(a) - M(a) for a dual point, from the gradient.
double KktGap(const Matrix &kernel, const std::vector<double> &y,
              const std::vector<double> &alpha, double c);

struct SvmGrid {
  std::vector<double> c_values{0.1, 1.0, 10.0, 100.0};
  std::vector<double> gamma_scales{0.1, 1.0, 10.0};  // gamma = scale / dim
};

struct GridPoint {
  double c = 0.0;
  double gamma = 0.0;
  double valid_uar = 0.0;
};

struct GridSearchResult {
  double best_c = 0.0;
  double best_gamma = 0.0;
  double valid_uar = 0.0;
  std::vector<GridPoint> points;  // in grid order (c major)
  int convergence_warnings = 0;
};

/// Trains on (train_x, train_y) per grid point, scores UAR on the validation
/// set and returns the best point. Ties prefer smaller c, then smaller gamma.
/// Grid points run in parallel under kParallel.
GridSearchResult GridSearch(const Matrix &train_x, const std::vector<std::string> &train_y,
                            const Matrix &valid_x, const std::vector<std::string> &valid_y,
                            const SvmGrid &grid, Execution exec = Execution::kParallel);

/// Serialized as one JSON document; doubles use shortest round-trip form.
std::string SvmModelToJson(const SvmModel &model, std::string_view config_hash = {});
SvmModel SvmModelFromJson(std::string_view json, std::string *config_hash = nullptr);

}  // namespace scatser

#endif  // SCATSER_SVM_HPP_
