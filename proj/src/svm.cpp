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

#include "scatser/svm.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <set>

#include <nlohmann/json.hpp>

#include "scatser/error.hpp"
#include "scatser/metrics.hpp"

namespace scatser {

namespace {

constexpr double kTau = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    d += diff * diff;
  }
  return d;
}

bool InUp(double y, double a, double c) { return (y > 0 && a < c) || (y < 0 && a > 0); }
bool InLow(double y, double a, double c) { return (y > 0 && a > 0) || (y < 0 && a < c); }

// m(a) - M(a) over the current gradient; i and j receive the maximal
// violating pair (lowest index on ties).
double SelectPair(const std::vector<double> &grad, const std::vector<double> &y,
                  const std::vector<double> &alpha, double c, std::size_t *i,
                  std::size_t *j) {
  double g_max = -kInf, g_min = kInf;
  for (std::size_t t = 0; t < y.size(); ++t) {
    const double v = -y[t] * grad[t];
    if (InUp(y[t], alpha[t], c) && v > g_max) {
      g_max = v;
      *i = t;
    }
    if (InLow(y[t], alpha[t], c) && v < g_min) {
      g_min = v;
      *j = t;
    }
  }
  if (g_max == -kInf || g_min == kInf) return 0.0;
  return g_max - g_min;
}

double ComputeBias(const std::vector<double> &grad, const std::vector<double> &y,
                   const std::vector<double> &alpha, double c) {
  double ub = kInf, lb = -kInf, sum_free = 0.0;
  std::size_t n_free = 0;
  for (std::size_t t = 0; t < y.size(); ++t) {
    const double yg = y[t] * grad[t];
    if (alpha[t] >= c) {
      if (y[t] < 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (alpha[t] <= 0) {
      if (y[t] > 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  const double rho = n_free > 0 ? sum_free / static_cast<double>(n_free) : (ub + lb) / 2;
  return -rho;
}

Matrix RbfKernel(const Matrix &z, double gamma) {
  const std::size_t n = z.rows();
  Matrix k(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    k(a, a) = 1.0;
    for (std::size_t b = a + 1; b < n; ++b) {
      const double v = std::exp(-gamma * SquaredDistance(z.row(a), z.row(b)));
      k(a, b) = v;
      k(b, a) = v;
    }
  }
  return k;
}

std::vector<std::string> SortedClasses(const std::vector<std::string> &labels) {
  std::set<std::string> unique(labels.begin(), labels.end());
  return {unique.begin(), unique.end()};
}

}  // namespace

Standardizer Standardizer::Fit(const Matrix &x) {
  if (x.rows() < 2)
    throw Error(ErrorCode::kTooFewRows, "standardizer needs at least two rows");
  Standardizer s;
  s.mean.assign(x.cols(), 0.0);
  s.std.assign(x.cols(), 0.0);
  const double n = static_cast<double>(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c) s.mean[c] += x(r, c);
  for (double &m : s.mean) m /= n;
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c) {
      const double d = x(r, c) - s.mean[c];
      s.std[c] += d * d;
    }
  for (double &v : s.std) v = std::max(std::sqrt(v / n), kStdFloor);
  return s;
}

Matrix Standardizer::Apply(const Matrix &x) const {
  if (x.cols() != dim())
    throw Error(ErrorCode::kDimensionMismatch, "standardizer width " + std::to_string(dim()) +
                                                   ", input width " + std::to_string(x.cols()));
  Matrix out(x.rows(), x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c) out(r, c) = (x(r, c) - mean[c]) / std[c];
  return out;
}

std::vector<double> Standardizer::Apply(std::span<const double> x) const {
  if (x.size() != dim())
    throw Error(ErrorCode::kDimensionMismatch, "standardizer width " + std::to_string(dim()) +
                                                   ", input width " + std::to_string(x.size()));
  std::vector<double> out(x.size());
  for (std::size_t c = 0; c < x.size(); ++c) out[c] = (x[c] - mean[c]) / std[c];
  return out;
}

int SvmModel::ConvergenceWarnings() const {
  return static_cast<int>(std::count_if(pairs.begin(), pairs.end(),
                                        [](const BinaryMachine &m) { return !m.converged; }));
}

BinaryProblemResult SolveSmo(const Matrix &kernel, const std::vector<double> &y,
                             const SvmParams &params) {
  const std::size_t n = y.size();
  const double c = params.c;
  BinaryProblemResult result;
  result.alpha.assign(n, 0.0);
  std::vector<double> &alpha = result.alpha;
  std::vector<double> grad(n, -1.0);

  auto q = [&](std::size_t a, std::size_t b) { return y[a] * y[b] * kernel(a, b); };

  result.converged = false;
  while (result.iterations < params.max_iterations) {
    std::size_t i = 0, j = 0;
    if (SelectPair(grad, y, alpha, c, &i, &j) < params.tolerance) {
      result.converged = true;
      break;
    }
    ++result.iterations;

    const double old_i = alpha[i], old_j = alpha[j];
    if (y[i] != y[j]) {
      double quad = q(i, i) + q(j, j) + 2 * q(i, j);
      if (quad <= 0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0) {
        if (alpha[j] < 0) {
          alpha[j] = 0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = -diff;
      }
      if (diff > 0) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = c - diff;
        }
      } else if (alpha[j] > c) {
        alpha[j] = c;
        alpha[i] = c + diff;
      }
    } else {
      double quad = q(i, i) + q(j, j) - 2 * q(i, j);
      if (quad <= 0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = sum - c;
        }
      } else if (alpha[j] < 0) {
        alpha[j] = 0;
        alpha[i] = sum;
      }
      if (sum > c) {
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = sum - c;
        }
      } else if (alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = sum;
      }
    }

    const double d_i = alpha[i] - old_i, d_j = alpha[j] - old_j;
    for (std::size_t t = 0; t < n; ++t) grad[t] += q(t, i) * d_i + q(t, j) * d_j;
  }
  result.bias = ComputeBias(grad, y, alpha, c);
  return result;
}

double KktGap(const Matrix &kernel, const std::vector<double> &y,
              const std::vector<double> &alpha, double c) {
  const std::size_t n = y.size();
  std::vector<double> grad(n, -1.0);
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t s = 0; s < n; ++s)
      grad[t] += y[t] * y[s] * kernel(t, s) * alpha[s];
  std::size_t i = 0, j = 0;
  return std::max(0.0, SelectPair(grad, y, alpha, c, &i, &j));
}

SvmModel SvmTrain(const Matrix &x, const std::vector<std::string> &labels,
                  const SvmParams &params) {
  if (labels.size() != x.rows())
    throw Error(ErrorCode::kDimensionMismatch, "label count differs from row count");
  if (!(params.c > 0) || !(params.gamma > 0) || !(params.tolerance > 0))
    throw Error(ErrorCode::kInvalidArgument, "c, gamma and tolerance must be positive");

  SvmModel model;
  model.classes = SortedClasses(labels);
  if (model.classes.size() < 2)
    throw Error(ErrorCode::kDegenerateClass, "training data must contain at least two classes");
  model.c = params.c;
  model.gamma = params.gamma;
  model.standardizer = Standardizer::Fit(x);
  const Matrix z = model.standardizer.Apply(x);

  for (std::size_t ci = 0; ci < model.classes.size(); ++ci) {
    for (std::size_t cj = ci + 1; cj < model.classes.size(); ++cj) {
      Matrix sub;
      std::vector<double> y;
      for (std::size_t r = 0; r < z.rows(); ++r) {
        if (labels[r] == model.classes[ci]) y.push_back(1.0);
        else if (labels[r] == model.classes[cj]) y.push_back(-1.0);
        else continue;
        sub.AppendRow(z.row(r));
      }
      const Matrix kernel = RbfKernel(sub, params.gamma);
      const BinaryProblemResult solved = SolveSmo(kernel, y, params);

      BinaryMachine m;
      m.positive_class = static_cast<int>(ci);
      m.negative_class = static_cast<int>(cj);
      m.bias = solved.bias;
      m.iterations = solved.iterations;
      m.converged = solved.converged;
      m.kkt_gap = KktGap(kernel, y, solved.alpha, params.c);
      for (std::size_t t = 0; t < y.size(); ++t) {
        if (solved.alpha[t] <= 0) continue;
        m.support_vectors.AppendRow(sub.row(t));
        m.alpha_y.push_back(solved.alpha[t] * y[t]);
      }
      model.pairs.push_back(std::move(m));
    }
  }
  return model;
}

double DecisionValue(const BinaryMachine &machine, double gamma, std::span<const double> z) {
  double f = machine.bias;
  for (std::size_t s = 0; s < machine.alpha_y.size(); ++s)
    f += machine.alpha_y[s] * std::exp(-gamma * SquaredDistance(machine.support_vectors.row(s), z));
  return f;
}

Prediction SvmPredict(const SvmModel &model, std::span<const double> x) {
  const std::vector<double> z = model.standardizer.Apply(x);
  const std::size_t k = model.classes.size();
  std::vector<int> votes(k, 0);
  std::vector<double> margins(k, 0.0);
  Prediction p;
  for (const BinaryMachine &m : model.pairs) {
    const double f = DecisionValue(m, model.gamma, z);
    p.decision_values.push_back(f);
    const auto winner = static_cast<std::size_t>(f > 0 ? m.positive_class : m.negative_class);
    ++votes[winner];
    margins[winner] += std::abs(f);
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < k; ++c) {
    if (votes[c] > votes[best] || (votes[c] == votes[best] && margins[c] > margins[best]))
      best = c;
  }
  p.label = model.classes[best];
  return p;
}

std::vector<std::string> SvmPredictAll(const SvmModel &model, const Matrix &x) {
  std::vector<std::string> out;
  out.reserve(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) out.push_back(SvmPredict(model, x.row(r)).label);
  return out;
}

GridSearchResult GridSearch(const Matrix &train_x, const std::vector<std::string> &train_y,
                            const Matrix &valid_x, const std::vector<std::string> &valid_y,
                            const SvmGrid &grid, Execution exec) {
  if (grid.c_values.empty() || grid.gamma_scales.empty())
    throw Error(ErrorCode::kInvalidArgument, "grid must be non-empty");
  if (train_x.cols() == 0) throw Error(ErrorCode::kDimensionMismatch, "zero-width features");

  // Validation scoring uses the union of training and validation labels so a
  // class the model never saw still counts as a miss.
  std::vector<std::string> all = train_y;
  all.insert(all.end(), valid_y.begin(), valid_y.end());
  const std::vector<std::string> classes = SortedClasses(all);

  const double dim = static_cast<double>(train_x.cols());
  GridSearchResult result;
  for (double c : grid.c_values)
    for (double s : grid.gamma_scales) result.points.push_back({c, s / dim, 0.0});
  std::vector<int> warnings(result.points.size(), 0);
  std::vector<std::exception_ptr> errors(result.points.size());

  const long n_points = static_cast<long>(result.points.size());
#pragma omp parallel for schedule(dynamic) if (exec == Execution::kParallel)
  for (long p = 0; p < n_points; ++p) {
    GridPoint &pt = result.points[static_cast<std::size_t>(p)];
    try {
      SvmParams params;
      params.c = pt.c;
      params.gamma = pt.gamma;
      const SvmModel model = SvmTrain(train_x, train_y, params);
      pt.valid_uar = Uar(Confusion(valid_y, SvmPredictAll(model, valid_x), classes));
      warnings[static_cast<std::size_t>(p)] = model.ConvergenceWarnings();
    } catch (...) {
      errors[static_cast<std::size_t>(p)] = std::current_exception();
    }
  }
  for (const auto &e : errors)
    if (e) std::rethrow_exception(e);

  const GridPoint *best = nullptr;
  for (const GridPoint &pt : result.points) {
    if (best == nullptr || pt.valid_uar > best->valid_uar ||
        (pt.valid_uar == best->valid_uar &&
         (pt.c < best->c || (pt.c == best->c && pt.gamma < best->gamma))))
      best = &pt;
  }
  result.best_c = best->c;
  result.best_gamma = best->gamma;
  result.valid_uar = best->valid_uar;
  for (int w : warnings) result.convergence_warnings += w;
  return result;
}

std::string SvmModelToJson(const SvmModel &model, std::string_view config_hash) {
  nlohmann::json j;
  j["classes"] = model.classes;
  j["gamma"] = model.gamma;
  j["c"] = model.c;
  j["standardizer"] = {{"mean", model.standardizer.mean}, {"std", model.standardizer.std}};
  if (!config_hash.empty()) j["config_hash"] = std::string(config_hash);
  nlohmann::json pairs = nlohmann::json::array();
  for (const BinaryMachine &m : model.pairs) {
    nlohmann::json sv = nlohmann::json::array();
    for (std::size_t r = 0; r < m.support_vectors.rows(); ++r) {
      auto row = m.support_vectors.row(r);
      sv.push_back(std::vector<double>(row.begin(), row.end()));
    }
    pairs.push_back({{"classes", {m.positive_class, m.negative_class}},
                     {"sv", sv},
                     {"alpha_y", m.alpha_y},
                     {"bias", m.bias},
                     {"iterations", m.iterations},
                     {"converged", m.converged},
                     {"kkt_gap", m.kkt_gap}});
  }
  j["pairs"] = pairs;
  return j.dump(1) + "\n";
}

SvmModel SvmModelFromJson(std::string_view text, std::string *config_hash) {
  SvmModel model;
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    model.classes = j.at("classes").get<std::vector<std::string>>();
    model.gamma = j.at("gamma").get<double>();
    model.c = j.at("c").get<double>();
    model.standardizer.mean = j.at("standardizer").at("mean").get<std::vector<double>>();
    model.standardizer.std = j.at("standardizer").at("std").get<std::vector<double>>();
    if (config_hash != nullptr) *config_hash = j.value("config_hash", std::string());
    for (const auto &p : j.at("pairs")) {
      BinaryMachine m;
      m.positive_class = p.at("classes").at(0).get<int>();
      m.negative_class = p.at("classes").at(1).get<int>();
      for (const auto &row : p.at("sv")) m.support_vectors.AppendRow(row.get<std::vector<double>>());
      m.alpha_y = p.at("alpha_y").get<std::vector<double>>();
      m.bias = p.at("bias").get<double>();
      m.iterations = p.value("iterations", 0L);
      m.converged = p.value("converged", true);
      m.kkt_gap = p.value("kkt_gap", 0.0);
      model.pairs.push_back(std::move(m));
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kParseError, std::string("model JSON: ") + e.what());
  }
  if (model.standardizer.std.size() != model.standardizer.dim())
    throw Error(ErrorCode::kParseError, "standardizer mean/std lengths differ");
  return model;
}

}  // namespace scatser
