// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qopt/ranker.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <nlohmann/json.hpp>

#include "qopt/errors.h"

namespace qopt {
namespace {

// log(1 + exp(z)) without overflow.
double Softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

double SquaredNorm(std::span<const double> v) {
  return std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
}

template <typename Fn>
void ForEachRankerFeature(const Document& doc, const TrainingConfig& config,
                          Fn&& fn) {
  ForEachFeature(doc, [&](FeatureKind kind, const std::string& value) {
    if (kind == FeatureKind::kHashtag &&
        config.excluded_hashtags.contains(value)) {
      return;
    }
    fn(kind, value);
  });
}

}  // namespace

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

DesignMatrix BuildDesignMatrix(const LabeledCorpus& corpus,
                               const TrainingConfig& config) {
  std::map<FeatureKey, int> columns;
  auto collect = [&](const std::vector<Document>& docs) {
    for (const Document& doc : docs) {
      ForEachRankerFeature(doc, config,
                           [&](FeatureKind kind, const std::string& value) {
                             columns.emplace(FeatureKey{kind, value}, 0);
                           });
    }
  };
  collect(corpus.positives);
  collect(corpus.negatives);

  DesignMatrix m;
  m.vocabulary.reserve(columns.size());
  for (auto& [key, col] : columns) {
    col = static_cast<int>(m.vocabulary.size());
    m.vocabulary.push_back(key);
  }
  auto add_rows = [&](const std::vector<Document>& docs, double label,
                      double weight) {
    FeatureKey probe;
    for (const Document& doc : docs) {
      std::vector<int> row;
      ForEachRankerFeature(doc, config,
                           [&](FeatureKind kind, const std::string& value) {
                             probe.kind = kind;
                             probe.value = value;
                             row.push_back(columns.at(probe));
                           });
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
      m.rows.push_back(std::move(row));
      m.labels.push_back(label);
      m.sample_weights.push_back(weight);
    }
  };
  add_rows(corpus.positives, 1.0, config.positive_weight);
  add_rows(corpus.negatives, 0.0, 1.0);
  return m;
}

LogisticLoss::LogisticLoss(const DesignMatrix& data, double l2)
    : data_(data),
      num_cols_(data.vocabulary.size()),
      l2_(l2),
      weight_sum_(std::accumulate(data.sample_weights.begin(),
                                  data.sample_weights.end(), 0.0)) {}

double LogisticLoss::Value(std::span<const double> params) const {
  const double bias = params[num_cols_];
  double loss = 0.0;
  for (std::size_t i = 0; i < data_.rows.size(); ++i) {
    double z = bias;
    for (int c : data_.rows[i]) z += params[c];
    loss += data_.sample_weights[i] * (Softplus(z) - data_.labels[i] * z);
  }
  return loss / weight_sum_ +
         0.5 * l2_ * SquaredNorm(params.first(num_cols_));
}

double LogisticLoss::ValueAndGradient(std::span<const double> params,
                                      std::span<double> grad) const {
  const double bias = params[num_cols_];
  std::fill(grad.begin(), grad.end(), 0.0);
  double loss = 0.0;
  for (std::size_t i = 0; i < data_.rows.size(); ++i) {
    double z = bias;
    for (int c : data_.rows[i]) z += params[c];
    const double w = data_.sample_weights[i];
    loss += w * (Softplus(z) - data_.labels[i] * z);
    const double residual = w * (Sigmoid(z) - data_.labels[i]);
    for (int c : data_.rows[i]) grad[c] += residual;
    grad[num_cols_] += residual;
  }
  for (double& g : grad) g /= weight_sum_;
  for (std::size_t c = 0; c < num_cols_; ++c) grad[c] += l2_ * params[c];
  return loss / weight_sum_ +
         0.5 * l2_ * SquaredNorm(params.first(num_cols_));
}

void RankerModel::Reindex() {
  lookup_.clear();
  for (std::size_t c = 0; c < vocabulary.size(); ++c) {
    lookup_.emplace(vocabulary[c], c);
  }
}

double RankerModel::Weight(const FeatureKey& key) const {
  auto it = lookup_.find(key);
  return it == lookup_.end() ? 0.0 : weights[it->second];
}

double RankerModel::Margin(const Document& doc) const {
  double z = bias;
  FeatureKey probe;
  ForEachFeature(doc, [&](FeatureKind kind, const std::string& value) {
    probe.kind = kind;
    probe.value = value;
    z += Weight(probe);
  });
  return z;
}

RankerModel Train(const LabeledCorpus& corpus, const TrainingConfig& config) {
  if (corpus.positives.empty() || corpus.negatives.empty()) {
    throw DataError("ranker training needs both positive and negative "
                    "documents (got " + std::to_string(corpus.positives.size()) +
                    " / " + std::to_string(corpus.negatives.size()) + ")");
  }
  if (!(config.l2 >= 0) || !(config.initial_step > 0) ||
      !(config.backtrack > 0 && config.backtrack < 1) ||
      !(config.positive_weight > 0)) {
    throw UsageError("invalid ranker training configuration");
  }
  const DesignMatrix data = BuildDesignMatrix(corpus, config);
  const LogisticLoss objective(data, config.l2);

  // Jacobi preconditioner: a bound on the diagonal of the Hessian. Binary
  // features give 0.25 * weighted column frequency, plus the L2 term.
  std::vector<double> inv_diag(objective.num_params(), 0.0);
  double weight_sum = 0;
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    weight_sum += data.sample_weights[i];
    for (int col : data.rows[i]) inv_diag[col] += data.sample_weights[i];
  }
  for (std::size_t p = 0; p + 1 < inv_diag.size(); ++p) {
    inv_diag[p] = 1.0 / (0.25 * inv_diag[p] / weight_sum + config.l2);
  }
  inv_diag.back() = 4.0;

  std::vector<double> params(objective.num_params(), 0.0);
  std::vector<double> grad(params.size()), trial(params.size());
  double step = config.initial_step;
  double loss = objective.ValueAndGradient(params, grad);
  int epoch = 0;
  for (; epoch < config.max_epochs; ++epoch) {
    if (std::sqrt(SquaredNorm(grad)) < config.grad_tol) break;
    double decrease = 0;  // g' D^-1 g
    for (std::size_t p = 0; p < params.size(); ++p) {
      decrease += grad[p] * grad[p] * inv_diag[p];
    }
    double trial_loss = loss;
    bool accepted = false;
    for (double t = step; t > 1e-20; t *= config.backtrack) {
      for (std::size_t p = 0; p < params.size(); ++p) {
        trial[p] = params[p] - t * inv_diag[p] * grad[p];
      }
      trial_loss = objective.Value(trial);
      if (trial_loss <= loss - config.armijo * t * decrease) {
        accepted = true;
        step = 2 * t;
        break;
      }
    }
    if (!accepted) break;
    params.swap(trial);
    loss = objective.ValueAndGradient(params, grad);
    if (!std::isfinite(loss)) {
      throw Error(ErrorCode::kNumeric, "ranker training diverged");
    }
  }
  for (double p : params) {
    if (!std::isfinite(p)) {
      throw Error(ErrorCode::kNumeric, "ranker training produced NaN/inf");
    }
  }

  RankerModel model;
  model.vocabulary = data.vocabulary;
  model.bias = params.back();
  params.pop_back();
  model.weights = std::move(params);
  model.config = config;
  model.epochs_run = epoch;
  model.final_loss = loss;
  model.Reindex();
  return model;
}

double Score(const RankerModel& model, const Document& doc) {
  return Sigmoid(model.Margin(doc));
}

std::vector<ScoredDocument> Rank(const RankerModel& model,
                                 std::span<const Document> docs) {
  std::vector<ScoredDocument> ranked;
  ranked.reserve(docs.size());
  for (const Document& doc : docs) ranked.push_back({doc.id, Score(model, doc)});
  std::sort(ranked.begin(), ranked.end(),
            [](const ScoredDocument& a, const ScoredDocument& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.id < b.id;
            });
  return ranked;
}

std::vector<double> ExportWeights(const RankerModel& model,
                                  const CoverageIndex& index) {
  std::vector<double> weights(index.num_features());
  for (std::size_t j = 0; j < weights.size(); ++j) {
    weights[j] = model.Weight(index.feature(j).key());
  }
  return weights;
}

nlohmann::json ModelToJson(const RankerModel& model) {
  nlohmann::json vocab = nlohmann::json::array();
  for (const FeatureKey& key : model.vocabulary) {
    vocab.push_back({FeatureKindName(key.kind), key.value});
  }
  const TrainingConfig& c = model.config;
  return {
      {"vocabulary", vocab},
      {"weights", model.weights},
      {"bias", model.bias},
      {"epochs_run", model.epochs_run},
      {"final_loss", model.final_loss},
      {"config",
       {{"l2", c.l2},
        {"initial_step", c.initial_step},
        {"backtrack", c.backtrack},
        {"armijo", c.armijo},
        {"max_epochs", c.max_epochs},
        {"grad_tol", c.grad_tol},
        {"positive_weight", c.positive_weight},
        {"excluded_hashtags", c.excluded_hashtags}}},
  };
}

RankerModel ModelFromJson(const nlohmann::json& j) {
  try {
    RankerModel model;
    for (const auto& entry : j.at("vocabulary")) {
      auto kind = ParseFeatureKind(entry.at(0).get<std::string>());
      if (!kind) throw DataError("unknown feature kind in model vocabulary");
      model.vocabulary.push_back({*kind, entry.at(1).get<std::string>()});
    }
    model.weights = j.at("weights").get<std::vector<double>>();
    if (model.weights.size() != model.vocabulary.size()) {
      throw DataError("model weights and vocabulary sizes differ");
    }
    model.bias = j.at("bias").get<double>();
    model.epochs_run = j.at("epochs_run").get<int>();
    model.final_loss = j.at("final_loss").get<double>();
    const auto& c = j.at("config");
    model.config.l2 = c.at("l2").get<double>();
    model.config.initial_step = c.at("initial_step").get<double>();
    model.config.backtrack = c.at("backtrack").get<double>();
    model.config.armijo = c.at("armijo").get<double>();
    model.config.max_epochs = c.at("max_epochs").get<int>();
    model.config.grad_tol = c.at("grad_tol").get<double>();
    model.config.positive_weight = c.at("positive_weight").get<double>();
    model.config.excluded_hashtags =
        c.at("excluded_hashtags").get<std::set<std::string>>();
    model.Reindex();
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed ranker model: ") + e.what());
  }
}

}  // namespace qopt
