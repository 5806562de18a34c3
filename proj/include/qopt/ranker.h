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


#ifndef QOPT_RANKER_H_
#define QOPT_RANKER_H_

#include <cstddef>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qopt/document.h"
#include "qopt/feature.h"
#include "qopt/feature_index.h"

namespace qopt {

struct TrainingConfig {
  double l2 = 1e-4;
  double initial_step = 1.0;
  // Backtracking shrink factor and Armijo sufficient-decrease constant.
  double backtrack = 0.5;
  double armijo = 1e-4;
  int max_epochs = 300;
  double grad_tol = 1e-6;
  double positive_weight = 1.0;
  // Hashtags never used as ranker features (typically the labeling set).
  std::set<std::string> excluded_hashtags;
};

// Binary bag-of-features design matrix. Each row lists the column indices of
// the features present in one document, sorted ascending.
struct DesignMatrix {
  std::vector<FeatureKey> vocabulary;
  std::vector<std::vector<int>> rows;
  std::vector<double> labels;          // 1 positive, 0 negative
  std::vector<double> sample_weights;  // per-row loss weight
};

DesignMatrix BuildDesignMatrix(const LabeledCorpus& corpus,
                               const TrainingConfig& config);

// Mean weighted logistic loss plus (l2 / 2) * ||w||^2. Parameters are the
// column weights followed by the (unregularized) bias.
class LogisticLoss {
 public:
  LogisticLoss(const DesignMatrix& data, double l2);

  std::size_t num_params() const { return num_cols_ + 1; }
  double Value(std::span<const double> params) const;
  double ValueAndGradient(std::span<const double> params,
                          std::span<double> grad) const;

 private:
  const DesignMatrix& data_;
  std::size_t num_cols_;
  double l2_;
  double weight_sum_;
};

struct RankerModel {
  std::vector<FeatureKey> vocabulary;
  std::vector<double> weights;
  double bias = 0.0;
  TrainingConfig config;
  int epochs_run = 0;
  double final_loss = 0.0;

  // Rebuilds the key -> column lookup; call after editing `vocabulary`.
  void Reindex();
  double Weight(const FeatureKey& key) const;
  double Margin(const Document& doc) const;

 private:
  std::unordered_map<FeatureKey, std::size_t, FeatureKeyHash> lookup_;
};

// Full-batch gradient descent from zero, diagonally preconditioned, with a
// backtracking (Armijo) line search.
// Throws DataError on a single-class corpus and kNumeric on divergence.
RankerModel Train(const LabeledCorpus& corpus, const TrainingConfig& config);

double Sigmoid(double z);

// Relevance probability in (0, 1).
double Score(const RankerModel& model, const Document& doc);

struct ScoredDocument {
  std::string id;
  double score = 0.0;
};

// Descending score, ties by ascending id.
std::vector<ScoredDocument> Rank(const RankerModel& model,
                                 std::span<const Document> docs);

// Weight of every index feature, 0 for features outside the vocabulary.
std::vector<double> ExportWeights(const RankerModel& model,
                                  const CoverageIndex& index);

nlohmann::json ModelToJson(const RankerModel& model);
RankerModel ModelFromJson(const nlohmann::json& j);

}  // namespace qopt

#endif  // QOPT_RANKER_H_
