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


#ifndef QOPT_EVAL_H_
#define QOPT_EVAL_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qopt/document.h"
#include "qopt/feature_index.h"
#include "qopt/metrics.h"
#include "qopt/objectives.h"
#include "qopt/ranker.h"
#include "qopt/solvers.h"

namespace qopt {

enum class MethodKind { kFirehose, kTopK, kCilp, kWilp, kCailp };

std::string_view MethodKindName(MethodKind kind);
std::optional<MethodKind> ParseMethodKind(std::string_view name);

struct MethodSpec {
  std::string name;
  MethodKind kind = MethodKind::kCilp;
  int k = 20;
  // nullopt: tune on a validation sub-split (WILP, CAILP).
  std::optional<double> lambda;
  std::optional<int> char_budget;
  SolverKind solver = SolverKind::kGreedy;

  bool is_ilp() const;
  ObjectiveSpec Objective(double lambda_value) const;
};

// Fold assignment over corpus positions (positives first, then negatives).
struct FoldPlan {
  int n_folds = 5;
  std::uint64_t seed = 0;
  std::vector<int> fold_of;

  std::vector<std::size_t> FoldSizes() const;
};

// Seeded uniform partition into n folds whose sizes differ by at most one.
FoldPlan MakeFolds(const LabeledCorpus& corpus, int n, std::uint64_t seed);

// Sub-corpus of the documents whose fold satisfies `keep`, in corpus order.
LabeledCorpus SelectFolds(const LabeledCorpus& corpus, const FoldPlan& plan,
                          const std::function<bool(int)>& keep);

struct PipelineConfig {
  ExtractOptions extract;
  TrainingConfig ranker;
  std::vector<double> lambda_grid = {0, 0.01, 0.1, 0.25, 0.5, 1, 2, 5};
  double validation_fraction = 0.2;
  std::size_t p_at_k = 100;
  // Train the ranker on query-filtered training splits (one model per
  // method) instead of the raw training splits.
  bool train_on_filtered = false;
  SearchLimits limits;
  std::uint64_t seed = 0;
  // Observes every corpus handed to a stage ("query", "tune", "train") for
  // a fold. Used to audit split isolation.
  std::function<void(std::string_view stage, int fold,
                      const LabeledCorpus& corpus)>
      observer;
};

struct LambdaChoice {
  double lambda = 0.0;
  double f1 = 0.0;
};

// Picks the grid value maximizing stage-1 F1 of a query solved on the first
// (1 - validation_fraction) of `split` and retrieved on the rest. Ties keep
// the earlier grid value.
LambdaChoice TuneLambda(const MethodSpec& method, const LabeledCorpus& split,
                        const PipelineConfig& config, std::uint64_t seed);

struct FoldRecord {
  int fold = 0;
  bool ok = false;
  std::string error;
  std::optional<double> lambda;
  std::vector<FeatureKey> query;
  std::string rendered_query;
  double objective = 0.0;
  double solve_seconds = 0.0;  // wall clock; excluded from report JSON
  std::size_t retrieved = 0;
  std::size_t retrieved_pos = 0;
  double recall = 0.0;
  double precision = 0.0;
  std::optional<double> avep;
  double p_at_k = 0.0;
};

struct MethodSummary {
  MethodSpec method;
  std::vector<FoldRecord> folds;
  Interval avg_retrieved;
  Interval recall;
  Interval precision;
  Interval avep;
  Interval p_at_k;
  std::size_t failed_folds = 0;
};

struct EvalReport {
  std::string topic;
  std::size_t num_positives = 0;
  std::size_t num_negatives = 0;
  int n_folds = 0;
  std::uint64_t seed = 0;
  int min_freq = 0;
  std::size_t p_at_k = 0;
  std::vector<MethodSummary> methods;

  const MethodSummary* Find(std::string_view name) const;
};

// Cross-validated two-stage evaluation: for each fold i, queries are solved
// on split i, the ranker is trained on the other splits, and both stages are
// scored on split i. Per-method fold failures are recorded, not thrown.
EvalReport RunPipeline(const LabeledCorpus& corpus,
                       const std::vector<MethodSpec>& methods,
                       const FoldPlan& plan, const PipelineConfig& config);

}  // namespace qopt

#endif  // QOPT_EVAL_H_
