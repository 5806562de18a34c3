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


#ifndef QOPT_OBJECTIVES_H_
#define QOPT_OBJECTIVES_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qopt/feature_index.h"

namespace qopt {

// CILP: positives covered (raw count).
// WILP: positives covered / |P| + lambda * sum of selected NMIS scores.
// CAILP: positives covered / |P| - lambda * negatives covered / |N|.
enum class ObjectiveKind { kCilp, kWilp, kCailp };

std::string_view ObjectiveKindName(ObjectiveKind kind);
std::optional<ObjectiveKind> ParseObjectiveKind(std::string_view name);

struct ObjectiveSpec {
  ObjectiveKind kind = ObjectiveKind::kCilp;
  int k = 20;
  double lambda = 0.0;  // not read by CILP
  std::optional<int> char_budget;

  // Throws UsageError unless k >= 0, lambda >= 0 and the budget is positive.
  void Validate() const;
};

// Normalized mutual information between feature presence and the topic label
// computed from a 2x2 contingency table: I(X;Y) / min(H(X), H(Y)), with
// 0 log 0 = 0 and a score of 0 whenever either marginal entropy vanishes.
double NmisFromCounts(std::size_t tp, std::size_t fp, std::size_t fn,
                      std::size_t tn);

double Nmis(const CoverageIndex& index, std::size_t j);

class NmisTable {
 public:
  NmisTable() = default;
  explicit NmisTable(std::vector<double> scores) : scores_(std::move(scores)) {}

  double operator[](std::size_t j) const { return scores_[j]; }
  std::size_t size() const { return scores_.size(); }
  std::span<const double> scores() const { return scores_; }

 private:
  std::vector<double> scores_;
};

NmisTable BuildNmisTable(const CoverageIndex& index);

// Objective value from aggregate quantities. `nmis_sum` is only read by WILP.
double ObjectiveValue(const ObjectiveSpec& spec, CoverageCount covered,
                      double nmis_sum, std::size_t n_pos, std::size_t n_neg);

// Increase of the objective when a feature newly covers `gain` documents and
// carries NMIS score `nmis`.
double MarginalGain(const ObjectiveSpec& spec, CoverageCount gain, double nmis,
                    std::size_t n_pos, std::size_t n_neg);

// Objective of a feature subset. NMIS terms are summed in ascending index
// order so the value does not depend on the order of `selected`.
double Evaluate(const ObjectiveSpec& spec, const CoverageIndex& index,
                const NmisTable& nmis, std::span<const int> selected);

}  // namespace qopt

#endif  // QOPT_OBJECTIVES_H_
