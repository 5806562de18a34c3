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


#ifndef QOPT_SOLVERS_H_
#define QOPT_SOLVERS_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qopt/feature_index.h"
#include "qopt/objectives.h"

namespace qopt {

enum class SolverKind { kGreedy, kLazyGreedy, kExact, kTopK };

std::string_view SolverKindName(SolverKind kind);
std::optional<SolverKind> ParseSolverKind(std::string_view name);

struct QuerySolution {
  SolverKind solver = SolverKind::kGreedy;
  ObjectiveSpec spec;
  // Greedy solvers: selection order. Exact: ascending index.
  std::vector<int> selected;
  double objective_value = 0.0;
  std::size_t pos_covered = 0;
  std::size_t neg_covered = 0;
  std::chrono::nanoseconds solve_time{0};

  int char_cost(const CoverageIndex& index) const;
};

// Algorithm: up to k rounds, each adding the feature with the largest
// marginal gain (lowest index on ties) among unselected features that fit
// the character budget. Stops early once the best gain is not positive.
QuerySolution Greedy(const ObjectiveSpec& spec, const CoverageIndex& index,
                     const NmisTable& nmis);

// Same selections as Greedy, re-evaluating only stale heap tops. Requires a
// submodular objective; CAILP throws ErrorCode::kUnsupported.
QuerySolution LazyGreedy(const ObjectiveSpec& spec, const CoverageIndex& index,
                         const NmisTable& nmis);

struct SearchLimits {
  // The instance is accepted when it has at most max_features features or
  // at most max_subsets subsets of size <= k.
  std::size_t max_features = 30;
  double max_subsets = 1e7;
  // Hard cap on explored branch-and-bound nodes.
  std::uint64_t max_nodes = 200'000'000;
};

// Number of subsets of size <= k from n items (as a double; may be inf).
double CountSubsets(std::size_t n, int k);

// Branch-and-bound maximization of Evaluate() over all budget-feasible
// subsets of size <= k. Refuses (ErrorCode::kSolverRefusal) instances
// outside `limits`.
QuerySolution Exact(const ObjectiveSpec& spec, const CoverageIndex& index,
                    const NmisTable& nmis, const SearchLimits& limits = {});

// The k largest weights (ties by index), skipping features that would
// overflow the character budget. objective_value is the CILP value.
QuerySolution TopKBaseline(std::span<const double> weights, int k,
                           const CoverageIndex& index,
                           std::optional<int> char_budget = std::nullopt);

QuerySolution Solve(SolverKind solver, const ObjectiveSpec& spec,
                    const CoverageIndex& index, const NmisTable& nmis,
                    const SearchLimits& limits = {});

}  // namespace qopt

#endif  // QOPT_SOLVERS_H_
