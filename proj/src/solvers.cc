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


#include "qopt/solvers.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

#include "qopt/errors.h"

namespace qopt {
namespace {

using Clock = std::chrono::steady_clock;

class Timer {
 public:
  std::chrono::nanoseconds Elapsed() const { return Clock::now() - start_; }

 private:
  Clock::time_point start_ = Clock::now();
};

bool NeedsNegatives(const ObjectiveSpec& spec) {
  return spec.kind == ObjectiveKind::kCailp;
}

bool FitsBudget(const ObjectiveSpec& spec, int used, int cost) {
  return !spec.char_budget || used + cost <= *spec.char_budget;
}

// Incremental coverage state shared by the solvers.
struct CoverState {
  DenseBitset pos;
  DenseBitset neg;
  int used_chars = 0;

  explicit CoverState(const CoverageIndex& index)
      : pos(index.n_pos()), neg(index.n_neg()) {}

  CoverageCount Gain(const CoverageIndex& index, std::size_t j,
                     bool with_negatives) const {
    return {index.pos_cov(j).CountNotIn(pos),
            with_negatives ? index.neg_cov(j).CountNotIn(neg) : 0};
  }

  void Add(const CoverageIndex& index, std::size_t j) {
    index.pos_cov(j).AddTo(pos);
    index.neg_cov(j).AddTo(neg);
    used_chars += index.feature(j).char_cost;
  }
};

void Finish(QuerySolution& solution, const CoverageIndex& index,
            const NmisTable& nmis, const Timer& timer) {
  const CoverageCount covered = index.Coverage(solution.selected);
  solution.pos_covered = covered.pos;
  solution.neg_covered = covered.neg;
  solution.objective_value =
      Evaluate(solution.spec, index, nmis, solution.selected);
  solution.solve_time = timer.Elapsed();
}

// Depth-first branch and bound over features in decreasing standalone-gain
// order. Children of a node add one feature from the remaining suffix, so
// every subset is reached at most once.
class BranchAndBound {
 public:
  BranchAndBound(const ObjectiveSpec& spec, const CoverageIndex& index,
                 const NmisTable& nmis, const SearchLimits& limits)
      : spec_(spec), index_(index), nmis_(nmis), limits_(limits) {}

  std::vector<int> Run(std::vector<int> incumbent, double incumbent_value) {
    best_ = std::move(incumbent);
    best_value_ = incumbent_value;

    CoverState root(index_);
    for (std::size_t j = 0; j < index_.num_features(); ++j) {
      const double ub = UpperGain(root, j);
      if (ub > 0 && FitsBudget(spec_, 0, index_.feature(j).char_cost)) {
        order_.push_back(static_cast<int>(j));
        root_gain_.push_back(ub);
      }
    }
    std::vector<std::size_t> perm(order_.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
      return root_gain_[a] > root_gain_[b];
    });
    std::vector<int> sorted;
    for (std::size_t p : perm) sorted.push_back(order_[p]);
    order_ = std::move(sorted);

    std::vector<int> current;
    Search(root, 0, CoverageCount{}, 0.0, current);
    std::sort(best_.begin(), best_.end());
    return best_;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  // Gain bound for adding j: exact gain for CILP/WILP, positive part only
  // for CAILP (the penalty can only lower the true gain).
  double UpperGain(const CoverState& state, std::size_t j) const {
    const CoverageCount g{index_.pos_cov(j).CountNotIn(state.pos), 0};
    ObjectiveSpec bound_spec = spec_;
    if (spec_.kind == ObjectiveKind::kCailp) bound_spec.lambda = 0.0;
    return MarginalGain(bound_spec, g, nmis_[j], index_.n_pos(),
                        index_.n_neg());
  }

  // suffix[i] = sum of the `r` largest positive gains in gains[i..].
  static std::vector<double> SuffixTopSums(const std::vector<double>& gains,
                                           std::size_t r) {
    std::vector<double> suffix(gains.size() + 1, 0.0);
    std::priority_queue<double, std::vector<double>, std::greater<>> top;
    double sum = 0.0;
    for (std::size_t i = gains.size(); i-- > 0;) {
      if (gains[i] > 0) {
        if (top.size() < r) {
          top.push(gains[i]);
          sum += gains[i];
        } else if (r > 0 && gains[i] > top.top()) {
          sum += gains[i] - top.top();
          top.pop();
          top.push(gains[i]);
        }
      }
      suffix[i] = sum;
    }
    return suffix;
  }

  void Search(const CoverState& state, std::size_t start,
              CoverageCount covered, double nmis_sum,
              std::vector<int>& current) {
    if (++nodes_ > limits_.max_nodes) {
      throw Error(ErrorCode::kSolverRefusal,
                  "limits exceeded: branch-and-bound node limit " +
                      std::to_string(limits_.max_nodes) + " reached");
    }
    const double value = ObjectiveValue(spec_, covered, nmis_sum,
                                        index_.n_pos(), index_.n_neg());
    if (value > best_value_) {
      best_value_ = value;
      best_ = current;
    }
    const std::size_t depth = current.size();
    if (depth >= static_cast<std::size_t>(spec_.k) || start >= order_.size()) {
      return;
    }
    const std::size_t slots = static_cast<std::size_t>(spec_.k) - depth;

    std::vector<double> gains(order_.size() - start);
    for (std::size_t i = start; i < order_.size(); ++i) {
      gains[i - start] = UpperGain(state, order_[i]);
    }
    const std::vector<double> bound = SuffixTopSums(gains, slots);
    const bool with_neg = NeedsNegatives(spec_);
    for (std::size_t i = start; i < order_.size(); ++i) {
      if (value + bound[i - start] <= best_value_ + kPruneSlack) return;
      const double g = gains[i - start];
      const std::size_t j = order_[i];
      if (g <= 0 ||
          !FitsBudget(spec_, state.used_chars, index_.feature(j).char_cost)) {
        continue;
      }
      const CoverageCount step = state.Gain(index_, j, with_neg);
      CoverState child = state;
      child.Add(index_, j);
      current.push_back(static_cast<int>(j));
      Search(child, i + 1, {covered.pos + step.pos, covered.neg + step.neg},
             nmis_sum + nmis_[j], current);
      current.pop_back();
    }
  }

  static constexpr double kPruneSlack = 1e-13;

  const ObjectiveSpec& spec_;
  const CoverageIndex& index_;
  const NmisTable& nmis_;
  const SearchLimits& limits_;
  std::vector<int> order_;
  std::vector<double> root_gain_;
  std::vector<int> best_;
  double best_value_ = 0.0;
  std::uint64_t nodes_ = 0;
};

}  // namespace

std::string_view SolverKindName(SolverKind kind) {
  switch (kind) {
    case SolverKind::kGreedy:
      return "greedy";
    case SolverKind::kLazyGreedy:
      return "lazy";
    case SolverKind::kExact:
      return "exact";
    case SolverKind::kTopK:
      return "topk";
  }
  return "?";
}

std::optional<SolverKind> ParseSolverKind(std::string_view name) {
  for (auto kind : {SolverKind::kGreedy, SolverKind::kLazyGreedy,
                    SolverKind::kExact, SolverKind::kTopK}) {
    if (SolverKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

int QuerySolution::char_cost(const CoverageIndex& index) const {
  int total = 0;
  for (int j : selected) total += index.feature(j).char_cost;
  return total;
}

QuerySolution Greedy(const ObjectiveSpec& spec, const CoverageIndex& index,
                     const NmisTable& nmis) {
  const Timer timer;
  spec.Validate();
  QuerySolution solution;
  solution.solver = SolverKind::kGreedy;
  solution.spec = spec;
  const std::size_t n = index.num_features();
  const bool with_neg = NeedsNegatives(spec);
  CoverState state(index);
  std::vector<char> taken(n, 0);

  for (int round = 0; round < spec.k; ++round) {
    std::optional<std::size_t> best;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (taken[j] ||
          !FitsBudget(spec, state.used_chars, index.feature(j).char_cost)) {
        continue;
      }
      const double gain = MarginalGain(spec, state.Gain(index, j, with_neg),
                                       nmis[j], index.n_pos(), index.n_neg());
      if (gain > best_gain) {
        best_gain = gain;
        best = j;
      }
    }
    if (!best || best_gain <= 0) break;
    taken[*best] = 1;
    state.Add(index, *best);
    solution.selected.push_back(static_cast<int>(*best));
  }
  Finish(solution, index, nmis, timer);
  return solution;
}

QuerySolution LazyGreedy(const ObjectiveSpec& spec, const CoverageIndex& index,
                         const NmisTable& nmis) {
  const Timer timer;
  spec.Validate();
  if (spec.kind == ObjectiveKind::kCailp) {
    throw Error(ErrorCode::kUnsupported,
                "lazy greedy requires a submodular objective; cailp is not");
  }
  QuerySolution solution;
  solution.solver = SolverKind::kLazyGreedy;
  solution.spec = spec;

  struct Entry {
    double gain;
    std::size_t j;
    int round;
  };
  // Highest gain first, lowest index among equal gains.
  auto lower = [](const Entry& a, const Entry& b) {
    return a.gain < b.gain || (a.gain == b.gain && a.j > b.j);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(lower)> heap(lower);

  CoverState state(index);
  auto gain_of = [&](std::size_t j) {
    return MarginalGain(spec, state.Gain(index, j, false), nmis[j],
                        index.n_pos(), index.n_neg());
  };
  if (spec.k > 0) {
    for (std::size_t j = 0; j < index.num_features(); ++j) {
      if (FitsBudget(spec, 0, index.feature(j).char_cost)) {
        heap.push({gain_of(j), j, 0});
      }
    }
  }
  for (int round = 0; round < spec.k; ++round) {
    std::optional<Entry> chosen;
    while (!heap.empty()) {
      Entry top = heap.top();
      heap.pop();
      // Budget use only grows, so an overflowing feature never fits again.
      if (!FitsBudget(spec, state.used_chars, index.feature(top.j).char_cost)) {
        continue;
      }
      if (top.round == round) {
        chosen = top;
        break;
      }
      heap.push({gain_of(top.j), top.j, round});
    }
    if (!chosen || chosen->gain <= 0) break;
    state.Add(index, chosen->j);
    solution.selected.push_back(static_cast<int>(chosen->j));
  }
  Finish(solution, index, nmis, timer);
  return solution;
}

double CountSubsets(std::size_t n, int k) {
  double total = 0.0;
  double term = 1.0;  // C(n, s)
  const std::size_t limit = std::min<std::size_t>(n, std::max(k, 0));
  for (std::size_t s = 0; s <= limit; ++s) {
    total += term;
    term = term * static_cast<double>(n - s) / static_cast<double>(s + 1);
  }
  return total;
}

QuerySolution Exact(const ObjectiveSpec& spec, const CoverageIndex& index,
                    const NmisTable& nmis, const SearchLimits& limits) {
  const Timer timer;
  spec.Validate();
  const std::size_t n = index.num_features();
  const double subsets = CountSubsets(n, spec.k);
  if (n > limits.max_features && subsets > limits.max_subsets) {
    std::ostringstream msg;
    msg << "limits exceeded: |F| = " << n << " > " << limits.max_features
        << " and subsets of size <= " << spec.k << " = " << subsets << " > "
        << limits.max_subsets;
    throw Error(ErrorCode::kSolverRefusal, msg.str());
  }

  const QuerySolution greedy = Greedy(spec, index, nmis);
  BranchAndBound search(spec, index, nmis, limits);
  std::vector<int> best = search.Run(greedy.selected, greedy.objective_value);

  QuerySolution solution;
  solution.solver = SolverKind::kExact;
  solution.spec = spec;
  solution.selected = std::move(best);
  Finish(solution, index, nmis, timer);
  if (solution.objective_value < greedy.objective_value) {
    // Rounding in the incremental search value; keep the incumbent.
    solution.selected = greedy.selected;
    std::sort(solution.selected.begin(), solution.selected.end());
    Finish(solution, index, nmis, timer);
  }
  return solution;
}

QuerySolution TopKBaseline(std::span<const double> weights, int k,
                           const CoverageIndex& index,
                           std::optional<int> char_budget) {
  const Timer timer;
  if (weights.size() != index.num_features()) {
    throw UsageError("topk: expected " + std::to_string(index.num_features()) +
                     " weights, got " + std::to_string(weights.size()));
  }
  QuerySolution solution;
  solution.solver = SolverKind::kTopK;
  solution.spec = ObjectiveSpec{
      .kind = ObjectiveKind::kCilp, .k = k, .char_budget = char_budget};
  solution.spec.Validate();
  std::vector<int> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return weights[a] > weights[b]; });
  int used = 0;
  for (int j : order) {
    if (static_cast<int>(solution.selected.size()) >= k) break;
    const int cost = index.feature(j).char_cost;
    if (!FitsBudget(solution.spec, used, cost)) continue;
    used += cost;
    solution.selected.push_back(j);
  }
  Finish(solution, index, NmisTable(std::vector<double>(index.num_features())),
         timer);
  return solution;
}

QuerySolution Solve(SolverKind solver, const ObjectiveSpec& spec,
                    const CoverageIndex& index, const NmisTable& nmis,
                    const SearchLimits& limits) {
  switch (solver) {
    case SolverKind::kGreedy:
      return Greedy(spec, index, nmis);
    case SolverKind::kLazyGreedy:
      return LazyGreedy(spec, index, nmis);
    case SolverKind::kExact:
      return Exact(spec, index, nmis, limits);
    case SolverKind::kTopK:
      break;
  }
  throw UsageError("topk is not an objective solver");
}

}  // namespace qopt
