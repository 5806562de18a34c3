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


#include "qopt/eval.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "qopt/errors.h"
#include "qopt/query_engine.h"
#include "qopt/random.h"

namespace qopt {
namespace {

// Positions 0..size-1 of the corpus (positives first), ordered by document id
// and then shuffled, so assignments depend on ids rather than input order.
std::vector<std::size_t> ShuffledPositions(const LabeledCorpus& corpus,
                                           std::uint64_t seed) {
  const std::size_t n_pos = corpus.positives.size();
  auto id_at = [&](std::size_t p) -> const std::string& {
    return p < n_pos ? corpus.positives[p].id : corpus.negatives[p - n_pos].id;
  };
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return id_at(a) < id_at(b); });
  Rng rng(seed);
  rng.Shuffle(order);
  return order;
}

LabeledCorpus SelectPositions(const LabeledCorpus& corpus,
                              const std::vector<char>& keep) {
  LabeledCorpus out;
  out.topic = corpus.topic;
  out.labeling_hashtags = corpus.labeling_hashtags;
  const std::size_t n_pos = corpus.positives.size();
  for (std::size_t i = 0; i < n_pos; ++i) {
    if (keep[i]) out.positives.push_back(corpus.positives[i]);
  }
  for (std::size_t i = 0; i < corpus.negatives.size(); ++i) {
    if (keep[n_pos + i]) out.negatives.push_back(corpus.negatives[i]);
  }
  return out;
}

LabeledCorpus FilterByQuery(const LabeledCorpus& corpus, const Query& query) {
  LabeledCorpus out;
  out.topic = corpus.topic;
  out.labeling_hashtags = corpus.labeling_hashtags;
  for (std::size_t i : MatchDocuments(query, corpus.positives)) {
    out.positives.push_back(corpus.positives[i]);
  }
  for (std::size_t i : MatchDocuments(query, corpus.negatives)) {
    out.negatives.push_back(corpus.negatives[i]);
  }
  return out;
}

RetrievalResult RetrieveAll(const LabeledCorpus& corpus) {
  RetrievalResult result;
  for (const Document& d : corpus.positives) result.retrieved_ids.push_back(d.id);
  for (const Document& d : corpus.negatives) result.retrieved_ids.push_back(d.id);
  result.retrieved_pos = corpus.positives.size();
  result.retrieved_neg = corpus.negatives.size();
  return result;
}

std::uint64_t FoldSeed(std::uint64_t seed, int fold) {
  return seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(fold) + 1;
}

void Notify(const PipelineConfig& config, std::string_view stage, int fold,
            const LabeledCorpus& corpus) {
  if (config.observer) config.observer(stage, fold, corpus);
}

void Aggregate(MethodSummary& summary) {
  std::vector<double> retrieved, recall, precision, avep, p_at_k;
  for (const FoldRecord& r : summary.folds) {
    if (!r.ok) {
      ++summary.failed_folds;
      continue;
    }
    retrieved.push_back(static_cast<double>(r.retrieved));
    recall.push_back(r.recall);
    precision.push_back(r.precision);
    p_at_k.push_back(r.p_at_k);
    if (r.avep) avep.push_back(*r.avep);
  }
  summary.avg_retrieved = ConfidenceInterval(retrieved);
  summary.recall = ConfidenceInterval(recall);
  summary.precision = ConfidenceInterval(precision);
  summary.avep = ConfidenceInterval(avep);
  summary.p_at_k = ConfidenceInterval(p_at_k);
}

}  // namespace

std::string_view MethodKindName(MethodKind kind) {
  switch (kind) {
    case MethodKind::kFirehose:
      return "firehose";
    case MethodKind::kTopK:
      return "topk";
    case MethodKind::kCilp:
      return "cilp";
    case MethodKind::kWilp:
      return "wilp";
    case MethodKind::kCailp:
      return "cailp";
  }
  return "?";
}

std::optional<MethodKind> ParseMethodKind(std::string_view name) {
  for (auto kind : {MethodKind::kFirehose, MethodKind::kTopK, MethodKind::kCilp,
                    MethodKind::kWilp, MethodKind::kCailp}) {
    if (MethodKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

bool MethodSpec::is_ilp() const {
  return kind == MethodKind::kCilp || kind == MethodKind::kWilp ||
         kind == MethodKind::kCailp;
}

ObjectiveSpec MethodSpec::Objective(double lambda_value) const {
  ObjectiveSpec spec;
  switch (kind) {
    case MethodKind::kWilp:
      spec.kind = ObjectiveKind::kWilp;
      break;
    case MethodKind::kCailp:
      spec.kind = ObjectiveKind::kCailp;
      break;
    case MethodKind::kCilp:
      spec.kind = ObjectiveKind::kCilp;
      break;
    default:
      throw UsageError("method '" + name + "' has no objective");
  }
  spec.k = k;
  spec.lambda = lambda_value;
  spec.char_budget = char_budget;
  return spec;
}

std::vector<std::size_t> FoldPlan::FoldSizes() const {
  std::vector<std::size_t> sizes(n_folds, 0);
  for (int f : fold_of) ++sizes[f];
  return sizes;
}

FoldPlan MakeFolds(const LabeledCorpus& corpus, int n, std::uint64_t seed) {
  if (n < 2) throw UsageError("number of folds must be at least 2");
  if (corpus.size() < static_cast<std::size_t>(n)) {
    throw DataError("corpus has " + std::to_string(corpus.size()) +
                    " documents, fewer than " + std::to_string(n) + " folds");
  }
  FoldPlan plan;
  plan.n_folds = n;
  plan.seed = seed;
  plan.fold_of.assign(corpus.size(), 0);
  const std::vector<std::size_t> order = ShuffledPositions(corpus, seed);
  for (std::size_t p = 0; p < order.size(); ++p) {
    plan.fold_of[order[p]] = static_cast<int>(p % static_cast<std::size_t>(n));
  }
  return plan;
}

LabeledCorpus SelectFolds(const LabeledCorpus& corpus, const FoldPlan& plan,
                          const std::function<bool(int)>& keep) {
  std::vector<char> mask(corpus.size());
  for (std::size_t p = 0; p < mask.size(); ++p) mask[p] = keep(plan.fold_of[p]);
  return SelectPositions(corpus, mask);
}

LambdaChoice TuneLambda(const MethodSpec& method, const LabeledCorpus& split,
                        const PipelineConfig& config, std::uint64_t seed) {
  if (config.lambda_grid.empty()) throw UsageError("lambda grid is empty");
  if (!(config.validation_fraction > 0 && config.validation_fraction < 1)) {
    throw UsageError("validation_fraction must lie in (0, 1)");
  }
  const std::vector<std::size_t> order = ShuffledPositions(split, seed);
  const auto n_valid = static_cast<std::size_t>(
      std::llround(config.validation_fraction * static_cast<double>(order.size())));
  std::vector<char> in_opt(split.size(), 1);
  for (std::size_t p = 0; p < n_valid && p < order.size(); ++p) {
    in_opt[order[p]] = 0;
  }
  std::vector<char> in_valid(split.size());
  for (std::size_t p = 0; p < in_valid.size(); ++p) in_valid[p] = !in_opt[p];
  const LabeledCorpus opt = SelectPositions(split, in_opt);
  const LabeledCorpus valid = SelectPositions(split, in_valid);

  const CoverageIndex index = ExtractFeatures(opt, config.extract);
  const NmisTable nmis = BuildNmisTable(index);
  LambdaChoice best{.lambda = config.lambda_grid.front(), .f1 = -1.0};
  for (double lambda : config.lambda_grid) {
    const QuerySolution solution = Solve(method.solver, method.Objective(lambda),
                                         index, nmis, config.limits);
    const RetrievalResult result = Retrieve(MakeQuery(solution, index), valid);
    const Stage1Metrics m = ComputeStage1(result, valid);
    const double f1 = F1Score(m.precision, m.recall);
    if (f1 > best.f1) best = {lambda, f1};
  }
  return best;
}

const MethodSummary* EvalReport::Find(std::string_view name) const {
  for (const MethodSummary& m : methods) {
    if (m.method.name == name) return &m;
  }
  return nullptr;
}

EvalReport RunPipeline(const LabeledCorpus& corpus,
                       const std::vector<MethodSpec>& methods,
                       const FoldPlan& plan, const PipelineConfig& config) {
  if (plan.fold_of.size() != corpus.size()) {
    throw UsageError("fold plan does not match the corpus");
  }
  for (const MethodSpec& m : methods) {
    if (m.k < 1) throw UsageError("method '" + m.name + "': K must be >= 1");
    if (m.is_ilp()) m.Objective(m.lambda.value_or(0.0)).Validate();
  }

  // The labels are defined by the labeling hashtags; a ranker that sees them
  // would only learn the labeling rule.
  TrainingConfig ranker_config = config.ranker;
  if (config.extract.exclude_labeling) {
    ranker_config.excluded_hashtags.insert(corpus.labeling_hashtags.begin(),
                                           corpus.labeling_hashtags.end());
  }

  EvalReport report;
  report.topic = corpus.topic;
  report.num_positives = corpus.positives.size();
  report.num_negatives = corpus.negatives.size();
  report.n_folds = plan.n_folds;
  report.seed = config.seed;
  report.min_freq = config.extract.min_freq;
  report.p_at_k = config.p_at_k;
  for (const MethodSpec& m : methods) {
    report.methods.emplace_back().method = m;
  }

  const bool needs_index =
      std::any_of(methods.begin(), methods.end(), [](const MethodSpec& m) {
        return m.kind != MethodKind::kFirehose;
      });
  const bool needs_raw_ranker =
      !config.train_on_filtered ||
      std::any_of(methods.begin(), methods.end(), [](const MethodSpec& m) {
        return m.kind == MethodKind::kFirehose || m.kind == MethodKind::kTopK;
      });

  for (int fold = 0; fold < plan.n_folds; ++fold) {
    const LabeledCorpus split =
        SelectFolds(corpus, plan, [fold](int f) { return f == fold; });
    const LabeledCorpus train =
        SelectFolds(corpus, plan, [fold](int f) { return f != fold; });

    std::optional<CoverageIndex> index;
    std::optional<NmisTable> nmis;
    std::string index_error;
    if (needs_index) {
      Notify(config, "query", fold, split);
      try {
        index = ExtractFeatures(split, config.extract);
        nmis = BuildNmisTable(*index);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kUsage) throw;
        index_error = e.what();
      }
    }
    std::optional<RankerModel> raw_ranker;
    std::string ranker_error;
    if (needs_raw_ranker) {
      Notify(config, "train", fold, train);
      try {
        raw_ranker = Train(train, ranker_config);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kUsage) throw;
        ranker_error = e.what();
      }
    }

    IdSet relevant;
    std::unordered_map<std::string, const Document*> by_id;
    for (const Document& d : split.positives) {
      relevant.insert(d.id);
      by_id.emplace(d.id, &d);
    }
    for (const Document& d : split.negatives) by_id.emplace(d.id, &d);

    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      const MethodSpec& method = methods[mi];
      FoldRecord rec;
      rec.fold = fold;
      try {
        auto require_ranker = [&]() -> const RankerModel& {
          if (!raw_ranker) throw DataError("ranker unavailable: " + ranker_error);
          return *raw_ranker;
        };
        RetrievalResult retrieval;
        std::optional<Query> query;
        if (method.kind == MethodKind::kFirehose) {
          retrieval = RetrieveAll(split);
        } else {
          if (!index) throw DataError(index_error);
          QuerySolution solution;
          if (method.kind == MethodKind::kTopK) {
            solution = TopKBaseline(ExportWeights(require_ranker(), *index),
                                    method.k, *index, method.char_budget);
          } else {
            double lambda = 0.0;
            if (method.kind != MethodKind::kCilp) {
              if (method.lambda) {
                lambda = *method.lambda;
              } else {
                Notify(config, "tune", fold, split);
                lambda = TuneLambda(method, split, config, FoldSeed(config.seed, fold))
                             .lambda;
              }
              rec.lambda = lambda;
            }
            solution = Solve(method.solver, method.Objective(lambda), *index,
                             *nmis, config.limits);
          }
          query = MakeQuery(solution, *index);
          rec.objective = solution.objective_value;
          rec.solve_seconds =
              std::chrono::duration<double>(solution.solve_time).count();
          for (const Feature& f : query->features) rec.query.push_back(f.key());
          rec.rendered_query = RenderQuery(*query).text;
          retrieval = Retrieve(*query, split);
        }
        const Stage1Metrics stage1 = ComputeStage1(retrieval, split);
        rec.retrieved = stage1.retrieved;
        rec.retrieved_pos = retrieval.retrieved_pos;
        rec.recall = stage1.recall;
        rec.precision = stage1.precision;

        std::optional<RankerModel> filtered_ranker;
        if (config.train_on_filtered && query) {
          const LabeledCorpus filtered = FilterByQuery(train, *query);
          Notify(config, "train", fold, filtered);
          filtered_ranker = Train(filtered, ranker_config);
        }
        const RankerModel& ranker =
            filtered_ranker ? *filtered_ranker : require_ranker();
        std::vector<Document> retrieved_docs;
        retrieved_docs.reserve(retrieval.retrieved_ids.size());
        for (const std::string& id : retrieval.retrieved_ids) {
          retrieved_docs.push_back(*by_id.at(id));
        }
        std::vector<std::string> ranking;
        for (const ScoredDocument& s : Rank(ranker, retrieved_docs)) {
          ranking.push_back(s.id);
        }
        rec.avep = AveragePrecision(ranking, relevant);
        rec.p_at_k = PrecisionAtK(ranking, relevant, config.p_at_k);
        rec.ok = true;
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kUsage) throw;
        rec.ok = false;
        rec.error = e.what();
      }
      report.methods[mi].folds.push_back(std::move(rec));
    }
  }
  for (MethodSummary& summary : report.methods) Aggregate(summary);
  return report;
}

}  // namespace qopt
