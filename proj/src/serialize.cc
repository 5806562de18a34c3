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


#include "qopt/serialize.h"

#include <chrono>
#include <cstdio>
#include <ostream>

#include <nlohmann/json.hpp>

#include "qopt/config.h"

namespace qopt {

using nlohmann::json;

json ToJson(const ObjectiveSpec& spec) {
  json j = {{"kind", ObjectiveKindName(spec.kind)}, {"k", spec.k}};
  j["lambda"] = spec.kind == ObjectiveKind::kCilp ? json(nullptr)
                                                  : json(spec.lambda);
  j["char_budget"] =
      spec.char_budget ? json(*spec.char_budget) : json(nullptr);
  return j;
}

json ToJson(const QuerySolution& solution, const CoverageIndex& index) {
  json selected = json::array();
  for (int j : solution.selected) {
    const Feature& f = index.feature(j);
    selected.push_back(
        {{"kind", FeatureKindName(f.kind)}, {"value", f.value}, {"index", j}});
  }
  return {
      {"solver", SolverKindName(solution.solver)},
      {"spec", ToJson(solution.spec)},
      {"selected", selected},
      {"objective_value", solution.objective_value},
      {"pos_covered", solution.pos_covered},
      {"neg_covered", solution.neg_covered},
      {"char_cost", solution.char_cost(index)},
      {"solve_time_ms",
       std::chrono::duration<double, std::milli>(solution.solve_time).count()},
  };
}

json ToJson(const RetrievalResult& result) {
  return {{"retrieved", result.retrieved_ids.size()},
          {"retrieved_pos", result.retrieved_pos},
          {"retrieved_neg", result.retrieved_neg},
          {"query_chars", result.query_chars},
          {"retrieved_ids", result.retrieved_ids}};
}

json ToJson(const Interval& interval) {
  return {{"mean", interval.mean},
          {"halfwidth", interval.halfwidth ? json(*interval.halfwidth)
                                           : json(nullptr)}};
}

json ToJson(const EvalReport& report) {
  json methods = json::array();
  for (const MethodSummary& m : report.methods) {
    json folds = json::array();
    for (const FoldRecord& r : m.folds) {
      json fold = {{"fold", r.fold}, {"ok", r.ok}};
      if (!r.ok) {
        fold["error"] = r.error;
        folds.push_back(fold);
        continue;
      }
      json query = json::array();
      for (const FeatureKey& k : r.query) {
        query.push_back({FeatureKindName(k.kind), k.value});
      }
      fold["lambda"] = r.lambda ? json(*r.lambda) : json(nullptr);
      fold["query"] = query;
      fold["rendered_query"] = r.rendered_query;
      fold["objective"] = r.objective;
      fold["retrieved"] = r.retrieved;
      fold["retrieved_pos"] = r.retrieved_pos;
      fold["recall"] = r.recall;
      fold["precision"] = r.precision;
      fold["avep"] = r.avep ? json(*r.avep) : json(nullptr);
      fold["p_at_k"] = r.p_at_k;
      folds.push_back(fold);
    }
    methods.push_back({{"method", ToJson(m.method)},
                       {"avg_retrieved", ToJson(m.avg_retrieved)},
                       {"recall", ToJson(m.recall)},
                       {"precision", ToJson(m.precision)},
                       {"avep", ToJson(m.avep)},
                       {"p_at_k", ToJson(m.p_at_k)},
                       {"failed_folds", m.failed_folds},
                       {"folds", folds}});
  }
  return {{"topic", report.topic},
          {"num_positives", report.num_positives},
          {"num_negatives", report.num_negatives},
          {"n_folds", report.n_folds},
          {"seed", report.seed},
          {"min_freq", report.min_freq},
          {"p_at_k", report.p_at_k},
          {"methods", methods}};
}

json TimingsToJson(const EvalReport& report) {
  json methods = json::array();
  for (const MethodSummary& m : report.methods) {
    json folds = json::array();
    for (const FoldRecord& r : m.folds) {
      folds.push_back({{"fold", r.fold}, {"solve_seconds", r.solve_seconds}});
    }
    methods.push_back({{"name", m.method.name}, {"folds", folds}});
  }
  return {{"methods", methods}};
}

std::string FormatFixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') {
    s.erase(0, 1);
  }
  return s;
}

void WriteReportCsv(const EvalReport& report, std::ostream& out,
                    const std::string& config_hash) {
  const std::string pk = "p@" + std::to_string(report.p_at_k);
  out << "method,avg_retrieved,recall,recall_ci,precision,precision_ci,"
         "test_avep,test_avep_ci,"
      << pk << "," << pk << "_ci" << (config_hash.empty() ? "" : ",config_hash")
      << '\n';
  auto cell = [&](const Interval& i) {
    out << ',' << FormatFixed(i.mean, 3) << ','
        << (i.halfwidth ? FormatFixed(*i.halfwidth, 3) : "n/a");
  };
  for (const MethodSummary& m : report.methods) {
    out << m.method.name << ',' << FormatFixed(m.avg_retrieved.mean, 3);
    cell(m.recall);
    cell(m.precision);
    cell(m.avep);
    cell(m.p_at_k);
    if (!config_hash.empty()) out << ',' << config_hash;
    out << '\n';
  }
}

}  // namespace qopt
