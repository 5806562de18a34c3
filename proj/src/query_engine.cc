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


#include "qopt/query_engine.h"

#include <unordered_set>

namespace qopt {

Query MakeQuery(const QuerySolution& solution, const CoverageIndex& index) {
  Query query;
  query.features.reserve(solution.selected.size());
  for (int j : solution.selected) query.features.push_back(index.feature(j));
  return query;
}

std::vector<std::size_t> MatchDocuments(const Query& query,
                                        std::span<const Document> docs) {
  std::unordered_set<FeatureKey, FeatureKeyHash> keys;
  for (const Feature& f : query.features) keys.insert(f.key());
  std::vector<std::size_t> matched;
  if (keys.empty()) return matched;
  FeatureKey probe;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    bool hit = false;
    ForEachFeature(docs[i], [&](FeatureKind kind, const std::string& value) {
      if (hit) return;
      probe.kind = kind;
      probe.value = value;
      hit = keys.contains(probe);
    });
    if (hit) matched.push_back(i);
  }
  return matched;
}

RetrievalResult Retrieve(const Query& query, const LabeledCorpus& corpus) {
  RetrievalResult result;
  for (const Feature& f : query.features) {
    result.query_chars += static_cast<std::size_t>(f.char_cost);
  }
  if (!query.features.empty()) result.query_chars -= kOrJoinerChars;

  const std::vector<std::size_t> pos = MatchDocuments(query, corpus.positives);
  const std::vector<std::size_t> neg = MatchDocuments(query, corpus.negatives);
  result.retrieved_ids.reserve(pos.size() + neg.size());
  for (std::size_t i : pos) result.retrieved_ids.push_back(corpus.positives[i].id);
  for (std::size_t i : neg) result.retrieved_ids.push_back(corpus.negatives[i].id);
  result.retrieved_pos = pos.size();
  result.retrieved_neg = neg.size();
  return result;
}

RenderedQuery RenderQuery(const Query& query, std::size_t max_chars) {
  RenderedQuery rendered;
  for (const Feature& f : query.features) {
    if (!rendered.text.empty()) rendered.text += " OR ";
    rendered.text += RenderKeyword(f.kind, f.value);
  }
  if (rendered.text.size() > max_chars) {
    rendered.warnings.push_back("query is " +
                                std::to_string(rendered.text.size()) +
                                " characters, over the limit of " +
                                std::to_string(max_chars));
  }
  return rendered;
}

}  // namespace qopt
