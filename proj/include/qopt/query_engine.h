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


#ifndef QOPT_QUERY_ENGINE_H_
#define QOPT_QUERY_ENGINE_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qopt/document.h"
#include "qopt/feature.h"
#include "qopt/feature_index.h"
#include "qopt/solvers.h"

namespace qopt {

// Maximum query length accepted by the search API.
inline constexpr std::size_t kMaxQueryChars = 500;

// A boolean OR over keywords, detached from the index it was solved on.
struct Query {
  std::vector<Feature> features;
};

Query MakeQuery(const QuerySolution& solution, const CoverageIndex& index);

struct RetrievalResult {
  // Matched positives in corpus order, then matched negatives.
  std::vector<std::string> retrieved_ids;
  std::size_t retrieved_pos = 0;
  std::size_t retrieved_neg = 0;
  std::size_t query_chars = 0;
};

// Positions of the documents containing at least one query keyword.
std::vector<std::size_t> MatchDocuments(const Query& query,
                                        std::span<const Document> docs);

RetrievalResult Retrieve(const Query& query, const LabeledCorpus& corpus);

struct RenderedQuery {
  std::string text;
  std::vector<std::string> warnings;
};

RenderedQuery RenderQuery(const Query& query,
                          std::size_t max_chars = kMaxQueryChars);

}  // namespace qopt

#endif  // QOPT_QUERY_ENGINE_H_
