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


#ifndef QOPT_SYNTH_H_
#define QOPT_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "qopt/document.h"
#include "qopt/feature_index.h"

namespace qopt {

// Planted-topic corpus generator. Positives carry a labeling hashtag and draw
// topic terms at term-specific rates; negatives draw the same topic terms at
// a small leak rate. Stopword-like terms appear in both classes at high and
// equal rates; background terms, authors, locations, mentions and filler
// hashtags are class independent.
struct SynthConfig {
  std::size_t num_docs = 50'000;
  double positive_rate = 0.05;
  std::uint64_t seed = 1;
  std::string topic = "planted";
  std::size_t num_labeling_hashtags = 5;
  std::size_t num_topic_terms = 40;
  double topic_rate_max = 0.12;
  double topic_rate_min = 0.02;
  double topic_leak_rate = 0.002;
  // Positives that carry no topic term at all.
  double hard_positive_rate = 0.15;
  std::size_t num_stopwords = 25;
  double stopword_rate_max = 0.45;
  double stopword_rate_min = 0.15;
  std::size_t background_vocab = 5'000;
  std::size_t background_terms_per_doc = 6;
  std::size_t num_authors = 20'000;
  std::size_t num_locations = 200;
  std::size_t num_filler_hashtags = 300;
};

struct SynthCorpus {
  std::string topic;
  std::set<std::string> labeling_hashtags;
  std::set<std::string> topic_terms;
  std::set<std::string> stopwords;
  std::vector<Document> documents;
};

SynthCorpus GenerateSynthetic(const SynthConfig& config);

// Random coverage index with Zipf-like feature sizes, for solver scaling
// runs that do not need document text.
CoverageIndex RandomCoverageIndex(std::size_t n_pos, std::size_t n_neg,
                                  std::size_t n_features,
                                  std::size_t max_feature_size,
                                  std::uint64_t seed);

}  // namespace qopt

#endif  // QOPT_SYNTH_H_
