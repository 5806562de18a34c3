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


#ifndef QOPT_FEATURE_INDEX_H_
#define QOPT_FEATURE_INDEX_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "qopt/doc_set.h"
#include "qopt/document.h"
#include "qopt/feature.h"

namespace qopt {

struct CoverageCount {
  std::size_t pos = 0;
  std::size_t neg = 0;

  bool operator==(const CoverageCount&) const = default;
};

struct ExtractOptions {
  // Minimum number of documents (over P and N) containing a feature.
  int min_freq = 100;
  // Drop Hashtag features that are labeling hashtags of the corpus.
  bool exclude_labeling = true;
  // Keep only the first max_features features in canonical order; 0 keeps
  // all of them.
  std::size_t max_features = 0;
};

// Candidate query features with their coverage over P and N. Features are
// indexed 0..|F|-1 in canonical order (descending total frequency, then
// (kind, value)). Immutable after construction.
class CoverageIndex {
 public:
  CoverageIndex() = default;
  CoverageIndex(std::vector<Feature> features, std::vector<DocSet> pos_cov,
                std::vector<DocSet> neg_cov, std::size_t n_pos,
                std::size_t n_neg);

  std::size_t num_features() const { return features_.size(); }
  std::size_t n_pos() const { return n_pos_; }
  std::size_t n_neg() const { return n_neg_; }

  const Feature& feature(std::size_t j) const { return features_[j]; }
  std::span<const Feature> features() const { return features_; }
  const DocSet& pos_cov(std::size_t j) const { return pos_cov_[j]; }
  const DocSet& neg_cov(std::size_t j) const { return neg_cov_[j]; }
  std::size_t Frequency(std::size_t j) const {
    return pos_cov_[j].Count() + neg_cov_[j].Count();
  }

  std::optional<std::size_t> Find(const FeatureKey& key) const;

  // Sizes of the unions of pos_cov / neg_cov over `selected`.
  CoverageCount Coverage(std::span<const int> selected) const;

  // Index restricted to `features` (in the given order).
  CoverageIndex Subset(std::span<const std::size_t> features) const;

  // Versioned binary dump; Load(Save(x)) reproduces x bit for bit.
  void Save(std::ostream& out) const;
  static CoverageIndex Load(std::istream& in);

  bool operator==(const CoverageIndex& other) const;

 private:
  std::vector<Feature> features_;
  std::vector<DocSet> pos_cov_;
  std::vector<DocSet> neg_cov_;
  std::size_t n_pos_ = 0;
  std::size_t n_neg_ = 0;
  std::unordered_map<FeatureKey, std::size_t, FeatureKeyHash> lookup_;
};

// Builds the index over every (kind, value) occurring in at least
// options.min_freq documents. Throws DataError when nothing survives.
CoverageIndex ExtractFeatures(const LabeledCorpus& corpus,
                              const ExtractOptions& options);

}  // namespace qopt

#endif  // QOPT_FEATURE_INDEX_H_
