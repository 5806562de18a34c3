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


#ifndef QOPT_DOCUMENT_H_
#define QOPT_DOCUMENT_H_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qopt {

// One record (a tweet). Every token of `text` lands in exactly one of
// hashtags, mentions or terms; author and location come from metadata.
// All token lists are lowercased, sigil-free and duplicate-free.
struct Document {
  std::string id;
  std::string text;
  std::string author;
  std::string location;
  std::vector<std::string> hashtags;
  std::vector<std::string> mentions;
  std::vector<std::string> terms;
  std::optional<std::string> lang;

  bool HasHashtag(const std::string& tag) const;
};

// A corpus split into topical positives P and non-topical negatives N.
// Positional indices into `positives` / `negatives` are the document
// indices used by the coverage bitsets.
struct LabeledCorpus {
  std::string topic;
  std::set<std::string> labeling_hashtags;
  std::vector<Document> positives;
  std::vector<Document> negatives;

  std::size_t size() const { return positives.size() + negatives.size(); }
};

}  // namespace qopt

#endif  // QOPT_DOCUMENT_H_
