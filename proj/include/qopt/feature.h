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


#ifndef QOPT_FEATURE_H_
#define QOPT_FEATURE_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "qopt/document.h"

namespace qopt {

// The five keyword classes usable in a search query. The enumerator order is
// the tie-break order for features of equal frequency.
enum class FeatureKind : std::uint8_t {
  kFrom = 0,
  kLocation = 1,
  kHashtag = 2,
  kMention = 3,
  kTerm = 4,
};

std::string_view FeatureKindName(FeatureKind kind);
std::optional<FeatureKind> ParseFeatureKind(std::string_view name);

struct FeatureKey {
  FeatureKind kind = FeatureKind::kTerm;
  std::string value;

  auto operator<=>(const FeatureKey&) const = default;
  bool operator==(const FeatureKey&) const = default;
};

struct FeatureKeyHash {
  std::size_t operator()(const FeatureKey& key) const {
    return std::hash<std::string>()(key.value) * 31 +
           static_cast<std::size_t>(key.kind);
  }
};

// Characters of " OR " between two query keywords.
inline constexpr int kOrJoinerChars = 4;

// Operator syntax of one keyword: from:x, place:x, #x, @x or a bare term.
// Location values containing whitespace are double-quoted.
std::string RenderKeyword(FeatureKind kind, std::string_view value);

// Characters a keyword consumes in a query, including one " OR " joiner.
int CharCost(FeatureKind kind, std::string_view value);

struct Feature {
  FeatureKind kind = FeatureKind::kTerm;
  std::string value;
  int char_cost = 0;

  FeatureKey key() const { return {kind, value}; }
};

Feature MakeFeature(FeatureKind kind, std::string value);

// Calls fn(kind, value) once for every distinct feature of the document.
template <typename Fn>
void ForEachFeature(const Document& doc, Fn&& fn) {
  if (!doc.author.empty()) fn(FeatureKind::kFrom, doc.author);
  if (!doc.location.empty()) fn(FeatureKind::kLocation, doc.location);
  for (const auto& v : doc.hashtags) fn(FeatureKind::kHashtag, v);
  for (const auto& v : doc.mentions) fn(FeatureKind::kMention, v);
  for (const auto& v : doc.terms) fn(FeatureKind::kTerm, v);
}

// Containment rule shared by feature extraction and query retrieval.
bool DocumentHasFeature(const Document& doc, FeatureKind kind,
                        std::string_view value);

}  // namespace qopt

#endif  // QOPT_FEATURE_H_
