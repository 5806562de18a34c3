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


#include "qopt/feature.h"

#include <algorithm>
#include <array>
#include <cctype>

namespace qopt {
namespace {

constexpr std::array<std::string_view, 5> kKindNames = {
    "from", "location", "hashtag", "mention", "term"};

bool HasSpace(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

bool Contains(const std::vector<std::string>& list, std::string_view value) {
  return std::find(list.begin(), list.end(), value) != list.end();
}

}  // namespace

bool Document::HasHashtag(const std::string& tag) const {
  return Contains(hashtags, tag);
}

std::string_view FeatureKindName(FeatureKind kind) {
  return kKindNames[static_cast<std::size_t>(kind)];
}

std::optional<FeatureKind> ParseFeatureKind(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<FeatureKind>(i);
  }
  return std::nullopt;
}

std::string RenderKeyword(FeatureKind kind, std::string_view value) {
  std::string v(value);
  switch (kind) {
    case FeatureKind::kFrom:
      return "from:" + v;
    case FeatureKind::kLocation:
      return HasSpace(value) ? "place:\"" + v + "\"" : "place:" + v;
    case FeatureKind::kHashtag:
      return "#" + v;
    case FeatureKind::kMention:
      return "@" + v;
    case FeatureKind::kTerm:
      break;
  }
  return v;
}

int CharCost(FeatureKind kind, std::string_view value) {
  return static_cast<int>(RenderKeyword(kind, value).size()) + kOrJoinerChars;
}

Feature MakeFeature(FeatureKind kind, std::string value) {
  const int cost = CharCost(kind, value);
  return Feature{kind, std::move(value), cost};
}

bool DocumentHasFeature(const Document& doc, FeatureKind kind,
                        std::string_view value) {
  switch (kind) {
    case FeatureKind::kFrom:
      return !doc.author.empty() && doc.author == value;
    case FeatureKind::kLocation:
      return !doc.location.empty() && doc.location == value;
    case FeatureKind::kHashtag:
      return Contains(doc.hashtags, value);
    case FeatureKind::kMention:
      return Contains(doc.mentions, value);
    case FeatureKind::kTerm:
      return Contains(doc.terms, value);
  }
  return false;
}

}  // namespace qopt
