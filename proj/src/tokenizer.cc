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


#include "qopt/tokenizer.h"

#include <algorithm>
#include <cctype>
#include <string>
#include <unordered_set>

namespace qopt {
namespace {

bool IsWordChar(unsigned char c) {
  return std::isalnum(c) || c == '_' || c >= 0x80;
}

bool IsSpace(unsigned char c) { return std::isspace(c) != 0; }

void PushUnique(std::vector<std::string>& out,
                std::unordered_set<std::string>& seen, std::string token) {
  if (seen.insert(token).second) out.push_back(std::move(token));
}

}  // namespace

std::string ToLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::string NormalizeText(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (unsigned char c : s) {
    if (IsSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

std::string NormalizeTag(std::string_view s) {
  std::string out = NormalizeText(s);
  std::size_t start = 0;
  while (start < out.size() && (out[start] == '#' || out[start] == '@')) {
    ++start;
  }
  return out.substr(start);
}

TokenizedText Tokenize(std::string_view text) {
  TokenizedText out;
  std::unordered_set<std::string> seen_hashtags, seen_mentions, seen_terms;
  const std::size_t n = text.size();
  auto at = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };

  std::size_t i = 0;
  while (i < n) {
    char sigil = 0;
    if ((at(i) == '#' || at(i) == '@') && i + 1 < n && IsWordChar(at(i + 1)) &&
        (i == 0 || !IsWordChar(at(i - 1)))) {
      sigil = text[i];
      ++i;
    } else if (!IsWordChar(at(i))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < n) {
      if (IsWordChar(at(i))) {
        ++i;
      } else if (at(i) == '\'' && i + 1 < n && IsWordChar(at(i + 1))) {
        i += 2;
      } else {
        break;
      }
    }
    std::string token = ToLower(text.substr(start, i - start));
    switch (sigil) {
      case '#':
        PushUnique(out.hashtags, seen_hashtags, std::move(token));
        break;
      case '@':
        PushUnique(out.mentions, seen_mentions, std::move(token));
        break;
      default:
        PushUnique(out.terms, seen_terms, std::move(token));
    }
  }
  return out;
}

}  // namespace qopt
