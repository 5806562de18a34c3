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


#ifndef QOPT_TOKENIZER_H_
#define QOPT_TOKENIZER_H_

#include <string>
#include <string_view>
#include <vector>

namespace qopt {

struct TokenizedText {
  std::vector<std::string> hashtags;
  std::vector<std::string> mentions;
  std::vector<std::string> terms;
};

// Splits lowercased text on whitespace and punctuation. A token is a run of
// word characters (ASCII alphanumerics, '_', and any non-ASCII byte) that may
// contain apostrophes between word characters. A '#' or '@' directly in front
// of a token, and not glued to a preceding word, makes it a hashtag or a
// mention; everything else is a term. Each output list keeps first
// occurrences only.
TokenizedText Tokenize(std::string_view text);

std::string ToLower(std::string_view s);

// Lowercases, trims and collapses internal whitespace runs to one space.
std::string NormalizeText(std::string_view s);

// Lowercases and strips leading '#' / '@' sigils and surrounding whitespace.
std::string NormalizeTag(std::string_view s);

}  // namespace qopt

#endif  // QOPT_TOKENIZER_H_
