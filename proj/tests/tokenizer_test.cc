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

#include <gmock/gmock.h>
#include <gtest/gtest.h>

namespace qopt {
namespace {

using ::testing::ElementsAre;
using ::testing::IsEmpty;

TEST(TokenizeTest, SplitsSigilsFromTerms) {
  TokenizedText t = Tokenize("RT @bob #quake hits chile");
  EXPECT_THAT(t.mentions, ElementsAre("bob"));
  EXPECT_THAT(t.hashtags, ElementsAre("quake"));
  EXPECT_THAT(t.terms, ElementsAre("rt", "hits", "chile"));
}

TEST(TokenizeTest, LowercasesAndDropsPunctuation) {
  TokenizedText t = Tokenize("Nadal WINS!!! (again), #Tennis.");
  EXPECT_THAT(t.terms, ElementsAre("nadal", "wins", "again"));
  EXPECT_THAT(t.hashtags, ElementsAre("tennis"));
}

TEST(TokenizeTest, KeepsInWordApostrophes) {
  TokenizedText t = Tokenize("don't 'quoted' rock'n'roll");
  EXPECT_THAT(t.terms, ElementsAre("don't", "quoted", "rock'n'roll"));
}

TEST(TokenizeTest, SigilInsideWordIsNotATag) {
  TokenizedText t = Tokenize("mail bob@example.com c# # @ ##x");
  EXPECT_THAT(t.mentions, IsEmpty());
  EXPECT_THAT(t.terms, ElementsAre("mail", "bob", "example", "com", "c"));
  EXPECT_THAT(t.hashtags, ElementsAre("x"));
}

TEST(TokenizeTest, DeduplicatesKeepingFirstOccurrence) {
  TokenizedText t = Tokenize("b a b #x #X a");
  EXPECT_THAT(t.terms, ElementsAre("b", "a"));
  EXPECT_THAT(t.hashtags, ElementsAre("x"));
}

TEST(TokenizeTest, EmptyText) {
  TokenizedText t = Tokenize("");
  EXPECT_THAT(t.terms, IsEmpty());
  EXPECT_THAT(t.hashtags, IsEmpty());
  EXPECT_THAT(t.mentions, IsEmpty());
}

TEST(TokenizeTest, NonAsciiBytesAreWordCharacters) {
  TokenizedText t = Tokenize("#fútbol año");
  EXPECT_THAT(t.hashtags, ElementsAre("fútbol"));
  EXPECT_THAT(t.terms, ElementsAre("año"));
}

TEST(NormalizeTest, TextAndTags) {
  EXPECT_EQ(NormalizeText("  Hello   World\t"), "hello world");
  EXPECT_EQ(NormalizeTag("#Nadal"), "nadal");
  EXPECT_EQ(NormalizeTag(" @Bob "), "bob");
  EXPECT_EQ(ToLower("ABC"), "abc");
}

}  // namespace
}  // namespace qopt
