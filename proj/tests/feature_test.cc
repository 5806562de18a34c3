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

#include <gtest/gtest.h>

#include "qopt/doc_set.h"
#include "qopt/random.h"
#include "test_util.h"

namespace qopt {
namespace {

TEST(FeatureTest, RenderKeyword) {
  EXPECT_EQ(RenderKeyword(FeatureKind::kFrom, "bob"), "from:bob");
  EXPECT_EQ(RenderKeyword(FeatureKind::kLocation, "paris"), "place:paris");
  EXPECT_EQ(RenderKeyword(FeatureKind::kLocation, "new york"),
            "place:\"new york\"");
  EXPECT_EQ(RenderKeyword(FeatureKind::kHashtag, "nadal"), "#nadal");
  EXPECT_EQ(RenderKeyword(FeatureKind::kMention, "bob"), "@bob");
  EXPECT_EQ(RenderKeyword(FeatureKind::kTerm, "tennis"), "tennis");
}

TEST(FeatureTest, CharCostCountsJoiner) {
  EXPECT_EQ(CharCost(FeatureKind::kTerm, "tennis"), 6 + 4);
  EXPECT_EQ(CharCost(FeatureKind::kHashtag, "nadal"), 1 + 5 + 4);
  EXPECT_EQ(CharCost(FeatureKind::kLocation, "paris"), 6 + 5 + 4);
  EXPECT_EQ(MakeFeature(FeatureKind::kFrom, "x").char_cost, 5 + 1 + 4);
}

TEST(FeatureTest, KindNamesRoundTrip) {
  for (auto k : {FeatureKind::kFrom, FeatureKind::kLocation,
                 FeatureKind::kHashtag, FeatureKind::kMention,
                 FeatureKind::kTerm}) {
    EXPECT_EQ(ParseFeatureKind(FeatureKindName(k)), k);
  }
  EXPECT_FALSE(ParseFeatureKind("bogus").has_value());
}

TEST(FeatureTest, DocumentContainment) {
  Document d = testing::MakeDoc("1", "Hi @bob #Quake", "alice", "new york");
  EXPECT_TRUE(DocumentHasFeature(d, FeatureKind::kFrom, "alice"));
  EXPECT_TRUE(DocumentHasFeature(d, FeatureKind::kLocation, "new york"));
  EXPECT_TRUE(DocumentHasFeature(d, FeatureKind::kHashtag, "quake"));
  EXPECT_TRUE(DocumentHasFeature(d, FeatureKind::kMention, "bob"));
  EXPECT_TRUE(DocumentHasFeature(d, FeatureKind::kTerm, "hi"));
  // Kinds are distinct namespaces.
  EXPECT_FALSE(DocumentHasFeature(d, FeatureKind::kTerm, "quake"));
  EXPECT_FALSE(DocumentHasFeature(d, FeatureKind::kTerm, "bob"));
  int visited = 0;
  ForEachFeature(d, [&](FeatureKind, const std::string&) { ++visited; });
  EXPECT_EQ(visited, 5);
}

TEST(DocSetTest, DenseAndSparseAgreeWithNaiveSets) {
  Rng rng(7);
  for (double p : {0.0, 0.001, 0.02, 0.3, 1.0}) {
    for (int rep = 0; rep < 5; ++rep) {
      const std::size_t universe = 1 + rng.Below(3000);
      DocSet s = testing::RandomDocSet(rng, universe, p);
      std::vector<bool> covered(universe);
      DenseBitset bits(universe);
      for (std::size_t i = 0; i < universe; ++i) {
        if (rng.Bernoulli(0.3)) {
          bits.Set(i);
          covered[i] = true;
        }
      }
      const auto members = s.Members();
      std::size_t not_in = 0;
      for (auto m : members) not_in += !covered[m];
      EXPECT_EQ(s.Count(), members.size());
      EXPECT_EQ(s.CountNotIn(bits), not_in);
      for (std::size_t i = 0; i < universe; i += 17) {
        EXPECT_EQ(s.Contains(i),
                  std::binary_search(members.begin(), members.end(), i));
      }
      const std::size_t before = bits.Count();
      s.AddTo(bits);
      EXPECT_EQ(bits.Count(), before + not_in);
    }
  }
}

TEST(DocSetTest, RepresentationFollowsDensity) {
  std::vector<std::uint32_t> all(1000);
  for (std::uint32_t i = 0; i < 1000; ++i) all[i] = i;
  EXPECT_TRUE(DocSet(1000, all).is_dense());
  EXPECT_FALSE(DocSet(100000, {1, 5, 9}).is_dense());
  EXPECT_EQ(DocSet(1000, all), DocSet(1000, all));
}

}  // namespace
}  // namespace qopt
