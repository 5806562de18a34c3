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


#include "qopt/ranker.h"

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "qopt/errors.h"
#include "qopt/synth.h"
#include "test_util.h"

namespace qopt {
namespace {

using testing::MakeCorpus;
using testing::MakeDoc;

LabeledCorpus RandomCorpus(Rng& rng, int n_docs) {
  std::vector<Document> pos, neg;
  for (int i = 0; i < n_docs; ++i) {
    std::string text;
    const int words = 1 + static_cast<int>(rng.Below(6));
    for (int w = 0; w < words; ++w) {
      text += "w" + std::to_string(rng.Below(30)) + " ";
    }
    text += "#h" + std::to_string(rng.Below(5));
    Document d = MakeDoc("d" + std::to_string(i), text);
    (rng.Bernoulli(0.4) ? pos : neg).push_back(d);
  }
  return MakeCorpus(pos, neg);
}

LabeledCorpus Separable() {
  return MakeCorpus({MakeDoc("p1", "good #a"), MakeDoc("p2", "good #b")},
                    {MakeDoc("n1", "bad #a"), MakeDoc("n2", "bad #b")});
}

TEST(LossTest, GradientMatchesFiniteDifferences) {
  Rng rng(42);
  LabeledCorpus c = RandomCorpus(rng, 200);
  TrainingConfig cfg;
  cfg.positive_weight = 2.0;
  DesignMatrix m = BuildDesignMatrix(c, cfg);
  LogisticLoss loss(m, 0.01);
  std::vector<double> w(loss.num_params()), g(loss.num_params());
  for (int point = 0; point < 5; ++point) {
    for (double& x : w) x = rng.Uniform() * 2 - 1;
    loss.ValueAndGradient(w, g);
    std::vector<double> fd(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double save = w[i];
      w[i] = save + 1e-5;
      const double up = loss.Value(w);
      w[i] = save - 1e-5;
      const double down = loss.Value(w);
      w[i] = save;
      fd[i] = (up - down) / 2e-5;
    }
    double diff = 0, norm = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      diff += (g[i] - fd[i]) * (g[i] - fd[i]);
      norm += fd[i] * fd[i];
    }
    EXPECT_LT(std::sqrt(diff) / std::sqrt(norm), 1e-5);
  }
}

TEST(TrainTest, SeparableLossBelowTenth) {
  RankerModel m = Train(Separable(), {});
  EXPECT_LT(m.final_loss, 0.1);
  EXPECT_GT(m.Weight({FeatureKind::kTerm, "good"}), 0);
  EXPECT_LT(m.Weight({FeatureKind::kTerm, "bad"}), 0);
}

TEST(TrainTest, StrongRegularizationShrinksWeights) {
  TrainingConfig cfg;
  cfg.l2 = 1e6;
  cfg.max_epochs = 1000;
  LabeledCorpus c = MakeCorpus({MakeDoc("p1", "good #a")},
                               {MakeDoc("n1", "bad #a"), MakeDoc("n2", "bad #b")});
  RankerModel m = Train(c, cfg);
  for (double w : m.weights) EXPECT_NEAR(w, 0.0, 1e-6);
  // The bias is free: sigmoid(bias) approaches the positive share.
  EXPECT_NEAR(Score(m, c.positives[0]), Sigmoid(m.bias), 1e-6);
  EXPECT_NEAR(Sigmoid(m.bias), 1.0 / 3, 1e-3);
}

TEST(TrainTest, LargerL2NeverIncreasesNorm) {
  Rng rng(6);
  LabeledCorpus c = RandomCorpus(rng, 150);
  double previous = INFINITY;
  for (double l2 : {1e-3, 1e-2, 1e-1, 1.0}) {
    TrainingConfig cfg;
    cfg.l2 = l2;
    cfg.max_epochs = 5000;
    cfg.grad_tol = 1e-9;
    RankerModel m = Train(c, cfg);
    double norm = 0;
    for (double w : m.weights) norm += w * w;
    EXPECT_LE(std::sqrt(norm), previous + 1e-6);
    previous = std::sqrt(norm);
  }
}

TEST(TrainTest, SingleClassIsFatal) {
  EXPECT_THROW(Train(MakeCorpus({MakeDoc("p", "a #x")}, {}), {}), Error);
}

TEST(TrainTest, ExcludedHashtagsLeaveVocabulary) {
  TrainingConfig cfg;
  cfg.excluded_hashtags = {"a"};
  RankerModel m = Train(Separable(), cfg);
  EXPECT_EQ(std::count(m.vocabulary.begin(), m.vocabulary.end(),
                       FeatureKey{FeatureKind::kHashtag, "a"}),
            0);
  EXPECT_EQ(m.Weight({FeatureKind::kHashtag, "a"}), 0.0);
}

TEST(TrainTest, Deterministic) {
  Rng rng(1);
  LabeledCorpus c = RandomCorpus(rng, 100);
  RankerModel a = Train(c, {}), b = Train(c, {});
  EXPECT_EQ(a.weights, b.weights);
  EXPECT_EQ(a.bias, b.bias);
}

TEST(ScoreTest, ZeroModelScoresHalf) {
  RankerModel m;
  EXPECT_EQ(Score(m, MakeDoc("x", "anything #at all")), 0.5);
}

TEST(ScoreTest, NoOverlapGivesSigmoidBias) {
  RankerModel m = Train(Separable(), {});
  EXPECT_DOUBLE_EQ(Score(m, MakeDoc("x", "unseen #zzz")), Sigmoid(m.bias));
}

TEST(ScoreTest, MatchesDenseDotProduct) {
  Rng rng(3);
  LabeledCorpus train = RandomCorpus(rng, 200);
  LabeledCorpus test = RandomCorpus(rng, 100);
  RankerModel m = Train(train, {});
  for (const Document& d : test.positives) {
    std::vector<double> x(m.vocabulary.size(), 0.0);
    for (std::size_t i = 0; i < m.vocabulary.size(); ++i) {
      const FeatureKey& k = m.vocabulary[i];
      if (DocumentHasFeature(d, k.kind, k.value)) x[i] = 1.0;
    }
    double z = m.bias;
    for (std::size_t i = 0; i < x.size(); ++i) z += m.weights[i] * x[i];
    EXPECT_NEAR(Score(m, d), 1.0 / (1.0 + std::exp(-z)), 1e-12);
  }
}

TEST(RankTest, DescendingWithIdTieBreak) {
  RankerModel m;
  m.vocabulary = {{FeatureKind::kTerm, "lo"}, {FeatureKind::kTerm, "hi"}};
  m.weights = {std::log(0.2 / 0.8), std::log(0.9 / 0.1)};
  m.Reindex();
  std::vector<Document> docs = {MakeDoc("a", "lo"), MakeDoc("b", "hi"),
                                MakeDoc("c", "hi")};
  auto r = Rank(m, docs);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].id, "b");
  EXPECT_EQ(r[1].id, "c");
  EXPECT_EQ(r[2].id, "a");
  EXPECT_NEAR(r[2].score, 0.2, 1e-12);
  EXPECT_TRUE(Rank(m, {}).empty());
}

TEST(RankTest, AgreesWithIndependentSort) {
  Rng rng(10);
  LabeledCorpus c = RandomCorpus(rng, 100);
  RankerModel m = Train(c, {});
  std::vector<Document> docs = c.positives;
  docs.insert(docs.end(), c.negatives.begin(), c.negatives.end());
  std::vector<std::pair<double, std::string>> expected;
  for (const auto& d : docs) expected.push_back({-Score(m, d), d.id});
  std::sort(expected.begin(), expected.end());
  auto r = Rank(m, docs);
  ASSERT_EQ(r.size(), expected.size());
  for (std::size_t i = 0; i < r.size(); ++i) EXPECT_EQ(r[i].id, expected[i].second);
}

TEST(ExportTest, WeightsAlignWithIndex) {
  SynthConfig sc;
  sc.num_docs = 3000;
  SynthCorpus s = GenerateSynthetic(sc);
  LabeledCorpus c;
  c.labeling_hashtags = s.labeling_hashtags;
  for (const auto& d : s.documents) {
    bool pos = std::any_of(d.hashtags.begin(), d.hashtags.end(),
                           [&](const std::string& h) {
                             return s.labeling_hashtags.contains(h);
                           });
    (pos ? c.positives : c.negatives).push_back(d);
  }
  TrainingConfig cfg;
  cfg.excluded_hashtags = s.labeling_hashtags;
  RankerModel m = Train(c, cfg);
  CoverageIndex idx = ExtractFeatures(c, {.min_freq = 10});
  std::vector<double> w = ExportWeights(m, idx);
  ASSERT_EQ(w.size(), idx.num_features());
  for (std::size_t j = 0; j < w.size(); ++j) {
    EXPECT_EQ(w[j], m.Weight(idx.feature(j).key()));
  }
  // The most frequent planted topic term only leaks rarely into negatives.
  auto j = idx.Find({FeatureKind::kTerm, *s.topic_terms.begin()});
  ASSERT_TRUE(j.has_value());
  EXPECT_GT(w[*j], 0.0);
  EXPECT_EQ(m.Weight({FeatureKind::kTerm, "never-seen"}), 0.0);
}

TEST(ModelJsonTest, RoundTripIsBitExact) {
  Rng rng(12);
  RankerModel m = Train(RandomCorpus(rng, 80), {});
  RankerModel back = ModelFromJson(nlohmann::json::parse(ModelToJson(m).dump()));
  EXPECT_EQ(back.vocabulary, m.vocabulary);
  EXPECT_EQ(back.weights, m.weights);
  EXPECT_EQ(back.bias, m.bias);
  EXPECT_EQ(back.epochs_run, m.epochs_run);
  for (const auto& d : RandomCorpus(rng, 20).negatives) {
    EXPECT_EQ(Score(back, d), Score(m, d));
  }
}

}  // namespace
}  // namespace qopt
