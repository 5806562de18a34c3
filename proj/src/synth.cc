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


#include "qopt/synth.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qopt/random.h"
#include "qopt/tokenizer.h"

namespace qopt {
namespace {

constexpr std::array<const char*, 40> kStopwords = {
    "rt",   "the",  "a",    "to",   "and",  "of",   "in",   "is",
    "for",  "on",   "you",  "my",   "i",    "it",   "this", "with",
    "that", "at",   "be",   "me",   "so",   "just", "we",   "are",
    "all",  "not",  "have", "but",  "your", "what", "can",  "from",
    "up",   "out",  "like", "get",  "now",  "new",  "if",   "no"};

constexpr std::array<const char*, 5> kLabelSuffixes = {"", "news", "live",
                                                       "fans", "update"};

// Samples ranks 0..n-1 with probability proportional to 1 / (rank + 1).
class ZipfSampler {
 public:
  explicit ZipfSampler(std::size_t n) : cdf_(n) {
    double total = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      total += 1.0 / static_cast<double>(r + 1);
      cdf_[r] = total;
    }
    for (double& c : cdf_) c /= total;
  }

  std::size_t Sample(Rng& rng) const {
    const double u = rng.Uniform();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return std::min<std::size_t>(it - cdf_.begin(), cdf_.size() - 1);
  }

 private:
  std::vector<double> cdf_;
};

std::string Numbered(const char* prefix, std::size_t i, int width) {
  std::string digits = std::to_string(i);
  if (static_cast<int>(digits.size()) < width) {
    digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
  }
  return prefix + digits;
}

double Interpolate(double hi, double lo, std::size_t i, std::size_t n) {
  if (n <= 1) return hi;
  return hi + (lo - hi) * static_cast<double>(i) / static_cast<double>(n - 1);
}

}  // namespace

SynthCorpus GenerateSynthetic(const SynthConfig& config) {
  Rng rng(config.seed);
  SynthCorpus out;
  out.topic = config.topic;

  std::vector<std::string> labeling;
  for (std::size_t i = 0; i < config.num_labeling_hashtags; ++i) {
    std::string tag = config.topic + kLabelSuffixes[i % kLabelSuffixes.size()];
    if (i >= kLabelSuffixes.size()) tag += std::to_string(i);
    labeling.push_back(tag);
    out.labeling_hashtags.insert(tag);
  }
  std::vector<std::string> topic_terms;
  std::vector<double> topic_rates;
  for (std::size_t i = 0; i < config.num_topic_terms; ++i) {
    topic_terms.push_back(Numbered("kw", i, 3));
    topic_rates.push_back(Interpolate(config.topic_rate_max,
                                      config.topic_rate_min, i,
                                      config.num_topic_terms));
    out.topic_terms.insert(topic_terms.back());
  }
  std::vector<std::string> stopwords;
  std::vector<double> stop_rates;
  for (std::size_t i = 0; i < config.num_stopwords; ++i) {
    stopwords.push_back(i < kStopwords.size() ? kStopwords[i]
                                              : Numbered("sw", i, 3));
    stop_rates.push_back(Interpolate(config.stopword_rate_max,
                                     config.stopword_rate_min, i,
                                     config.num_stopwords));
    out.stopwords.insert(stopwords.back());
  }

  const ZipfSampler background(std::max<std::size_t>(config.background_vocab, 1));
  const ZipfSampler fillers(std::max<std::size_t>(config.num_filler_hashtags, 1));
  const ZipfSampler authors(std::max<std::size_t>(config.num_authors, 1));

  const auto n_pos = static_cast<std::size_t>(
      std::llround(config.positive_rate * static_cast<double>(config.num_docs)));
  std::vector<char> is_positive(config.num_docs, 0);
  std::fill(is_positive.begin(),
            is_positive.begin() + std::min(n_pos, config.num_docs), 1);
  rng.Shuffle(is_positive);

  out.documents.reserve(config.num_docs);
  std::vector<std::string> tokens;
  for (std::size_t d = 0; d < config.num_docs; ++d) {
    const bool positive = is_positive[d];
    tokens.clear();
    for (std::size_t i = 0; i < stopwords.size(); ++i) {
      if (rng.Bernoulli(stop_rates[i])) tokens.push_back(stopwords[i]);
    }
    const bool hard = positive && rng.Bernoulli(config.hard_positive_rate);
    for (std::size_t i = 0; i < topic_terms.size(); ++i) {
      const double rate =
          positive ? (hard ? 0.0 : topic_rates[i]) : config.topic_leak_rate;
      if (rng.Bernoulli(rate)) tokens.push_back(topic_terms[i]);
    }
    for (std::size_t i = 0; i < config.background_terms_per_doc; ++i) {
      tokens.push_back(Numbered("w", background.Sample(rng), 0));
    }
    if (positive) {
      tokens.push_back("#" + labeling[rng.Below(labeling.size())]);
    }
    if (!positive || rng.Bernoulli(0.3)) {
      tokens.push_back(Numbered("#tag", fillers.Sample(rng), 0));
    }
    if (rng.Bernoulli(0.3)) {
      tokens.push_back(Numbered("@user", authors.Sample(rng), 0));
    }
    rng.Shuffle(tokens);

    Document doc;
    doc.id = Numbered("d", d, 7);
    for (const std::string& t : tokens) {
      if (!doc.text.empty()) doc.text += ' ';
      doc.text += t;
    }
    doc.author = Numbered("user", authors.Sample(rng), 0);
    if (rng.Bernoulli(0.7)) {
      doc.location = Numbered("city", rng.Below(std::max<std::size_t>(
                                          config.num_locations, 1)), 0);
    }
    doc.lang = "en";
    TokenizedText parsed = Tokenize(doc.text);
    doc.hashtags = std::move(parsed.hashtags);
    doc.mentions = std::move(parsed.mentions);
    doc.terms = std::move(parsed.terms);
    out.documents.push_back(std::move(doc));
  }
  return out;
}

CoverageIndex RandomCoverageIndex(std::size_t n_pos, std::size_t n_neg,
                                  std::size_t n_features,
                                  std::size_t max_feature_size,
                                  std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t universe = n_pos + n_neg;
  std::vector<Feature> features;
  std::vector<DocSet> pos_sets, neg_sets;
  features.reserve(n_features);
  for (std::size_t j = 0; j < n_features; ++j) {
    const double scale = std::pow(static_cast<double>(j + 1), -0.8);
    const auto size = std::max<std::size_t>(
        2, static_cast<std::size_t>(static_cast<double>(max_feature_size) * scale));
    // One feature in ten draws only from the positives.
    const bool topical = n_pos > 0 && rng.Below(10) == 0;
    std::vector<std::uint32_t> pos, neg;
    for (std::size_t s = 0; s < size; ++s) {
      const std::uint64_t doc = rng.Below(topical ? n_pos : universe);
      if (doc < n_pos) {
        pos.push_back(static_cast<std::uint32_t>(doc));
      } else {
        neg.push_back(static_cast<std::uint32_t>(doc - n_pos));
      }
    }
    for (auto* list : {&pos, &neg}) {
      std::sort(list->begin(), list->end());
      list->erase(std::unique(list->begin(), list->end()), list->end());
    }
    features.push_back(MakeFeature(FeatureKind::kTerm, Numbered("f", j, 0)));
    pos_sets.emplace_back(n_pos, std::move(pos));
    neg_sets.emplace_back(n_neg, std::move(neg));
  }
  return CoverageIndex(std::move(features), std::move(pos_sets),
                       std::move(neg_sets), n_pos, n_neg);
}

}  // namespace qopt
