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


#include "qopt/feature_index.h"

#include <algorithm>
#include <array>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "qopt/errors.h"

namespace qopt {
namespace {

constexpr std::array<char, 8> kMagic = {'Q', 'O', 'P', 'T', 'I', 'D', 'X', '\0'};
constexpr std::uint32_t kFormatVersion = 1;

struct Postings {
  std::vector<std::uint32_t> pos;
  std::vector<std::uint32_t> neg;
};

void AddPosting(std::vector<std::uint32_t>& list, std::uint32_t doc) {
  if (list.empty() || list.back() != doc) list.push_back(doc);
}

template <typename T>
void WritePod(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T ReadPod(std::istream& in) {
  T value{};
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(T))) {
    throw DataError("truncated index file");
  }
  return value;
}

void WriteMembers(std::ostream& out, const DocSet& set) {
  const std::vector<std::uint32_t> members = set.Members();
  WritePod<std::uint64_t>(out, members.size());
  out.write(reinterpret_cast<const char*>(members.data()),
            static_cast<std::streamsize>(members.size() * sizeof(std::uint32_t)));
}

DocSet ReadMembers(std::istream& in, std::size_t universe) {
  const auto count = ReadPod<std::uint64_t>(in);
  if (count > universe) throw DataError("corrupt index file: set too large");
  std::vector<std::uint32_t> members(count);
  if (!in.read(reinterpret_cast<char*>(members.data()),
               static_cast<std::streamsize>(count * sizeof(std::uint32_t)))) {
    throw DataError("truncated index file");
  }
  if (!std::is_sorted(members.begin(), members.end()) ||
      std::adjacent_find(members.begin(), members.end()) != members.end() ||
      (!members.empty() && members.back() >= universe)) {
    throw DataError("corrupt index file: bad member list");
  }
  return DocSet(universe, std::move(members));
}

}  // namespace

CoverageIndex::CoverageIndex(std::vector<Feature> features,
                             std::vector<DocSet> pos_cov,
                             std::vector<DocSet> neg_cov, std::size_t n_pos,
                             std::size_t n_neg)
    : features_(std::move(features)),
      pos_cov_(std::move(pos_cov)),
      neg_cov_(std::move(neg_cov)),
      n_pos_(n_pos),
      n_neg_(n_neg) {
  if (pos_cov_.size() != features_.size() ||
      neg_cov_.size() != features_.size()) {
    throw DataError("coverage index: feature and bitset counts differ");
  }
  for (std::size_t j = 0; j < features_.size(); ++j) {
    if (pos_cov_[j].universe() != n_pos_ || neg_cov_[j].universe() != n_neg_) {
      throw DataError("coverage index: bitset universe mismatch");
    }
    if (pos_cov_[j].empty() && neg_cov_[j].empty()) {
      throw DataError("coverage index: feature '" + features_[j].value +
                      "' covers no document");
    }
    if (!lookup_.emplace(features_[j].key(), j).second) {
      throw DataError("coverage index: duplicate feature '" +
                      features_[j].value + "'");
    }
  }
}

std::optional<std::size_t> CoverageIndex::Find(const FeatureKey& key) const {
  auto it = lookup_.find(key);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

CoverageCount CoverageIndex::Coverage(std::span<const int> selected) const {
  DenseBitset pos(n_pos_), neg(n_neg_);
  for (int j : selected) {
    pos_cov_[j].AddTo(pos);
    neg_cov_[j].AddTo(neg);
  }
  return {pos.Count(), neg.Count()};
}

CoverageIndex CoverageIndex::Subset(
    std::span<const std::size_t> features) const {
  std::vector<Feature> f;
  std::vector<DocSet> pos, neg;
  for (std::size_t j : features) {
    f.push_back(features_.at(j));
    pos.push_back(pos_cov_[j]);
    neg.push_back(neg_cov_[j]);
  }
  return CoverageIndex(std::move(f), std::move(pos), std::move(neg), n_pos_,
                       n_neg_);
}

void CoverageIndex::Save(std::ostream& out) const {
  out.write(kMagic.data(), kMagic.size());
  WritePod<std::uint32_t>(out, kFormatVersion);
  WritePod<std::uint64_t>(out, n_pos_);
  WritePod<std::uint64_t>(out, n_neg_);
  WritePod<std::uint64_t>(out, features_.size());
  for (std::size_t j = 0; j < features_.size(); ++j) {
    const Feature& f = features_[j];
    WritePod<std::uint8_t>(out, static_cast<std::uint8_t>(f.kind));
    WritePod<std::uint32_t>(out, static_cast<std::uint32_t>(f.value.size()));
    out.write(f.value.data(), static_cast<std::streamsize>(f.value.size()));
    WritePod<std::int32_t>(out, f.char_cost);
    WriteMembers(out, pos_cov_[j]);
    WriteMembers(out, neg_cov_[j]);
  }
  if (!out) throw DataError("failed writing index");
}

CoverageIndex CoverageIndex::Load(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw DataError("not a coverage index file (bad magic)");
  }
  if (const auto version = ReadPod<std::uint32_t>(in);
      version != kFormatVersion) {
    throw DataError("unsupported index format version " +
                    std::to_string(version));
  }
  const auto n_pos = ReadPod<std::uint64_t>(in);
  const auto n_neg = ReadPod<std::uint64_t>(in);
  const auto n_features = ReadPod<std::uint64_t>(in);
  std::vector<Feature> features;
  std::vector<DocSet> pos, neg;
  for (std::uint64_t j = 0; j < n_features; ++j) {
    Feature f;
    const auto kind = ReadPod<std::uint8_t>(in);
    if (kind > static_cast<std::uint8_t>(FeatureKind::kTerm)) {
      throw DataError("corrupt index file: bad feature kind");
    }
    f.kind = static_cast<FeatureKind>(kind);
    f.value.resize(ReadPod<std::uint32_t>(in));
    if (!in.read(f.value.data(), static_cast<std::streamsize>(f.value.size()))) {
      throw DataError("truncated index file");
    }
    f.char_cost = ReadPod<std::int32_t>(in);
    features.push_back(std::move(f));
    pos.push_back(ReadMembers(in, n_pos));
    neg.push_back(ReadMembers(in, n_neg));
  }
  return CoverageIndex(std::move(features), std::move(pos), std::move(neg),
                       n_pos, n_neg);
}

bool CoverageIndex::operator==(const CoverageIndex& other) const {
  if (n_pos_ != other.n_pos_ || n_neg_ != other.n_neg_ ||
      features_.size() != other.features_.size()) {
    return false;
  }
  for (std::size_t j = 0; j < features_.size(); ++j) {
    const Feature& a = features_[j];
    const Feature& b = other.features_[j];
    if (a.kind != b.kind || a.value != b.value || a.char_cost != b.char_cost ||
        !(pos_cov_[j] == other.pos_cov_[j]) ||
        !(neg_cov_[j] == other.neg_cov_[j])) {
      return false;
    }
  }
  return true;
}

CoverageIndex ExtractFeatures(const LabeledCorpus& corpus,
                              const ExtractOptions& options) {
  if (options.min_freq < 1) throw UsageError("min_freq must be >= 1");

  std::unordered_map<FeatureKey, Postings, FeatureKeyHash> postings;
  auto scan = [&](const std::vector<Document>& docs, bool positive) {
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const auto doc = static_cast<std::uint32_t>(i);
      ForEachFeature(docs[i], [&](FeatureKind kind, const std::string& value) {
        if (options.exclude_labeling && kind == FeatureKind::kHashtag &&
            corpus.labeling_hashtags.contains(value)) {
          return;
        }
        Postings& p = postings[FeatureKey{kind, value}];
        AddPosting(positive ? p.pos : p.neg, doc);
      });
    }
  };
  scan(corpus.positives, true);
  scan(corpus.negatives, false);

  using Entry = std::pair<const FeatureKey*, Postings*>;
  std::vector<Entry> kept;
  const auto min_freq = static_cast<std::size_t>(options.min_freq);
  for (auto& [key, p] : postings) {
    if (p.pos.size() + p.neg.size() >= min_freq) kept.emplace_back(&key, &p);
  }
  std::sort(kept.begin(), kept.end(), [](const Entry& a, const Entry& b) {
    const std::size_t fa = a.second->pos.size() + a.second->neg.size();
    const std::size_t fb = b.second->pos.size() + b.second->neg.size();
    if (fa != fb) return fa > fb;
    return *a.first < *b.first;
  });
  if (options.max_features > 0 && kept.size() > options.max_features) {
    kept.resize(options.max_features);
  }
  if (kept.empty()) {
    throw DataError("no feature occurs in at least " +
                    std::to_string(options.min_freq) + " of " +
                    std::to_string(corpus.size()) +
                    " documents; lower the frequency threshold");
  }

  std::vector<Feature> features;
  std::vector<DocSet> pos, neg;
  features.reserve(kept.size());
  for (auto& [key, p] : kept) {
    features.push_back(MakeFeature(key->kind, key->value));
    pos.emplace_back(corpus.positives.size(), std::move(p->pos));
    neg.emplace_back(corpus.negatives.size(), std::move(p->neg));
  }
  return CoverageIndex(std::move(features), std::move(pos), std::move(neg),
                       corpus.positives.size(), corpus.negatives.size());
}

}  // namespace qopt
