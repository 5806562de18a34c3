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


#include "qopt/doc_set.h"

#include <cassert>

namespace qopt {

std::size_t DenseBitset::Count() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += std::popcount(w);
  return n;
}

DocSet::DocSet(std::size_t universe, std::vector<std::uint32_t> members)
    : universe_(universe), count_(members.size()) {
  assert(std::is_sorted(members.begin(), members.end()));
  assert(members.empty() || members.back() < universe);
  dense_ = count_ * 32 >= universe_ && count_ > 0;
  if (dense_) {
    words_.assign((universe_ + 63) / 64, 0);
    for (std::uint32_t m : members) words_[m >> 6] |= std::uint64_t{1} << (m & 63);
  } else {
    sparse_ = std::move(members);
  }
}

bool DocSet::Contains(std::size_t i) const {
  if (i >= universe_) return false;
  if (dense_) return (words_[i >> 6] >> (i & 63)) & 1;
  return std::binary_search(sparse_.begin(), sparse_.end(),
                            static_cast<std::uint32_t>(i));
}

std::size_t DocSet::CountNotIn(const DenseBitset& covered) const {
  assert(covered.size() == universe_);
  std::size_t n = 0;
  if (dense_) {
    const std::uint64_t* c = covered.words_.data();
    for (std::size_t w = 0; w < words_.size(); ++w) {
      n += std::popcount(words_[w] & ~c[w]);
    }
  } else {
    for (std::uint32_t m : sparse_) n += !covered.Test(m);
  }
  return n;
}

void DocSet::AddTo(DenseBitset& covered) const {
  assert(covered.size() == universe_);
  if (dense_) {
    for (std::size_t w = 0; w < words_.size(); ++w) covered.words_[w] |= words_[w];
  } else {
    for (std::uint32_t m : sparse_) covered.Set(m);
  }
}

std::vector<std::uint32_t> DocSet::Members() const {
  if (!dense_) return sparse_;
  std::vector<std::uint32_t> out;
  out.reserve(count_);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      out.push_back(static_cast<std::uint32_t>(w * 64 + std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

bool DocSet::operator==(const DocSet& other) const {
  return universe_ == other.universe_ && count_ == other.count_ &&
         Members() == other.Members();
}

}  // namespace qopt
