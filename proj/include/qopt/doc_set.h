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


#ifndef QOPT_DOC_SET_H_
#define QOPT_DOC_SET_H_

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qopt {

// Fixed-size dense bitset over document indices.
class DenseBitset {
 public:
  DenseBitset() = default;
  explicit DenseBitset(std::size_t size)
      : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  std::span<const std::uint64_t> words() const { return words_; }

  void Set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool Test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1;
  }
  void Clear() { std::fill(words_.begin(), words_.end(), 0); }
  std::size_t Count() const;

 private:
  friend class DocSet;
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

// An immutable set of document indices drawn from [0, universe). Sets denser
// than one member per 32 documents are stored as bitsets, sparser sets as
// sorted index lists; both answer the same queries.
class DocSet {
 public:
  DocSet() = default;
  // `members` must be sorted ascending, without duplicates.
  DocSet(std::size_t universe, std::vector<std::uint32_t> members);

  std::size_t universe() const { return universe_; }
  std::size_t Count() const { return count_; }
  bool empty() const { return count_ == 0; }
  bool is_dense() const { return dense_; }

  bool Contains(std::size_t i) const;

  // |this \ covered|: members a query would newly cover.
  std::size_t CountNotIn(const DenseBitset& covered) const;

  // covered |= this.
  void AddTo(DenseBitset& covered) const;

  std::vector<std::uint32_t> Members() const;

  bool operator==(const DocSet& other) const;

 private:
  std::size_t universe_ = 0;
  std::size_t count_ = 0;
  bool dense_ = false;
  std::vector<std::uint64_t> words_;
  std::vector<std::uint32_t> sparse_;
};

}  // namespace qopt

#endif  // QOPT_DOC_SET_H_
