// Copyright 2026 The sl2lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SL2LAB_SUBSET_HPP
#define SL2LAB_SUBSET_HPP

#include <cstdint>
#include <vector>

#include "sl2lab/group.hpp"

namespace sl2lab {

// Default cap on the size of any enumerated product set.
constexpr uint64_t kDefaultMemBudget = 10'000'000;
uint64_t mem_budget();
void set_mem_budget(uint64_t budget);

// Dense membership bitmap over a group's universe.
class ElemBitset {
 public:
  explicit ElemBitset(uint32_t n) : n_(n), words_((n + 63) / 64, 0) {}
  bool test(Elem x) const { return (words_[x >> 6] >> (x & 63)) & 1; }
  // Returns true if the bit was newly set.
  bool set(Elem x) {
    uint64_t& w = words_[x >> 6];
    uint64_t m = uint64_t{1} << (x & 63);
    if (w & m) return false;
    w |= m;
    ++count_;
    return true;
  }
  uint32_t count() const { return count_; }
  uint32_t universe() const { return n_; }
  std::vector<Elem> to_vector() const;

 private:
  uint32_t n_;
  uint32_t count_ = 0;
  std::vector<uint64_t> words_;
};

// Immutable subset of a finite group, stored as a sorted index list.
class GroupSubset {
 public:
  GroupSubset(GroupPtr group, std::vector<Elem> members);
  static GroupSubset whole(GroupPtr group);
  static GroupSubset identity(GroupPtr group);

  const FiniteGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<Elem>& elements() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  bool contains(Elem x) const;
  bool is_whole() const { return members_.size() == group_->order(); }
  ElemBitset bitset() const;

  GroupSubset inverse() const;
  bool is_symmetric() const;
  bool contains_identity() const { return contains(group_->identity()); }
  bool is_subset_of(const GroupSubset& other) const;
  GroupSubset intersect(const GroupSubset& other) const;
  GroupSubset unite(const GroupSubset& other) const;
  GroupSubset left_translate(Elem x) const;   // xA
  GroupSubset right_translate(Elem x) const;  // Ax
  // A ∪ A^{-1} ∪ {1}
  GroupSubset symmetrized_with_identity() const;

  bool operator==(const GroupSubset& other) const {
    return group_ == other.group_ && members_ == other.members_;
  }

 private:
  void check_same(const GroupSubset& other) const;

  GroupPtr group_;
  std::vector<Elem> members_;
};

// A·B; throws BudgetError when the result would exceed mem_budget().
GroupSubset product(const GroupSubset& a, const GroupSubset& b);
// n-fold product A^(n), n >= 1.
GroupSubset power(const GroupSubset& a, int n);
// Number of representations r(g) = #{(a,b) : ab = g}, indexed by g.
std::vector<uint64_t> representation_counts(const GroupSubset& a, const GroupSubset& b);
// Subgroup generated by A (BFS closure).
GroupSubset generated_subgroup(const GroupSubset& a);
bool generates(const GroupSubset& a);
bool is_subgroup(const GroupSubset& k);

}  // namespace sl2lab

#endif  // SL2LAB_SUBSET_HPP
