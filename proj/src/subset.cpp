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

#include "sl2lab/subset.hpp"

#include <algorithm>
#include <atomic>
#include <string>

#include "sl2lab/error.hpp"

namespace sl2lab {

namespace {
std::atomic<uint64_t> g_budget{kDefaultMemBudget};
}  // namespace

uint64_t mem_budget() { return g_budget.load(); }
void set_mem_budget(uint64_t budget) { g_budget.store(budget); }

std::vector<Elem> ElemBitset::to_vector() const {
  std::vector<Elem> out;
  out.reserve(count_);
  for (size_t w = 0; w < words_.size(); ++w) {
    uint64_t bits = words_[w];
    while (bits) {
      int b = __builtin_ctzll(bits);
      out.push_back(static_cast<Elem>(w * 64 + b));
      bits &= bits - 1;
    }
  }
  return out;
}

GroupSubset::GroupSubset(GroupPtr group, std::vector<Elem> members)
    : group_(std::move(group)), members_(std::move(members)) {
  if (!group_) throw DomainError("subset without a group");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.back() >= group_->order()) {
    throw DomainError("subset element outside the group");
  }
}

GroupSubset GroupSubset::whole(GroupPtr group) {
  std::vector<Elem> all(group->order());
  for (Elem x = 0; x < group->order(); ++x) all[x] = x;
  return GroupSubset(std::move(group), std::move(all));
}

GroupSubset GroupSubset::identity(GroupPtr group) {
  Elem e = group->identity();
  return GroupSubset(std::move(group), {e});
}

bool GroupSubset::contains(Elem x) const {
  return std::binary_search(members_.begin(), members_.end(), x);
}

ElemBitset GroupSubset::bitset() const {
  ElemBitset bs(group_->order());
  for (Elem x : members_) bs.set(x);
  return bs;
}

void GroupSubset::check_same(const GroupSubset& other) const {
  if (group_ != other.group_) throw DomainError("subsets of different groups");
}

GroupSubset GroupSubset::inverse() const {
  std::vector<Elem> v;
  v.reserve(members_.size());
  for (Elem x : members_) v.push_back(group_->inv(x));
  return GroupSubset(group_, std::move(v));
}

bool GroupSubset::is_symmetric() const {
  for (Elem x : members_) {
    if (!contains(group_->inv(x))) return false;
  }
  return true;
}

bool GroupSubset::is_subset_of(const GroupSubset& other) const {
  check_same(other);
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
}

GroupSubset GroupSubset::intersect(const GroupSubset& other) const {
  check_same(other);
  std::vector<Elem> v;
  std::set_intersection(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                        std::back_inserter(v));
  return GroupSubset(group_, std::move(v));
}

GroupSubset GroupSubset::unite(const GroupSubset& other) const {
  check_same(other);
  std::vector<Elem> v;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                 std::back_inserter(v));
  return GroupSubset(group_, std::move(v));
}

GroupSubset GroupSubset::left_translate(Elem x) const {
  std::vector<Elem> v;
  v.reserve(members_.size());
  for (Elem a : members_) v.push_back(group_->mul(x, a));
  return GroupSubset(group_, std::move(v));
}

GroupSubset GroupSubset::right_translate(Elem x) const {
  std::vector<Elem> v;
  v.reserve(members_.size());
  for (Elem a : members_) v.push_back(group_->mul(a, x));
  return GroupSubset(group_, std::move(v));
}

GroupSubset GroupSubset::symmetrized_with_identity() const {
  std::vector<Elem> v = members_;
  for (Elem x : members_) v.push_back(group_->inv(x));
  v.push_back(group_->identity());
  return GroupSubset(group_, std::move(v));
}

GroupSubset product(const GroupSubset& a, const GroupSubset& b) {
  if (a.group_ptr() != b.group_ptr()) throw DomainError("subsets of different groups");
  const FiniteGroup& g = a.group();
  const uint64_t cap = std::min<uint64_t>(g.order(), uint64_t{a.size()} * b.size());
  if (cap > mem_budget()) {
    throw BudgetError("product set may reach " + std::to_string(cap) + " elements, budget " +
                      std::to_string(mem_budget()));
  }
  ElemBitset bs(g.order());
  for (Elem x : a) {
    for (Elem y : b) bs.set(g.mul(x, y));
    if (bs.count() == g.order()) break;
  }
  return GroupSubset(a.group_ptr(), bs.to_vector());
}

GroupSubset power(const GroupSubset& a, int n) {
  if (n < 1) throw DomainError("product set power must be >= 1");
  GroupSubset r = a;
  for (int i = 1; i < n; ++i) {
    if (r.is_whole()) break;
    r = product(r, a);
  }
  return r;
}

std::vector<uint64_t> representation_counts(const GroupSubset& a, const GroupSubset& b) {
  if (a.group_ptr() != b.group_ptr()) throw DomainError("subsets of different groups");
  const FiniteGroup& g = a.group();
  std::vector<uint64_t> r(g.order(), 0);
  for (Elem x : a) {
    for (Elem y : b) ++r[g.mul(x, y)];
  }
  return r;
}

GroupSubset generated_subgroup(const GroupSubset& a) {
  const FiniteGroup& g = a.group();
  if (g.order() > mem_budget()) throw BudgetError("group order exceeds the memory budget");
  ElemBitset seen(g.order());
  std::vector<Elem> queue{g.identity()};
  seen.set(g.identity());
  std::vector<Elem> gens;
  for (Elem x : a) {
    gens.push_back(x);
    gens.push_back(g.inv(x));
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  for (size_t i = 0; i < queue.size(); ++i) {
    for (Elem s : gens) {
      Elem y = g.mul(queue[i], s);
      if (seen.set(y)) queue.push_back(y);
    }
    if (seen.count() == g.order()) break;
  }
  return GroupSubset(a.group_ptr(), seen.to_vector());
}

bool generates(const GroupSubset& a) { return generated_subgroup(a).is_whole(); }

bool is_subgroup(const GroupSubset& k) {
  if (k.empty() || !k.contains_identity()) return false;
  const FiniteGroup& g = k.group();
  ElemBitset bs = k.bitset();
  for (Elem x : k) {
    if (!bs.test(g.inv(x))) return false;
    for (Elem y : k) {
      if (!bs.test(g.mul(x, y))) return false;
    }
  }
  return true;
}

}  // namespace sl2lab
