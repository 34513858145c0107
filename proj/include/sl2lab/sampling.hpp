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

#ifndef SL2LAB_SAMPLING_HPP
#define SL2LAB_SAMPLING_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "sl2lab/group.hpp"
#include "sl2lab/subset.hpp"

namespace sl2lab::sampling {

uint64_t splitmix64(uint64_t x);

// mt19937_64 seeded through splitmix64 of (seed, stream). The engine output is
// fixed by the standard; bounded draws use our own rejection so that samples do
// not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(uint64_t seed, uint64_t stream = 0);
  uint64_t next() { return eng_(); }
  // Uniform in [0, n), n > 0.
  uint64_t below(uint64_t n);
  bool coin() { return next() >> 63; }
  Rng split(uint64_t stream) const { return Rng(seed_, stream_ * 0x9e3779b97f4a7c15ULL + stream + 1); }

 private:
  uint64_t seed_;
  uint64_t stream_;
  std::mt19937_64 eng_;
};

Elem random_element(const FiniteGroup& g, Rng& rng);
// Non-identity element.
Elem random_nonidentity(const FiniteGroup& g, Rng& rng);

// Symmetric set containing 1 with |A| >= size (one more when an involution
// tips the count).
GroupSubset random_symmetric_set(const GroupPtr& g, size_t size, Rng& rng);
// Random subset of the given size, no structure.
GroupSubset random_subset(const GroupPtr& g, size_t size, Rng& rng);

enum class SampleKind { kRandomSymmetric, kBallOfPair, kSubgroupPlusPair };

// Symmetric generating set with 1, drawn from one of three regimes: random
// symmetric sets, radius-1/2 balls around a random pair, and a discovered
// proper subgroup with one random symmetric pair added. Retries until the
// sample generates; throws BudgetError after max_tries.
GroupSubset sample_generating_set(const GroupPtr& g, SampleKind kind, Rng& rng,
                                  const std::vector<GroupSubset>& subgroups = {}, int max_tries = 1000);
// Cycles through the three kinds by sample index.
GroupSubset sample_generating_set(const GroupPtr& g, uint64_t index, Rng& rng,
                                  const std::vector<GroupSubset>& subgroups);

// Proper subgroups found as closures of random one- and two-element seeds,
// plus (for SL2) the Borel, split torus normalizer and non-split torus
// normalizer. Deduplicated, sorted by (order, elements).
std::vector<GroupSubset> discover_subgroups(const GroupPtr& g, Rng& rng, int seeds);

}  // namespace sl2lab::sampling

#endif  // SL2LAB_SAMPLING_HPP
