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

#include "sl2lab/sampling.hpp"

#include <algorithm>
#include <set>

#include "sl2lab/error.hpp"
#include "sl2lab/torus.hpp"

namespace sl2lab::sampling {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(uint64_t seed, uint64_t stream)
    : seed_(seed), stream_(stream), eng_(splitmix64(splitmix64(seed) ^ stream)) {}

uint64_t Rng::below(uint64_t n) {
  if (n == 0) throw DomainError("Rng::below(0)");
  // Reject the top partial block.
  uint64_t limit = UINT64_MAX - (UINT64_MAX % n + 1) % n;
  for (;;) {
    uint64_t x = next();
    if (x <= limit) return x % n;
  }
}

Elem random_element(const FiniteGroup& g, Rng& rng) { return static_cast<Elem>(rng.below(g.order())); }

Elem random_nonidentity(const FiniteGroup& g, Rng& rng) {
  if (g.order() < 2) throw DomainError("trivial group has no non-identity element");
  for (;;) {
    Elem x = random_element(g, rng);
    if (x != g.identity()) return x;
  }
}

GroupSubset random_symmetric_set(const GroupPtr& g, size_t size, Rng& rng) {
  size = std::min<size_t>(size, g->order());
  ElemBitset bits(g->order());
  bits.set(g->identity());
  while (bits.count() < size) {
    Elem x = random_element(*g, rng);
    bits.set(x);
    bits.set(g->inv(x));
  }
  return GroupSubset(g, bits.to_vector());
}

GroupSubset random_subset(const GroupPtr& g, size_t size, Rng& rng) {
  size = std::min<size_t>(size, g->order());
  ElemBitset bits(g->order());
  while (bits.count() < size) bits.set(random_element(*g, rng));
  return GroupSubset(g, bits.to_vector());
}

namespace {

GroupSubset pair_set(const GroupPtr& g, Elem a, Elem b) {
  return GroupSubset(g, {g->identity(), a, g->inv(a), b, g->inv(b)});
}

GroupSubset draw(const GroupPtr& g, SampleKind kind, Rng& rng, const std::vector<GroupSubset>& subgroups) {
  const uint32_t n = g->order();
  switch (kind) {
    case SampleKind::kRandomSymmetric: {
      // Sizes skewed small: the interesting regime is |H| well below |G|.
      uint64_t cap = std::max<uint64_t>(4, n / 4);
      uint64_t size = 3 + rng.below(rng.coin() ? std::min<uint64_t>(cap, 40) : cap);
      return random_symmetric_set(g, size, rng);
    }
    case SampleKind::kBallOfPair: {
      GroupSubset s = pair_set(g, random_nonidentity(*g, rng), random_nonidentity(*g, rng));
      return rng.below(3) == 0 ? power(s, 2) : s;
    }
    case SampleKind::kSubgroupPlusPair: {
      if (subgroups.empty()) return draw(g, SampleKind::kRandomSymmetric, rng, subgroups);
      const GroupSubset& k = subgroups[rng.below(subgroups.size())];
      Elem x = random_nonidentity(*g, rng);
      GroupSubset extra(g, {g->identity(), x, g->inv(x)});
      return k.unite(extra);
    }
  }
  throw DomainError("unknown sample kind");
}

}  // namespace

GroupSubset sample_generating_set(const GroupPtr& g, SampleKind kind, Rng& rng,
                                  const std::vector<GroupSubset>& subgroups, int max_tries) {
  for (int t = 0; t < max_tries; ++t) {
    GroupSubset h = draw(g, kind, rng, subgroups);
    if (generates(h)) return h;
  }
  throw BudgetError("no generating sample after " + std::to_string(max_tries) + " tries");
}

GroupSubset sample_generating_set(const GroupPtr& g, uint64_t index, Rng& rng,
                                  const std::vector<GroupSubset>& subgroups) {
  static constexpr SampleKind kinds[] = {SampleKind::kRandomSymmetric, SampleKind::kBallOfPair,
                                         SampleKind::kSubgroupPlusPair};
  return sample_generating_set(g, kinds[index % 3], rng, subgroups);
}

namespace {

std::vector<GroupSubset> sl2_structured(const groups::Sl2GroupPtr& g) {
  std::vector<GroupSubset> out;
  const uint32_t p = g->p();
  if (p < 3) return out;
  const auto& f = g->field();
  // Primitive root: r^((p-1)/q) != 1 for every prime q | p-1.
  std::vector<uint32_t> qs;
  for (uint32_t m = p - 1, q = 2; m > 1; ++q) {
    if (m % q == 0) {
      qs.push_back(q);
      while (m % q == 0) m /= q;
    }
  }
  uint32_t r = 1;
  for (uint32_t c = 2; c < p; ++c) {
    if (std::all_of(qs.begin(), qs.end(), [&](uint32_t q) { return f.pow(c, (p - 1) / q) != 1; })) {
      r = c;
      break;
    }
  }
  GroupPtr gp = g;
  Elem diag = g->index(groups::Sl2ModP::make(p, r, 0, 0, f.inv(r)));
  Elem unip = g->index(groups::Sl2ModP::make(p, 1, 1, 0, 1));
  Elem w = g->index(groups::Sl2ModP::make(p, 0, 1, p - 1, 0));
  out.push_back(generated_subgroup(GroupSubset(gp, {diag, unip})));
  out.push_back(generated_subgroup(GroupSubset(gp, {diag, w})));
  // Non-split torus: centralizer of an element whose trace t has t^2 - 4 a nonresidue.
  for (uint64_t t = 0; t < p; ++t) {
    if (f.legendre(f.sub(f.mul(t, t), 4)) == -1) {
      groups::Sl2ModP x = groups::Sl2ModP::make(p, 0, 1, p - 1, t);
      groups::MaximalTorus tor = groups::centralizer_torus(g, x);
      std::vector<Elem> gens = tor.points.elements();
      // Normalizer: torus plus any element conjugating x to x^{-1}.
      Elem xi = g->index(x);
      for (Elem y = 0; y < g->order(); ++y) {
        if (g->mul(g->mul(y, xi), g->inv(y)) == g->inv(xi) && xi != g->inv(xi)) {
          gens.push_back(y);
          break;
        }
      }
      out.push_back(generated_subgroup(GroupSubset(gp, gens)));
      break;
    }
  }
  return out;
}

}  // namespace

std::vector<GroupSubset> discover_subgroups(const GroupPtr& g, Rng& rng, int seeds) {
  std::vector<GroupSubset> found;
  if (auto sl2 = std::dynamic_pointer_cast<const groups::Sl2Group>(g)) {
    for (auto& k : sl2_structured(sl2)) found.push_back(std::move(k));
  }
  for (int i = 0; i < seeds; ++i) {
    std::vector<Elem> seed{random_element(*g, rng)};
    if (i % 2) seed.push_back(random_element(*g, rng));
    GroupSubset k = generated_subgroup(GroupSubset(g, seed));
    found.push_back(std::move(k));
  }
  std::vector<GroupSubset> out;
  auto key_less = [](const GroupSubset& a, const GroupSubset& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements() < b.elements();
  };
  std::sort(found.begin(), found.end(), key_less);
  for (auto& k : found) {
    if (k.is_whole()) continue;
    if (!out.empty() && out.back() == k) continue;
    out.push_back(std::move(k));
  }
  return out;
}

}  // namespace sl2lab::sampling
