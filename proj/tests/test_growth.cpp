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

#include <map>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "sl2lab/growth.hpp"
#include "sl2lab/sampling.hpp"

using namespace sl2lab;
using namespace sl2lab::growth;
using groups::Sl2Group;
using groups::Sl2ModP;
using sampling::Rng;

namespace {

Elem el(const groups::Sl2GroupPtr& g, int64_t a, int64_t b, int64_t c, int64_t d) {
  return g->index(Sl2ModP::make(g->p(), a, b, c, d));
}

GroupSubset standard5(const groups::Sl2GroupPtr& g) {
  Elem u = el(g, 1, 1, 0, 1), l = el(g, 1, 0, 1, 1);
  return GroupSubset(g, {g->identity(), u, g->inv(u), l, g->inv(l)});
}

bool sreg_trace(uint32_t p, uint32_t t) { return t != 2 && t != p - 2; }

// {x : Tr x = Tr(y1^-1 x) = Tr(y2^-1 x) = t}, straight from the definition.
std::set<Elem> fiber_oracle(const groups::Sl2GroupPtr& g, uint32_t t, Elem y1, Elem y2) {
  std::set<Elem> out;
  Elem i1 = g->inv(y1), i2 = g->inv(y2);
  for (Elem x = 0; x < g->order(); ++x) {
    if (g->element(x).trace() == t && g->element(g->mul(i1, x)).trace() == t &&
        g->element(g->mul(i2, x)).trace() == t)
      out.insert(x);
  }
  return out;
}

}  // namespace

TEST_CASE("trace fibers partition the group and sreg fibers are conjugacy-closed") {
  auto g5 = Sl2Group::create(5);
  // t = 1: t^2 - 4 = 2 is a non-square mod 5, so the class is non-split of size p(p-1).
  CHECK(trace_fiber(g5, 1).size() == 20);
  CHECK(trace_fiber(g5, 0).size() == 30);
  for (uint32_t t = 0; t < 5; ++t) {
    size_t n = 0;
    for (Elem x = 0; x < g5->order(); ++x) n += g5->element(x).trace() == t;
    CHECK(trace_fiber(g5, t).size() == n);
  }
  for (uint32_t p : {5u, 7u, 11u, 13u}) {
    auto g = Sl2Group::create(p);
    size_t total = 0;
    for (uint32_t t = 0; t < p; ++t) {
      auto f = trace_fiber(g, t);
      total += f.size();
      for (auto x : f) CHECK(g->element(x).trace() == t);
      if (!sreg_trace(p, t) || p > 7) continue;
      for (Elem h = 0; h < g->order(); ++h) {
        for (auto x : f) REQUIRE(f.contains(g->mul(g->mul(h, x), g->inv(h))));
      }
    }
    CHECK(total == g->order());
  }
}

TEST_CASE("escape witnesses") {
  auto g = Sl2Group::create(7);
  Elem d = el(g, 2, 0, 0, 4);
  GroupSubset h(g, {g->identity(), d, g->inv(d), el(g, 1, 1, 0, 1), el(g, 1, 6, 0, 1)});
  auto w = escape_witness(h);
  REQUIRE(w.has_value());
  CHECK(sreg_trace(7, g->element(*w).trace()));
  CHECK(g->element(*w).trace() != 0);

  auto s = standard5(g);
  auto ws = escape_witness(s);
  REQUIRE(ws.has_value());
  uint32_t t = g->element(*ws).trace();
  CHECK(t != 0);
  CHECK(sreg_trace(7, t));
  auto ss = oracle::product_set(s, s);
  auto h3 = oracle::product_set(GroupSubset(g, std::vector<Elem>(ss.begin(), ss.end())), s);
  CHECK(h3.count(*ws) == 1);
  CHECK(escape_check(s).ok());
}

TEST_CASE("escape holds on sampled generating sets for p in {7, 11, 13}") {
  for (uint32_t p : {7u, 11u, 13u}) {
    auto g = Sl2Group::create(p);
    Rng rng(11, p);
    auto subs = sampling::discover_subgroups(g, rng, 20);
    for (uint64_t i = 0; i < 60; ++i) {
      auto h = sampling::sample_generating_set(g, i, rng, subs);
      CHECK(escape_check(h).ok());
    }
  }
}

TEST_CASE("p = 5 sharpness search reports a verifiable outcome") {
  auto g = Sl2Group::create(5);
  Rng rng(5);
  auto out = escape_sharpness_search(g, rng, 2000);
  CHECK(out.candidates > 0);
  CHECK(out.generating > 0);
  if (out.found) {
    GroupSubset h(g, out.example);
    CHECK(oracle::closure(h).size() == g->order());
    auto hh = oracle::product_set(h, h);
    auto h3 = oracle::product_set(GroupSubset(g, std::vector<Elem>(hh.begin(), hh.end())), h);
    for (auto x : h3) {
      uint32_t t = g->element(x).trace();
      CHECK((t == 0 || t == 2 || t == 3));
    }
  }
}

TEST_CASE("non-concentration and subgroup-key checks at H = G") {
  // 56^3 <= 343 * 336^2 for the split class mod 7.
  CHECK(mpz_class(56 * 56 * 56) <= mpz_class(343) * 336 * 336);
  auto g = Sl2Group::create(7);
  auto whole = GroupSubset::whole(g);
  CHECK(nonconcentration_check(whole, el(g, 2, 0, 0, 4)).ok());
  CHECK(subkey_check(whole, g->identity(), 1).ok());
  CHECK(subkey_check(GroupSubset::identity(g), g->identity(), 1).ok());
  // left side at H = G, gamma = 1 is the unipotent line, p elements
  auto r = subkey_check(whole, g->identity(), 1);
  bool seen = false;
  for (const auto& [k, v] : r.facts) {
    if (k == "count") {
      CHECK(v == "7");
      seen = true;
    }
  }
  CHECK(seen);
}

TEST_CASE("dichotomy at H = {1} and H = G") {
  auto g = Sl2Group::create(7);
  // first element whose characteristic polynomial has non-square discriminant
  Elem ns = 0;
  for (Elem x = 0; x < g->order(); ++x) {
    auto m = g->element(x);
    uint32_t t = m.trace();
    uint64_t disc = (static_cast<uint64_t>(t) * t + 7 * 7 - 4) % 7;
    bool square = false;
    for (uint32_t y = 0; y < 7; ++y) square = square || (y * y) % 7 == disc;
    if (!square) {
      ns = x;
      break;
    }
  }
  auto t = groups::centralizer_torus(g, g->element(ns));
  CHECK_FALSE(t.split);
  CHECK(t.points.size() == 8);
  auto one = dichotomy_check(GroupSubset::identity(g), t);
  CHECK(one.ok());
  CHECK(dichotomy_check(GroupSubset::whole(g), t).ok());
}

TEST_CASE("growth lemmas on sampled sets mod 11 and 13") {
  for (uint32_t p : {11u, 13u}) {
    auto g = Sl2Group::create(p);
    Rng rng(3, p);
    auto subs = sampling::discover_subgroups(g, rng, 20);
    for (uint64_t i = 0; i < 30; ++i) {
      auto h = sampling::sample_generating_set(g, i, rng, subs);
      auto w = escape_witness(h);
      REQUIRE(w.has_value());
      auto torus = groups::centralizer_torus(g, g->element(*w));
      CHECK(nonconcentration_check(h, *w).ok());
      CHECK(subkey_check(h, sampling::random_element(*g, rng), 1 + rng.below(p - 1)).ok());
      CHECK(dichotomy_check(h, torus).ok());
      CHECK(orbit_stabilizer_check(h, *w).ok());
    }
  }
}

TEST_CASE("pink fiber: trivial y and the Borel example") {
  auto g = Sl2Group::create(7);
  Elem d = el(g, 2, 0, 0, 4);
  auto triv = pink_fiber(g, d, g->identity(), g->identity());
  CHECK(triv.tag == PinkCase::kTrivialY);
  CHECK(triv.fiber.size() == trace_fiber(g, 6).size());

  Elem u = el(g, 1, 1, 0, 1), u2 = el(g, 1, 2, 0, 1);
  auto rec = pink_fiber(g, d, u, u2);
  auto want = fiber_oracle(g, 6, u, u2);
  CHECK(std::set<Elem>(rec.fiber.begin(), rec.fiber.end()) == want);
  CHECK(want.size() > 2);
  CHECK(rec.tag == PinkCase::kBorel);
  for (auto x : rec.fiber) CHECK(g->element(x).c == 0);  // (1, 0) is a common eigenvector
  REQUIRE(rec.y_membership.has_value());
}

TEST_CASE("pink fiber exhaustive at p = 5 has no unexplained large fiber") {
  auto g = Sl2Group::create(5);
  for (uint32_t t : {0u, 1u, 4u}) {
    auto fib = trace_fiber(g, t);
    Elem rep = fib.elements().front();
    std::map<PinkCase, uint64_t> tally;
    for (Elem y1 = 0; y1 < g->order(); ++y1) {
      for (Elem y2 = 0; y2 < g->order(); ++y2) {
        auto rec = pink_fiber(g, fib, rep, y1, y2);
        ++tally[rec.tag];
        CHECK((rec.fiber.size() <= 2) == (rec.tag == PinkCase::kSmall));
        if (y1 % 17 == 0 && y2 % 13 == 0) {
          CHECK(std::set<Elem>(rec.fiber.begin(), rec.fiber.end()) == fiber_oracle(g, t, y1, y2));
        }
      }
    }
    CHECK(tally[PinkCase::kUnexplained] == 0);
  }
}

TEST_CASE("quasirandomness threshold") {
  auto g5 = Sl2Group::create(5);
  std::vector<Elem> most;
  for (Elem x = 0; x < g5->order(); ++x) {
    if (x != el(g5, 1, 1, 0, 1)) most.push_back(x);
  }
  // 119^9 < 2^9 120^8: below threshold
  auto r = qr_check(GroupSubset(g5, most));
  CHECK(r.ok());
  CHECK(mpz_class(119) * 119 * 119 * 119 * 119 * 119 * 119 * 119 * 119 <
        mpz_class(512) * 120 * 120 * 120 * 120 * 120 * 120 * 120 * 120);
  CHECK(r.clauses.empty());
  CHECK(qr_check(GroupSubset::whole(g5)).ok());

  auto g = Sl2Group::create(11);
  Rng rng(9);
  auto h = sampling::random_symmetric_set(g, 1200, rng);
  auto rr = qr_check(h);
  REQUIRE(rr.clauses.size() == 1);
  CHECK(rr.ok());
  CHECK(oracle::power_size(h, 3) == g->order());
}

TEST_CASE("growth verdicts") {
  auto g = Sl2Group::create(7);
  CHECK(helfgott_check(GroupSubset::whole(g)).verdict == GrowthCase::kTripleIsG);
  auto s = standard5(g);
  auto v = helfgott_check(s, true);
  CHECK(v.verdict == GrowthCase::kGrowthHolds);
  CHECK(v.exponent_check);
  REQUIRE(v.sharp_check.has_value());
  CHECK(*v.sharp_check);
  CHECK(v.triple_size == oracle::power_size(s, 3));
  CHECK(v.ratio == mpq_class(oracle::power_size(s, 3), 5));

  for (uint32_t p : {7u, 11u}) {
    auto gp = Sl2Group::create(p);
    Rng rng(17, p);
    auto subs = sampling::discover_subgroups(gp, rng, 20);
    for (uint64_t i = 0; i < 30; ++i) {
      auto h = sampling::sample_generating_set(gp, i, rng, subs);
      CHECK(helfgott_check(h).verdict != GrowthCase::kViolation);
    }
  }
}

TEST_CASE("diameter bound") {
  auto g = Sl2Group::create(5);
  auto r = babai_check(standard5(g));
  CHECK(r.ok());
  std::vector<Elem> all;
  for (Elem x = 0; x < g->order(); ++x) all.push_back(x);
  auto rw = babai_check(GroupSubset(g, all));
  CHECK(rw.ok());
  bool seen = false;
  for (const auto& [k, val] : rw.facts) {
    if (k == "diameter") {
      CHECK(val == "1");
      seen = true;
    }
  }
  CHECK(seen);
}
