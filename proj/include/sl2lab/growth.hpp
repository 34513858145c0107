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

#ifndef SL2LAB_GROWTH_HPP
#define SL2LAB_GROWTH_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "sl2lab/group.hpp"
#include "sl2lab/report.hpp"
#include "sl2lab/sampling.hpp"
#include "sl2lab/subset.hpp"
#include "sl2lab/torus.hpp"

namespace sl2lab::growth {

// The SL2 group a subset lives in; DomainError for other groups.
const groups::Sl2Group& sl2_of(const GroupSubset& h);
uint32_t trace_of(const groups::Sl2Group& g, Elem x);

// {x : Tr x = t}.
GroupSubset trace_fiber(const groups::Sl2GroupPtr& g, uint32_t t);

// Some x in H^(3) with Tr x not in {0, 2, -2}; H symmetric generating with 1.
std::optional<Elem> escape_witness(const GroupSubset& h);
// Asserts a witness exists when p >= 7; for smaller p the outcome is a fact.
CheckReport escape_check(const GroupSubset& h);

struct SharpnessOutcome {
  bool found = false;
  std::vector<Elem> example;  // a generating H with no sreg element in H^(3)
  uint64_t candidates = 0;
  uint64_t generating = 0;
};

// Looks for symmetric generating H containing 1 with H^(3) free of sreg
// elements: every {1, a^±1, b^±1} with a from a set of conjugacy class
// representatives, with and without -1 adjoined, then random larger sets.
SharpnessOutcome escape_sharpness_search(const groups::Sl2GroupPtr& g, sampling::Rng& rng, uint64_t random_budget);

// |Cl(g) cap H|^3 <= 343 alpha^2 |H|^2, or alpha^28 > |H|, with alpha = trp(H).
CheckReport nonconcentration_check(const GroupSubset& h, Elem g);
// |H cap x C_gamma x^{-1}|^3 <= 8 alpha^6 |H|, C_gamma = {[[gamma, t], [0, 1/gamma]]}.
CheckReport subkey_check(const GroupSubset& h, Elem x, uint32_t gamma);
// Not involved: |H cap T| <= 4. Involved: 2744 alpha^12 |T_reg cap H^(2)|^3 >= |H|,
// or alpha^168 >= |H|.
CheckReport dichotomy_check(const GroupSubset& h, const groups::MaximalTorus& t);

enum class PinkCase { kSmall, kTrivialY, kBorel, kTraceZero, kUnexplained };
std::string pink_case_name(PinkCase c);

struct FiberRecord {
  Elem g = 0, y1 = 0, y2 = 0;
  std::vector<Elem> fiber;  // {x : Tr x = Tr(y1^-1 x) = Tr(y2^-1 x) = Tr g}
  PinkCase tag = PinkCase::kSmall;
  // When a common Borel exists: whether y1, y2 also lie in U cup t^2 U for it.
  std::optional<bool> y_membership;
};

FiberRecord pink_fiber(const groups::Sl2GroupPtr& g, Elem gel, Elem y1, Elem y2);
// Same, given the precomputed trace fiber of g.
FiberRecord pink_fiber(const groups::Sl2GroupPtr& g, const GroupSubset& trace_fib, Elem gel, Elem y1, Elem y2);

// If |H|^9 >= 2^9 |G|^8 then H^(3) = G.
CheckReport qr_check(const GroupSubset& h);

enum class GrowthCase { kTripleIsG, kGrowthHolds, kViolation };
std::string growth_case_name(GrowthCase c);

struct GrowthVerdict {
  GrowthCase verdict = GrowthCase::kViolation;
  mpq_class ratio;             // |H^(3)| / |H|
  bool exponent_check = false; // |H^(3)|^3024 >= |H|^3025
  std::optional<bool> sharp_check;  // 2^1512 |H^(3)|^3024 >= |H|^3026, p >= 7
  uint64_t size = 0, triple_size = 0;
};

GrowthVerdict helfgott_check(const GroupSubset& h, bool sharp = false);

// diam Cay(G, S) <= 3 (ln |G|)^3323, certified; S symmetric generating.
CheckReport babai_check(const GroupSubset& s);

// |C_G(g) cap H^(2)| |{h g h^-1}| >= |H|, H symmetric.
CheckReport orbit_stabilizer_check(const GroupSubset& h, Elem g);

}  // namespace sl2lab::growth

#endif  // SL2LAB_GROWTH_HPP
