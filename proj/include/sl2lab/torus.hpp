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

#ifndef SL2LAB_TORUS_HPP
#define SL2LAB_TORUS_HPP

#include <array>
#include <optional>
#include <vector>

#include "sl2lab/field.hpp"
#include "sl2lab/group.hpp"
#include "sl2lab/sl2.hpp"
#include "sl2lab/subset.hpp"

namespace sl2lab::groups {

struct MaximalTorus {
  Sl2ModP representative;
  GroupSubset points;  // centralizer of the representative in SL_2(F_p)
  bool split = false;  // eigenvalues in F_p
};

// Above this order the centralizer uses {aI + bg : a^2 + abt + b^2 = 1}.
constexpr uint32_t kCentralizerEnumLimit = 100'000;

// Throws DomainError unless g is regular semisimple.
MaximalTorus centralizer_torus(const Sl2GroupPtr& group, const Sl2ModP& g);

// True iff H meets T in a regular semisimple element of non-zero trace.
bool involved(const GroupSubset& h, const MaximalTorus& t);

struct TorusFacts {
  uint32_t order = 0;
  bool order_matches_split = false;     // p-1 split, p+1 non-split
  uint32_t nonregular_count = 0;        // expected 2 (the elements +-I)
  uint64_t normalizer_order = 0;        // expected 2|T|
  bool same_centralizer = false;        // each rss point has centralizer T
  uint32_t pairs_checked = 0;
  uint32_t overlapping_pairs = 0;       // distinct tori sharing a regular point
  bool ok() const {
    return order_matches_split && nonregular_count == 2 && normalizer_order == 2ull * order &&
           same_centralizer && overlapping_pairs == 0;
  }
};

// Enumerative check of the structure facts for T; `others` supplies tori for
// the disjointness test of regular parts.
TorusFacts torus_facts_check(const Sl2GroupPtr& group, const MaximalTorus& t,
                             const std::vector<MaximalTorus>& others);

using Line = std::array<Fp2, 2>;

// Common eigenvector over F_{p^2} of all matrices (normalized so that the
// first non-zero coordinate is 1), or nullopt.
std::optional<Line> common_borel(const std::vector<Sl2ModP>& xs);

// Eigenvalue of g on the eigenline v (v must be an eigenvector).
Fp2 eigenvalue_on_line(const QuadExtField& f, const Sl2ModP& g, const Line& v);

// Eigenlines of a non-scalar matrix over F_{p^2} (one or two).
std::vector<Line> eigenlines(const QuadExtField& f, const Sl2ModP& g);

}  // namespace sl2lab::groups

#endif  // SL2LAB_TORUS_HPP
