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

#ifndef SL2LAB_WALKS_HPP
#define SL2LAB_WALKS_HPP

#include <gmpxx.h>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sl2lab/freegrp.hpp"
#include "sl2lab/group.hpp"
#include "sl2lab/report.hpp"
#include "sl2lab/subset.hpp"

namespace sl2lab::walks {

// A probability distribution on a finite group with rational masses
// counts[x] / denominator.
struct Distribution {
  GroupPtr group;
  std::vector<mpz_class> counts;
  mpz_class denominator{1};

  static Distribution unit(GroupPtr group);     // point mass at 1
  static Distribution uniform(GroupPtr group);
  mpq_class probability(Elem x) const { return ratio(counts[x], denominator); }
  mpz_class total() const;
  size_t support_size() const;
};

// Exact path counts of the walk X_n = s_1 ... s_n, s_i uniform in gens.
struct WalkDistribution : Distribution {
  std::vector<Elem> gens;
  uint32_t steps = 0;
};

WalkDistribution walk(const GroupPtr& g, const std::vector<Elem>& gens, uint32_t n);
WalkDistribution walk(uint32_t p, const freegrp::GenSetZ& s, uint32_t n);
// One more step of the same walk.
WalkDistribution step(const WalkDistribution& d);

// sum_g P(X = g)^2.
mpq_class return_probability(const Distribution& d);
// Law of X1 X2 for independent X1, X2.
Distribution convolve(const Distribution& a, const Distribution& b);

// I = ceil(2 log2(2|G|)), the number of dyadic levels.
uint32_t dyadic_levels(uint64_t order);
// Level i < I when P(X = x) lies in (2^{-i-1}, 2^{-i}], level I otherwise.
std::vector<uint32_t> dyadic_level_of(const Distribution& d, uint32_t levels);

// Exact checks of the L^2-flattening bookkeeping for X1, X2:
//   rp(X1 X2) <= max(rp X1, rp X2);
//   |A_{j,i}| <= 2^{i+1} for i < I;
//   rp(X1 X2) <= 2^{3-2I} |G|^3 + 2 I^2 sum_{i,j<I} 2^{-2(i+j)} E(A_{1,i}, A_{2,j});
//   2^{-2(i+j)} E <= 16 rpp e(A_{1,i}, A_{2,j}) for every level pair;
//   for each alpha: 2^{-2(i+j)} E <= rpp / alpha unless both |A_{1,i}| >= 2^i/(2 sqrt alpha)
//   and |A_{2,j}| >= 2^j/(2 sqrt alpha).
CheckReport flattening_identities_check(const Distribution& d1, const Distribution& d2,
                                        const std::vector<mpq_class>& alphas = {1, 2, 4, 16, 256});

// P(X in xH).
mpq_class coset_mass(const Distribution& d, const GroupSubset& h, Elem x);

enum class DicksonClass { kSmall, kMetabelian, kViolation };
std::string dickson_class_name(DicksonClass c);

struct DicksonResult {
  DicksonClass cls = DicksonClass::kSmall;
  uint64_t order = 0;
  uint64_t commutators = 0;  // distinct [x, y], x, y in H
  bool relation = false;     // [[x1, x2], [x3, x4]] = 1 on all of H
  std::optional<std::array<Elem, 4>> counterexample;
};

// Proper subgroup H of SL2(F_p), p >= 5: small when |H| <= 120, otherwise
// checks [[x1, x2], [x3, x4]] = 1 on all quadruples. The check is exhaustive
// through the commutator set: the relation holds for all quadruples iff all
// commutators commute pairwise.
DicksonResult dickson_classify(const GroupSubset& h);

// W_m = reduced words of length <= m whose image mod p lies in H. Reports
// |W_m|, whether the two-step relation holds on W_m inside the free group,
// and when it does asserts |W_m| <= (4m+1)(8m+1).
CheckReport adhoc_ball_count(const freegrp::GenSetZ& s, uint32_t p, const GroupSubset& h, uint32_t m,
                             uint64_t budget);

// Compares max_x P(X_n = x) with |G|^{-c gamma_1} at n = floor(c floor(tau ln(p/2))),
// gamma_1 = tau ln(2 sqrt(|S|/3)) / 8, and reports whether p is in the
// guaranteed range p >= max(17, 2 exp(2/(c tau))).
CheckReport decay_inequality_eval(const freegrp::GenSetZ& s, uint32_t p, const mpq_class& c);

// For 2n < girth, the count at each g equals the tree count at its reduced
// word, which has length d(1, g).
CheckReport tree_agreement_check(const freegrp::GenSetZ& s, uint32_t p, uint32_t n);

}  // namespace sl2lab::walks

#endif  // SL2LAB_WALKS_HPP
