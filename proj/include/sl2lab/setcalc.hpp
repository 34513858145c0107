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

#ifndef SL2LAB_SETCALC_HPP
#define SL2LAB_SETCALC_HPP

#include <gmpxx.h>

#include <optional>

#include "sl2lab/report.hpp"
#include "sl2lab/subset.hpp"

namespace sl2lab::setcalc {

mpq_class qpow(const mpq_class& x, unsigned long n);
// Smallest k/den >= 1 with k integer and pred(k/den) true, pred monotone.
// Used to pick a short exact rational alpha above an irrational ratio.
mpq_class rational_ceiling_sqrt(const mpz_class& num, const mpz_class& den, unsigned long scale = 1000);

// |A^(3)| / |A|.
mpq_class tripling(const GroupSubset& a);

struct EnergyCertificate {
  mpz_class energy;
  uint64_t size_a = 0;
  uint64_t size_b = 0;
  // E^2 <= (|A||B|)^3.
  bool normalized_at_most_one() const;
  // e(A,B) >= 1/alpha, i.e. alpha^2 E^2 >= (|A||B|)^3.
  bool at_least_inverse(const mpq_class& alpha) const;
  // Smallest k/1000 (k integer, >= 1) with e(A,B) >= 1000/k.
  mpq_class alpha() const;
};

// E(A,B) = sum_g r(g)^2 with r(g) = #{(a,b) : ab = g}.
EnergyCertificate energy(const GroupSubset& a, const GroupSubset& b);

// Ruzsa distance d(A,B) = log(|AB^{-1}| / sqrt(|A||B|)), stored exactly.
struct RuzsaDistance {
  uint64_t product = 0;  // |A B^{-1}|
  uint64_t size_a = 0;
  uint64_t size_b = 0;
  // d(A,B) <= log alpha, i.e. |AB^{-1}|^2 <= alpha^2 |A||B|.
  bool at_most_log(const mpq_class& alpha) const;
  mpq_class alpha() const;  // smallest k/1000 >= 1 with d <= log(k/1000)
};

RuzsaDistance ruzsa_distance(const GroupSubset& a, const GroupSubset& b);

// Covering lemma. kRight: from |AB| <= alpha|A| get X in B with |X| <= alpha
// and B in A^{-1}AX (translates Ax disjoint). kLeft: from |BA| <= alpha|A| get
// Y in B with |Y| <= alpha and B in YAA^{-1} (translates yA disjoint).
enum class CoverSide { kRight, kLeft };

struct Cover {
  GroupSubset x;
  mpq_class alpha;  // |AB|/|A| or |BA|/|A|
  CheckReport report;
};

Cover ruzsa_cover(const GroupSubset& a, const GroupSubset& b, CoverSide side);

// H is an alpha-approximate subgroup witnessed by X: 1 in H, H = H^{-1},
// X = X^{-1}, X in HH, |X| <= alpha, HH in XH.
struct ApproxGroupWitness {
  GroupSubset h;
  GroupSubset x;
  mpq_class alpha;
};

CheckReport verify_approx(const ApproxGroupWitness& w);

struct TriplingResult {
  ApproxGroupWitness witness;  // alpha = 2 trp(A)^5
  mpq_class tripling;
  CheckReport report;
};

// H = A^(3) with X from the covering lemma on (A, H^(2)), symmetrized.
TriplingResult approx_from_tripling(const GroupSubset& a);

// {x : |A cap Ax| > |A| / (2 alpha^2)}.
GroupSubset tao_symmetry_set(const GroupSubset& a, const mpq_class& alpha);

struct Th46Result {
  GroupSubset s, h, x, y, y1, z;
  CheckReport report;
};

// From d(A, B^{-1}) <= log alpha: an approximate subgroup H with A in XH and
// B in HX, checked against gamma = 2^21 alpha^80, gamma1 = 2^28 alpha^104,
// gamma2 = 8 alpha^14 and trp(H) <= 2^10 alpha^40. Throws DomainError when the
// hypothesis fails.
Th46Result th46_construct(const GroupSubset& a, const GroupSubset& b, const mpq_class& alpha);

struct BgsResult {
  std::optional<GroupSubset> a1, b1;
  CheckReport report;  // inconclusive when no witness was found
};

// From e(A,B) >= 1/alpha: A1 in A, B1 in B with |A|^2 <= 128 alpha^2 |A1|^2,
// |B| <= 8 alpha |B1| and d(A1, B1^{-1}) <= log(2^23 alpha^9). Tries (A, B)
// first, then popularity-filtered subsets.
BgsResult bgs_witness(const GroupSubset& a, const GroupSubset& b, const mpq_class& alpha);

struct EnergyApproxResult {
  std::optional<GroupSubset> h;
  Elem x = 0, y = 0;
  CheckReport report;
};

// BGS, then the approximate-subgroup construction on (A1, B1), then coset
// selection. Checks |H| <= beta2|A|, |A| <= beta1|A cap xH|,
// |B| <= beta1|B cap Hy|, H a beta-approximate subgroup and trp(H) <= beta3 with
// beta = 2^1861 alpha^720, beta1 = 2^2424 alpha^937, beta2 = 2^325 alpha^126,
// beta3 = 2^930 alpha^360.
EnergyApproxResult energy_to_approx(const GroupSubset& a, const GroupSubset& b, const mpq_class& alpha);

// alpha_n <= alpha_3^{n-2}, trp(A^(2)) <= trp(A)^4, trp(A^(k)) <= trp(A)^{3k-3}
// for 3 <= k <= kmax. A symmetric.
CheckReport ruzsa_lemma_check(const GroupSubset& a, int n, int kmax = 3);
// H^(3) = G or |H^(3)|^2 >= 2|H|^2. H symmetric generating with 1.
CheckReport small_p_check(const GroupSubset& h);
// |H^(n+1)| |H^(2) cap K| >= |H| |H^(n) cap K|. H symmetric, K a subgroup.
CheckReport intersection_lemma_check(const GroupSubset& h, const GroupSubset& k, int n);
// The diagram rules on a triple: size bounds from a distance, triangle
// inequality, unfolding and folding, each with the tightest exact parameters.
CheckReport diagram_rules_check(const GroupSubset& a, const GroupSubset& b, const GroupSubset& c);

}  // namespace sl2lab::setcalc

#endif  // SL2LAB_SETCALC_HPP
