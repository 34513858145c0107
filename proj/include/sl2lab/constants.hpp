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

#ifndef SL2LAB_CONSTANTS_HPP
#define SL2LAB_CONSTANTS_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

#include "sl2lab/certified.hpp"
#include "sl2lab/freegrp.hpp"

namespace sl2lab::constants {

// Fixed constants of the bound chain.
struct Table {
  // Growth exponent in |H^(3)| >= |H|^{1+delta}, and the sharper variant.
  static mpq_class delta() { return mpq_class(1, 3024); }
  static mpq_class delta_sharp() { return mpq_class(1, 1512); }
  // Energy-to-approximate-subgroup constants: beta_i <= c1 |G|^{c2 delta0}.
  static constexpr long kC1Log2 = 2424;
  static constexpr long kC2 = 937;
  // c3 <= 2^14 c1.
  static constexpr long kC3Log2 = 2438;
  // Subgroups of SL_2(F_p) not satisfying the metabelian relation have order <= 120.
  static constexpr long kDicksonSmall = 120;
  // gamma_eff = gamma_raw / 2^9.
  static constexpr long kGammaScale = 512;
  // Stated coefficient of 1/gamma in the bound on the number of flattening steps.
  static constexpr long kJStated = 48060000;
  // Expansion criterion parameters for SL_2(F_p), p >= 17.
  static mpq_class d() { return mpq_class(1, 4); }
  static mpq_class c() { return mpq_class(1, 96); }
  static mpq_class epsilon() { return d() / 2; }
  static constexpr long kBabaiC = 3323;
};

// ln max ||s|| over the generating set; DomainError when every norm is 1.
Interval compute_tau_inv(const freegrp::GenSetZ& s);
Interval compute_tau(const freegrp::GenSetZ& s);

struct GammaPair {
  Interval raw;  // ln((2/sqrt 3) sqrt|S|) / ln max ||s||
  Interval eff;  // raw / 512
  bool eff_at_most_2m5 = false;
};

GammaPair compute_gamma(const freegrp::GenSetZ& s);
// Same from |S| and an enclosure of ln max ||s||.
GammaPair compute_gamma(size_t s_size, const Interval& tau_inv);

// delta1 = min(delta*gamma/(2c2+1), epsilon/(2c2)) / 2.
mpq_class flattening_delta1(const mpq_class& delta, const mpq_class& gamma, const mpq_class& epsilon);
Interval flattening_delta1(const Interval& delta, const Interval& gamma, const Interval& epsilon);

struct BoundReport {
  size_t s_size = 0;
  Interval tau_inv, tau;
  GammaPair gamma;
  Interval delta1;
  // j bounds: stated 48060000/gamma, the proof chain 8 max((2c2+1)/(delta gamma), 4c2/d),
  // and the variant 8 max(..., 16c2/(7d)); j_used is the largest.
  Interval j_stated, j_chain, j_statement, j_used;
  // log2 of d / (2^{j+4} c) with j = j_used; gap_log2.lo is the certified bound.
  Interval gap_log2;
  // 2^35 / gamma_raw, the exponent magnitude in the headline form.
  Interval stated_exponent;
  bool implies_stated_form = false;  // gap_log2.lo >= -stated_exponent
  bool exponent_at_most_2_36 = false;
};

BoundReport gap_bound(const freegrp::GenSetZ& s);

struct ThresholdTerm {
  std::string name;
  Interval log2_p;  // sufficient: log2 p >= log2_p.hi
};

struct ThresholdReport {
  std::vector<ThresholdTerm> terms;
  std::string binding;
  Interval log2_p;       // max over the terms
  Interval log2_log2_p;  // log2 of the above
  bool within_2_46 = false;
};

ThresholdReport p_threshold(const freegrp::GenSetZ& s, const BoundReport& b);

// Smallest x0 >= floor_x such that a(3x-1) - beta log2(u + v x) - kappa >= 0
// for every x >= x0 (upper enclosure). Requires a > 0, v > 0.
Interval solve_loglog_threshold(const Interval& a, const Interval& beta, const Interval& u, const Interval& v,
                                const Interval& kappa, const Interval& floor_x);

struct DiameterReport {
  Interval a_stated;          // ln(8 tau^{-1} / (|S|-1)) / ln(1 + delta)
  Interval coeff_log2_stated; // a_stated * log2 3
  Interval delta2;            // tau ln(|S|-1) / 8
  Interval a_derived;         // ln(1/delta2) / ln(1 + delta)
  Interval coeff_log2_derived;
  Interval validity;          // exp(2 / tau); the bound applies for p > validity
  uint64_t p_min = 0;         // smallest integer above validity.hi
};

DiameterReport diameter_bound(const freegrp::GenSetZ& s);

// ln 3 / ln(1 + delta).
Interval babai_constant(const mpq_class& delta);

// w = 4 * sum_{j=1}^{floor C} |S|^{j-1}.
mpz_class transfer_expansion(uint64_t s_size, const mpq_class& c);

}  // namespace sl2lab::constants

#endif  // SL2LAB_CONSTANTS_HPP
