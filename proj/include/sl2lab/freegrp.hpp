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

#ifndef SL2LAB_FREEGRP_HPP
#define SL2LAB_FREEGRP_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sl2lab/certified.hpp"
#include "sl2lab/sl2.hpp"

namespace sl2lab::freegrp {

// Integer 2x2 matrix with arbitrary-precision entries.
struct Sl2Int {
  mpz_class a{1}, b{0}, c{0}, d{1};

  static Sl2Int from_entries(const groups::IntEntries& e) { return {e[0], e[1], e[2], e[3]}; }
  mpz_class det() const { return a * d - b * c; }
  Sl2Int inverse() const { return {d, -b, -c, a}; }
  bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }
  // Largest absolute entry.
  mpz_class max_abs_entry() const;
  groups::Sl2ModP mod(uint32_t p) const;
  std::string str() const;
  bool operator==(const Sl2Int& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
};

Sl2Int mul(const Sl2Int& x, const Sl2Int& y);

// Letters 2i and 2i+1 are mutually inverse generators.
using Letter = uint32_t;
inline Letter inverse_letter(Letter x) { return x ^ 1u; }

struct Word {
  std::vector<Letter> letters;
  size_t length() const { return letters.size(); }
  bool operator==(const Word&) const = default;
  auto operator<=>(const Word&) const = default;
};

bool is_reduced(const Word& w);
Word reduce(const Word& w);
Word concat(const Word& x, const Word& y);
Word invert(const Word& w);
Word commutator(const Word& x, const Word& y);
// Cyclically reduced primitive root r with w = u r^k u^{-1}, k >= 1; the
// empty word for the identity. Two words commute in the free group iff their
// roots are equal or mutually inverse (or one of them is trivial).
Word primitive_root(const Word& w);
bool commute(const Word& x, const Word& y);
// Renders letters as a, A, b, B, ... (capital = inverse).
std::string word_str(const Word& w);

// Symmetric generating set in SL_2(Z), ordered so that matrices 2i and 2i+1
// are mutual inverses.
class GenSetZ {
 public:
  // Rejects det != 1, the identity, -I and repeats. With close_inverses the
  // missing inverses are added, otherwise a missing inverse is an error.
  static GenSetZ from_entries(const std::vector<groups::IntEntries>& mats, bool close_inverses);
  // One matrix literal per line; blank lines and '#' comments are skipped.
  static GenSetZ parse(const std::string& text, bool close_inverses);
  static GenSetZ load_file(const std::string& path, bool close_inverses);
  static GenSetZ lubotzky();
  static GenSetZ standard();
  // Built-in name or file path.
  static GenSetZ resolve(const std::string& spec, bool close_inverses);

  size_t size() const { return mats_.size(); }
  uint32_t rank() const { return static_cast<uint32_t>(mats_.size() / 2); }
  const std::vector<Sl2Int>& matrices() const { return mats_; }
  const Sl2Int& operator[](size_t i) const { return mats_[i]; }
  // Reduction mod p, in letter order. Throws DomainError naming the colliding
  // pair when two letters reduce to the same matrix.
  std::vector<groups::Sl2ModP> mod(uint32_t p) const;

 private:
  std::vector<Sl2Int> mats_;
};

Sl2Int word_to_matrix(const GenSetZ& s, const Word& w);
groups::Sl2ModP word_mod_p(const std::vector<groups::Sl2ModP>& gens, const Word& w);

// Number of reduced words of length <= r in the free group of rank k.
mpz_class ball_size(uint32_t k, uint32_t r);
// Reduced words of length <= r in order of length, then letters. Throws
// BudgetError when the ball exceeds `budget` words.
std::vector<Word> ball(uint32_t k, uint32_t r, uint64_t budget);

// Enclosure of ln ||s|| for the operator norm, using
// ||s||^2 = (T + sqrt(T^2 - 4)) / 2 with T the sum of squared entries.
constants::Interval norm_log(const Sl2Int& s);

struct InjectivityReport {
  uint32_t p = 0;
  uint32_t radius = 0;
  size_t words = 0;
  bool injective = true;
  std::optional<std::pair<Word, Word>> collision;
};

InjectivityReport injectivity_check(const GenSetZ& s, uint32_t p, uint32_t r, uint64_t budget);

// Shortest nontrivial relation of length <= 2r among ball words, if any.
std::optional<Word> find_relation(const GenSetZ& s, uint32_t r, uint64_t budget);

// Number of length-n walks on the 2k-regular tree from the root to one fixed
// vertex at distance l, for l = 0..n.
std::vector<mpz_class> tree_walk_counts(uint32_t k, uint32_t n);

struct KestenReport {
  uint32_t k = 0;
  uint32_t n = 0;
  std::vector<mpq_class> probability;  // per vertex, indexed by distance
  mpq_class bound_squared;             // r^{-2n} = (2k-1)^n / k^{2n}
  bool holds = true;
  bool sums_to_one = true;
};

// Exact return/arrival probabilities of the simple walk on the 2k-regular tree
// versus Kesten's r^{-n} with r = 2k / (2 sqrt(2k-1)).
KestenReport kesten_bound_check(uint32_t k, uint32_t n);

}  // namespace sl2lab::freegrp

#endif  // SL2LAB_FREEGRP_HPP
