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

#ifndef SL2LAB_SL2_HPP
#define SL2LAB_SL2_HPP

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "sl2lab/field.hpp"

namespace sl2lab::groups {

// Integer entries of a literal [[a,b],[c,d]], row-major.
using IntEntries = std::array<mpz_class, 4>;

// Parses "[[a,b],[c,d]]" with arbitrary-size signed integers; whitespace is
// ignored. Throws ParseError.
IntEntries parse_matrix_literal(std::string_view text);

// A 2x2 matrix of determinant one over F_p.
struct Sl2ModP {
  uint32_t p = 0;
  uint32_t a = 1, b = 0, c = 0, d = 1;

  static Sl2ModP identity(uint32_t p) { return {p, 1, 0, 0, 1}; }
  // Reduces the entries mod p and checks ad - bc = 1 (DomainError otherwise).
  static Sl2ModP make(uint32_t p, int64_t a, int64_t b, int64_t c, int64_t d);
  static Sl2ModP from_integers(uint32_t p, const IntEntries& e);
  static Sl2ModP parse(uint32_t p, std::string_view text) {
    return from_integers(p, parse_matrix_literal(text));
  }

  uint32_t trace() const { return (a + d) % p; }
  uint32_t det() const;
  bool is_scalar() const { return b == 0 && c == 0 && a == d; }
  Sl2ModP inverse() const { return {p, d, b ? p - b : 0, c ? p - c : 0, a}; }
  Sl2ModP negate() const { return {p, a ? p - a : 0, b ? p - b : 0, c ? p - c : 0, d ? p - d : 0}; }
  std::string str() const;

  bool operator==(const Sl2ModP&) const = default;
  auto operator<=>(const Sl2ModP&) const = default;
};

// Throws DomainError when the moduli differ.
Sl2ModP mul(const Sl2ModP& x, const Sl2ModP& y);
Sl2ModP pow(Sl2ModP x, int64_t e);
Sl2ModP commutator(const Sl2ModP& x, const Sl2ModP& y);

enum class ElementKind { kCentral, kUnipotentLike, kRegularSemisimple };
const char* kind_name(ElementKind k);

struct ElementClass {
  uint32_t trace = 0;
  ElementKind kind = ElementKind::kCentral;
  // Regular semisimple with non-zero trace.
  bool sreg = false;
};

ElementClass classify(const Sl2ModP& g);

inline bool is_regular_semisimple(const Sl2ModP& g) {
  return classify(g).kind == ElementKind::kRegularSemisimple;
}
inline bool is_sreg(const Sl2ModP& g) { return classify(g).sreg; }

}  // namespace sl2lab::groups

#endif  // SL2LAB_SL2_HPP
