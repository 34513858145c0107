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

#include "sl2lab/sl2.hpp"

#include <cctype>

#include "sl2lab/error.hpp"

namespace sl2lab::groups {

namespace {

class LiteralParser {
 public:
  explicit LiteralParser(std::string_view s) : s_(s) {}

  IntEntries run() {
    IntEntries e;
    expect('[');
    expect('[');
    e[0] = integer();
    expect(',');
    e[1] = integer();
    expect(']');
    expect(',');
    expect('[');
    e[2] = integer();
    expect(',');
    e[3] = integer();
    expect(']');
    expect(']');
    skip_ws();
    if (i_ != s_.size()) fail("trailing characters");
    return e;
  }

 private:
  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("matrix literal '" + std::string(s_) + "': " + what + " at offset " +
                     std::to_string(i_));
  }
  void expect(char ch) {
    skip_ws();
    if (i_ >= s_.size() || s_[i_] != ch) fail(std::string("expected '") + ch + "'");
    ++i_;
  }
  mpz_class integer() {
    skip_ws();
    std::string digits;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) {
      if (s_[i_] == '-') digits.push_back('-');
      ++i_;
    }
    size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      digits.push_back(s_[i_]);
      ++i_;
    }
    if (i_ == start) fail("expected integer");
    return mpz_class(digits, 10);
  }

  std::string_view s_;
  size_t i_ = 0;
};

uint32_t mod_mpz(const mpz_class& x, uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), p);
  return static_cast<uint32_t>(r.get_ui());
}

}  // namespace

IntEntries parse_matrix_literal(std::string_view text) { return LiteralParser(text).run(); }

uint32_t Sl2ModP::det() const {
  const uint64_t q = p;
  return static_cast<uint32_t>((uint64_t{a} * d % q + q - uint64_t{b} * c % q) % q);
}

Sl2ModP Sl2ModP::make(uint32_t p, int64_t a, int64_t b, int64_t c, int64_t d) {
  PrimeField f(p);
  Sl2ModP g{p, f.reduce(a), f.reduce(b), f.reduce(c), f.reduce(d)};
  if (g.det() != 1 % p) throw DomainError("determinant of " + g.str() + " is not 1 mod " + std::to_string(p));
  return g;
}

Sl2ModP Sl2ModP::from_integers(uint32_t p, const IntEntries& e) {
  PrimeField f(p);
  Sl2ModP g{p, mod_mpz(e[0], p), mod_mpz(e[1], p), mod_mpz(e[2], p), mod_mpz(e[3], p)};
  if (g.det() != 1 % p) throw DomainError("determinant of " + g.str() + " is not 1 mod " + std::to_string(p));
  return g;
}

std::string Sl2ModP::str() const {
  return "[[" + std::to_string(a) + "," + std::to_string(b) + "],[" + std::to_string(c) + "," +
         std::to_string(d) + "]]";
}

Sl2ModP mul(const Sl2ModP& x, const Sl2ModP& y) {
  if (x.p != y.p) throw DomainError("field mismatch in product");
  const uint64_t p = x.p;
  return {x.p, static_cast<uint32_t>((uint64_t{x.a} * y.a + uint64_t{x.b} * y.c) % p),
          static_cast<uint32_t>((uint64_t{x.a} * y.b + uint64_t{x.b} * y.d) % p),
          static_cast<uint32_t>((uint64_t{x.c} * y.a + uint64_t{x.d} * y.c) % p),
          static_cast<uint32_t>((uint64_t{x.c} * y.b + uint64_t{x.d} * y.d) % p)};
}

Sl2ModP pow(Sl2ModP x, int64_t e) {
  if (e < 0) {
    x = x.inverse();
    e = -e;
  }
  Sl2ModP r = Sl2ModP::identity(x.p);
  while (e) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

Sl2ModP commutator(const Sl2ModP& x, const Sl2ModP& y) {
  return mul(mul(x, y), mul(x.inverse(), y.inverse()));
}

const char* kind_name(ElementKind k) {
  switch (k) {
    case ElementKind::kCentral:
      return "central";
    case ElementKind::kUnipotentLike:
      return "unipotent_like";
    case ElementKind::kRegularSemisimple:
      return "regular_semisimple";
  }
  return "?";
}

ElementClass classify(const Sl2ModP& g) {
  ElementClass out;
  out.trace = g.trace();
  const uint64_t t = out.trace;
  bool t2_is_4 = (t * t) % g.p == 4 % g.p;
  if (!t2_is_4) {
    out.kind = ElementKind::kRegularSemisimple;
    out.sreg = t != 0;
  } else if (g.b == 0 && g.c == 0 && g.a == g.d) {
    out.kind = ElementKind::kCentral;
  } else {
    out.kind = ElementKind::kUnipotentLike;
  }
  return out;
}

}  // namespace sl2lab::groups
