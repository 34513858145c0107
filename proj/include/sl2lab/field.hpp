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

#ifndef SL2LAB_FIELD_HPP
#define SL2LAB_FIELD_HPP

#include <cstdint>
#include <optional>

namespace sl2lab::groups {

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(uint64_t n);

class PrimeField {
 public:
  explicit PrimeField(uint32_t p);

  uint32_t p() const { return p_; }

  uint32_t reduce(int64_t x) const {
    int64_t r = x % static_cast<int64_t>(p_);
    return static_cast<uint32_t>(r < 0 ? r + p_ : r);
  }
  uint32_t add(uint32_t a, uint32_t b) const {
    uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
  uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  uint32_t mul(uint32_t a, uint32_t b) const {
    return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % p_);
  }
  uint32_t pow(uint32_t a, uint64_t e) const;
  // Throws DomainError on 0.
  uint32_t inv(uint32_t a) const;

  // Legendre symbol in {-1, 0, 1}. Requires odd p.
  int legendre(uint32_t a) const;
  bool is_square(uint32_t a) const { return legendre(a) >= 0; }
  // Tonelli-Shanks; nullopt for non-residues.
  std::optional<uint32_t> sqrt(uint32_t a) const;

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  uint32_t p_;
};

// a + b*sqrt(n) with n the smallest non-residue mod p.
struct Fp2 {
  uint32_t a = 0;
  uint32_t b = 0;
  bool operator==(const Fp2&) const = default;
  bool is_zero() const { return a == 0 && b == 0; }
};

class QuadExtField {
 public:
  explicit QuadExtField(const PrimeField& base);

  const PrimeField& base() const { return base_; }
  uint32_t nonresidue() const { return n_; }

  Fp2 embed(uint32_t x) const { return {x, 0}; }
  Fp2 add(Fp2 x, Fp2 y) const { return {base_.add(x.a, y.a), base_.add(x.b, y.b)}; }
  Fp2 sub(Fp2 x, Fp2 y) const { return {base_.sub(x.a, y.a), base_.sub(x.b, y.b)}; }
  Fp2 neg(Fp2 x) const { return {base_.neg(x.a), base_.neg(x.b)}; }
  Fp2 mul(Fp2 x, Fp2 y) const;
  Fp2 inv(Fp2 x) const;
  Fp2 frobenius(Fp2 x) const { return {x.a, base_.neg(x.b)}; }
  // Square root of a base-field element; always exists in F_{p^2}.
  Fp2 sqrt_base(uint32_t x) const;

 private:
  PrimeField base_;
  uint32_t n_;
};

}  // namespace sl2lab::groups

#endif  // SL2LAB_FIELD_HPP
