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

#include "sl2lab/field.hpp"

#include <string>

#include "sl2lab/error.hpp"

namespace sl2lab::groups {

namespace {

using u128 = unsigned __int128;

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<u128>(a) * b % m);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are deterministic for n < 3.3e24.
  for (uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(uint32_t p) : p_(p) {
  if (!is_prime(p)) throw DomainError("modulus " + std::to_string(p) + " is not prime");
}

uint32_t PrimeField::pow(uint32_t a, uint64_t e) const {
  return static_cast<uint32_t>(powmod(a, e, p_));
}

uint32_t PrimeField::inv(uint32_t a) const {
  if (a % p_ == 0) throw DomainError("inverse of zero");
  return pow(a, p_ - 2);
}

int PrimeField::legendre(uint32_t a) const {
  if (p_ == 2) throw DomainError("Legendre symbol needs an odd prime");
  a %= p_;
  if (a == 0) return 0;
  return pow(a, (p_ - 1) / 2) == 1 ? 1 : -1;
}

std::optional<uint32_t> PrimeField::sqrt(uint32_t a) const {
  a %= p_;
  if (p_ == 2 || a == 0) return a;
  if (legendre(a) != 1) return std::nullopt;
  if (p_ % 4 == 3) return pow(a, (p_ + 1) / 4);
  uint32_t q = p_ - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  uint32_t z = 2;
  while (legendre(z) != -1) ++z;
  uint32_t m = s;
  uint32_t c = pow(z, q);
  uint32_t t = pow(a, q);
  uint32_t r = pow(a, (q + 1) / 2);
  while (t != 1) {
    uint32_t i = 0;
    uint32_t t2 = t;
    while (t2 != 1) {
      t2 = mul(t2, t2);
      ++i;
    }
    uint32_t b = c;
    for (uint32_t j = 0; j + i + 1 < m; ++j) b = mul(b, b);
    m = i;
    c = mul(b, b);
    t = mul(t, c);
    r = mul(r, b);
  }
  return r;
}

QuadExtField::QuadExtField(const PrimeField& base) : base_(base), n_(0) {
  if (base.p() == 2) throw DomainError("quadratic extension requires an odd prime");
  for (uint32_t x = 2; x < base.p(); ++x) {
    if (base.legendre(x) == -1) {
      n_ = x;
      break;
    }
  }
  if (base_.legendre(n_) != -1) throw DomainError("no non-residue found");
}

Fp2 QuadExtField::mul(Fp2 x, Fp2 y) const {
  const auto& f = base_;
  return {f.add(f.mul(x.a, y.a), f.mul(n_, f.mul(x.b, y.b))),
          f.add(f.mul(x.a, y.b), f.mul(x.b, y.a))};
}

Fp2 QuadExtField::inv(Fp2 x) const {
  const auto& f = base_;
  uint32_t norm = f.sub(f.mul(x.a, x.a), f.mul(n_, f.mul(x.b, x.b)));
  uint32_t ni = f.inv(norm);
  return {f.mul(x.a, ni), f.mul(f.neg(x.b), ni)};
}

Fp2 QuadExtField::sqrt_base(uint32_t x) const {
  if (auto r = base_.sqrt(x)) return {*r, 0};
  // x and n are both non-residues, so x/n is a square.
  auto r = base_.sqrt(base_.mul(x, base_.inv(n_)));
  return {0, *r};
}

}  // namespace sl2lab::groups
