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

#include "sl2lab/group.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <random>

#include "sl2lab/error.hpp"

namespace sl2lab {

Elem FiniteGroup::pow(Elem x, int64_t e) const {
  if (e < 0) {
    x = inv(x);
    e = -e;
  }
  Elem r = identity_;
  while (e) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

void FiniteGroup::finalize() {
  if (order_ == 0) throw DomainError("empty group");
  identity_ = do_identity();
  inverse_.resize(order_);
  for (Elem x = 0; x < order_; ++x) inverse_[x] = do_inv(x);
  if (order_ <= kTableLimit) {
    table_.resize(static_cast<size_t>(order_) * order_);
    for (Elem x = 0; x < order_; ++x) {
      for (Elem y = 0; y < order_; ++y) table_[static_cast<size_t>(x) * order_ + y] = do_mul(x, y);
    }
  }
  std::mt19937_64 rng(0x5eed0f9a);
  std::uniform_int_distribution<uint32_t> pick(0, order_ - 1);
  for (int t = 0; t < 64; ++t) {
    Elem x = pick(rng), y = pick(rng), z = pick(rng);
    if (mul(mul(x, y), z) != mul(x, mul(y, z))) throw DomainError(name() + ": associativity fails");
    if (mul(x, identity_) != x || mul(identity_, x) != x) throw DomainError(name() + ": bad identity");
    if (mul(x, inv(x)) != identity_) throw DomainError(name() + ": bad inverse");
  }
}

namespace groups {

std::shared_ptr<const Sl2Group> Sl2Group::create(uint32_t p) {
  // One live instance per p, so subsets built from separate calls are comparable.
  static std::mutex mu;
  static std::map<uint32_t, std::weak_ptr<const Sl2Group>> live;
  std::lock_guard<std::mutex> lock(mu);
  if (auto g = live[p].lock()) return g;
  auto g = std::make_shared<const Sl2Group>(p);
  live[p] = g;
  return g;
}

Sl2Group::Sl2Group(uint32_t p)
    : FiniteGroup([p] {
        if (!is_prime(p)) throw DomainError("modulus " + std::to_string(p) + " is not prime");
        uint64_t n = uint64_t{p} * (uint64_t{p} * p - 1);
        if (n > (uint64_t{1} << 31)) throw BudgetError("SL2(F_p) too large to index");
        return static_cast<uint32_t>(n);
      }()),
      field_(p) {
  finv_.assign(p, 0);
  for (uint32_t x = 1; x < p; ++x) finv_[x] = field_.inv(x);
  if (order() <= 4'000'000) {
    cache_.reserve(order());
    for (Elem x = 0; x < order(); ++x) cache_.push_back(decode(x));
  }
  finalize();
}

Sl2ModP Sl2Group::decode(Elem x) const {
  const uint32_t p = field_.p();
  const uint64_t split = uint64_t{p - 1} * p * p;
  if (x < split) {
    uint32_t a = static_cast<uint32_t>(x / (uint64_t{p} * p)) + 1;
    uint32_t b = (x / p) % p;
    uint32_t c = x % p;
    uint32_t d = field_.mul(field_.add(1, field_.mul(b, c)), finv_[a]);
    return {p, a, b, c, d};
  }
  uint32_t r = static_cast<uint32_t>(x - split);
  uint32_t b = r / p + 1;
  uint32_t d = r % p;
  uint32_t c = field_.neg(finv_[b]);
  return {p, 0, b, c, d};
}

Sl2ModP Sl2Group::element(Elem x) const {
  if (x >= order()) throw DomainError("element index out of range");
  return cache_.empty() ? decode(x) : cache_[x];
}

Elem Sl2Group::index(const Sl2ModP& g) const {
  const uint32_t p = field_.p();
  if (g.p != p) throw DomainError("field mismatch: element mod " + std::to_string(g.p) + " in " + name());
  if (g.a != 0) return static_cast<Elem>((uint64_t{g.a - 1} * p + g.b) * p + g.c);
  return static_cast<Elem>(uint64_t{p - 1} * p * p + uint64_t{g.b - 1} * p + g.d);
}

Elem Sl2Group::do_mul(Elem x, Elem y) const { return index(sl2lab::groups::mul(element(x), element(y))); }
Elem Sl2Group::do_inv(Elem x) const { return index(element(x).inverse()); }
Elem Sl2Group::do_identity() const { return index(Sl2ModP::identity(field_.p())); }

CyclicGroup::CyclicGroup(uint32_t n) : FiniteGroup(n) { finalize(); }
Elem CyclicGroup::do_mul(Elem x, Elem y) const {
  return static_cast<Elem>((uint64_t{x} + y) % order());
}
Elem CyclicGroup::do_inv(Elem x) const { return x == 0 ? 0 : order() - x; }

uint32_t UnitGroup::count_units(uint32_t n) {
  if (n < 2) throw DomainError("unit group needs n >= 2");
  uint32_t k = 0;
  for (uint32_t x = 1; x < n; ++x) k += std::gcd(x, n) == 1;
  return k;
}

UnitGroup::UnitGroup(uint32_t n) : FiniteGroup(count_units(n)), n_(n), slot_(n, -1) {
  for (uint32_t x = 1; x < n; ++x) {
    if (std::gcd(x, n) == 1) {
      slot_[x] = static_cast<int64_t>(units_.size());
      units_.push_back(x);
    }
  }
  finalize();
}

Elem UnitGroup::do_mul(Elem x, Elem y) const {
  return static_cast<Elem>(slot_[uint64_t{units_[x]} * units_[y] % n_]);
}

Elem UnitGroup::do_inv(Elem x) const {
  for (Elem y = 0; y < order(); ++y) {
    if (uint64_t{units_[x]} * units_[y] % n_ == 1 % n_) return y;
  }
  throw DomainError("unit without inverse");
}

uint32_t SymmetricGroup::factorial(uint32_t n) {
  if (n < 1 || n > 7) throw DomainError("symmetric group supported for 1 <= n <= 7");
  uint32_t f = 1;
  for (uint32_t i = 2; i <= n; ++i) f *= i;
  return f;
}

SymmetricGroup::SymmetricGroup(uint32_t n) : FiniteGroup(factorial(n)), n_(n) {
  std::vector<uint8_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    perms_.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  finalize();
}

uint32_t SymmetricGroup::rank(const std::vector<uint8_t>& perm) const {
  // Lehmer code.
  uint32_t r = 0;
  for (uint32_t i = 0; i < n_; ++i) {
    uint32_t smaller = 0;
    for (uint32_t j = i + 1; j < n_; ++j) smaller += perm[j] < perm[i];
    r = r * (n_ - i) + smaller;
  }
  return r;
}

Elem SymmetricGroup::do_mul(Elem x, Elem y) const {
  std::vector<uint8_t> r(n_);
  for (uint32_t i = 0; i < n_; ++i) r[i] = perms_[x][perms_[y][i]];
  return rank(r);
}

Elem SymmetricGroup::do_inv(Elem x) const {
  std::vector<uint8_t> r(n_);
  for (uint32_t i = 0; i < n_; ++i) r[perms_[x][i]] = static_cast<uint8_t>(i);
  return rank(r);
}

std::string SymmetricGroup::element_str(Elem x) const {
  std::string s = "(";
  for (uint32_t i = 0; i < n_; ++i) {
    if (i) s += ' ';
    s += std::to_string(perms_[x][i]);
  }
  return s + ")";
}

}  // namespace groups
}  // namespace sl2lab
