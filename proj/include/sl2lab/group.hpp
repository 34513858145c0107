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

#ifndef SL2LAB_GROUP_HPP
#define SL2LAB_GROUP_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "sl2lab/field.hpp"
#include "sl2lab/sl2.hpp"

namespace sl2lab {

// Elements of a finite group are indices in [0, order).
using Elem = uint32_t;

// Finite group over an indexed universe. Products go through a Cayley table
// when the group is small enough, otherwise through do_mul().
class FiniteGroup {
 public:
  static constexpr uint32_t kTableLimit = 2500;

  FiniteGroup(const FiniteGroup&) = delete;
  FiniteGroup& operator=(const FiniteGroup&) = delete;
  virtual ~FiniteGroup() = default;

  uint32_t order() const { return order_; }
  Elem identity() const { return identity_; }
  Elem mul(Elem x, Elem y) const {
    return table_.empty() ? do_mul(x, y) : table_[static_cast<size_t>(x) * order_ + y];
  }
  Elem inv(Elem x) const { return inverse_[x]; }
  Elem pow(Elem x, int64_t e) const;
  Elem commutator(Elem x, Elem y) const { return mul(mul(x, y), mul(inv(x), inv(y))); }
  bool has_table() const { return !table_.empty(); }

  virtual std::string name() const = 0;
  virtual std::string element_str(Elem x) const { return std::to_string(x); }

 protected:
  explicit FiniteGroup(uint32_t order) : order_(order) {}
  // Must be called at the end of the most-derived constructor: builds the
  // inverse map, the Cayley table (order <= kTableLimit), and spot-checks the
  // group axioms on random triples.
  void finalize();

  virtual Elem do_mul(Elem x, Elem y) const = 0;
  virtual Elem do_inv(Elem x) const = 0;
  virtual Elem do_identity() const = 0;

 private:
  uint32_t order_;
  Elem identity_ = 0;
  std::vector<Elem> inverse_;
  std::vector<Elem> table_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

namespace groups {

// SL_2(F_p) with a fixed bijective indexing of its p(p^2-1) elements.
class Sl2Group final : public FiniteGroup {
 public:
  static std::shared_ptr<const Sl2Group> create(uint32_t p);

  uint32_t p() const { return field_.p(); }
  const PrimeField& field() const { return field_; }
  Sl2ModP element(Elem x) const;
  Elem index(const Sl2ModP& g) const;
  std::string name() const override { return "SL2(F_" + std::to_string(p()) + ")"; }
  std::string element_str(Elem x) const override { return element(x).str(); }

  explicit Sl2Group(uint32_t p);

 protected:
  Elem do_mul(Elem x, Elem y) const override;
  Elem do_inv(Elem x) const override;
  Elem do_identity() const override;

 private:
  Sl2ModP decode(Elem x) const;

  PrimeField field_;
  std::vector<uint32_t> finv_;
  std::vector<Sl2ModP> cache_;
};

using Sl2GroupPtr = std::shared_ptr<const Sl2Group>;

// Additive group Z/n.
class CyclicGroup final : public FiniteGroup {
 public:
  explicit CyclicGroup(uint32_t n);
  std::string name() const override { return "Z/" + std::to_string(order()); }

 protected:
  Elem do_mul(Elem x, Elem y) const override;
  Elem do_inv(Elem x) const override;
  Elem do_identity() const override { return 0; }
};

// Multiplicative group (Z/n)^x, elements indexed by increasing residue.
class UnitGroup final : public FiniteGroup {
 public:
  explicit UnitGroup(uint32_t n);
  std::string name() const override { return "(Z/" + std::to_string(n_) + ")^x"; }
  std::string element_str(Elem x) const override { return std::to_string(units_[x]); }
  uint32_t residue(Elem x) const { return units_[x]; }

 protected:
  Elem do_mul(Elem x, Elem y) const override;
  Elem do_inv(Elem x) const override;
  Elem do_identity() const override { return 0; }

 private:
  static uint32_t count_units(uint32_t n);
  uint32_t n_;
  std::vector<uint32_t> units_;
  std::vector<int64_t> slot_;
};

// Symmetric group S_n for n <= 7, permutations in lexicographic order,
// composition (xy)(i) = x(y(i)).
class SymmetricGroup final : public FiniteGroup {
 public:
  explicit SymmetricGroup(uint32_t n);
  std::string name() const override { return "S" + std::to_string(n_); }
  std::string element_str(Elem x) const override;

 protected:
  Elem do_mul(Elem x, Elem y) const override;
  Elem do_inv(Elem x) const override;
  Elem do_identity() const override { return 0; }

 private:
  static uint32_t factorial(uint32_t n);
  uint32_t rank(const std::vector<uint8_t>& perm) const;

  uint32_t n_;
  std::vector<std::vector<uint8_t>> perms_;
};

}  // namespace groups
}  // namespace sl2lab

#endif  // SL2LAB_GROUP_HPP
