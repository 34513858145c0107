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

#include <memory>

#include "doctest.h"
#include "oracles.hpp"
#include "sl2lab/error.hpp"
#include "sl2lab/freegrp.hpp"
#include "sl2lab/sampling.hpp"
#include "sl2lab/setcalc.hpp"

using namespace sl2lab;
using namespace sl2lab::setcalc;
using groups::Sl2Group;
using groups::Sl2ModP;
using sampling::Rng;

namespace {

Elem el(const groups::Sl2GroupPtr& g, int64_t a, int64_t b, int64_t c, int64_t d) {
  return g->index(Sl2ModP::make(g->p(), a, b, c, d));
}

GroupSubset unipotent3(const groups::Sl2GroupPtr& g) {
  Elem u = el(g, 1, 1, 0, 1);
  return GroupSubset(g, {g->identity(), u, g->inv(u)});
}

GroupSubset standard5(const groups::Sl2GroupPtr& g) {
  Elem u = el(g, 1, 1, 0, 1), l = el(g, 1, 0, 1, 1);
  return GroupSubset(g, {g->identity(), u, g->inv(u), l, g->inv(l)});
}

GroupSubset diagonal_torus(const groups::Sl2GroupPtr& g) {
  std::vector<Elem> v;
  for (uint32_t a = 1; a < g->p(); ++a) v.push_back(g->index(Sl2ModP::make(g->p(), a, 0, 0, g->field().inv(a))));
  return GroupSubset(g, v);
}

std::vector<GroupPtr> small_groups() {
  return {Sl2Group::create(5), std::make_shared<groups::SymmetricGroup>(5), std::make_shared<groups::CyclicGroup>(60),
          std::make_shared<groups::UnitGroup>(105), std::make_shared<groups::SymmetricGroup>(4)};
}

}  // namespace

TEST_CASE("rng is deterministic and bounded draws are in range") {
  Rng a(7), b(7), c(8);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    uint64_t x = a.next();
    CHECK(x == b.next());
    differs |= x != c.next();
  }
  CHECK(differs);
  Rng r(1);
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 7000; ++i) {
    uint64_t v = r.below(7);
    REQUIRE(v < 7);
    ++hist[v];
  }
  for (int h : hist) CHECK(h > 800);
  CHECK(Rng(3).split(1).next() == Rng(3).split(1).next());
  CHECK(Rng(3).split(1).next() != Rng(3).split(2).next());
}

TEST_CASE("samplers produce symmetric generating sets") {
  auto g = Sl2Group::create(7);
  Rng rng(11);
  auto subs = sampling::discover_subgroups(g, rng, 20);
  for (const auto& k : subs) {
    CHECK(is_subgroup(k));
    CHECK(!k.is_whole());
    CHECK(oracle::closure(k).size() == k.size());
  }
  for (uint64_t i = 0; i < 60; ++i) {
    GroupSubset h = sampling::sample_generating_set(g, i, rng, subs);
    CHECK(h.is_symmetric());
    CHECK(h.contains_identity());
    CHECK(oracle::closure(h).size() == g->order());
  }
}

TEST_CASE("subgroup discovery finds Borel and torus normalizers") {
  auto g = Sl2Group::create(11);
  Rng rng(2);
  auto subs = sampling::discover_subgroups(g, rng, 0);
  std::set<size_t> orders;
  for (const auto& k : subs) orders.insert(k.size());
  CHECK(orders.count(11 * 10));
  CHECK(orders.count(2 * 10));
  CHECK(orders.count(2 * 12));
}

TEST_CASE("product sets and tripling") {
  auto g = Sl2Group::create(7);
  GroupSubset a = unipotent3(g);
  CHECK(power(a, 3).size() == 7);
  CHECK(tripling(a) == mpq_class(7, 3));
  CHECK(tripling(GroupSubset::whole(g)) == 1);
  CHECK(power(GroupSubset::identity(g), 5).size() == 1);
  GroupSubset t = diagonal_torus(g);
  CHECK(power(t, 4) == t);
  CHECK(tripling(t) == 1);
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    GroupSubset x = sampling::random_symmetric_set(g, 2 + rng.below(12), rng);
    for (int n = 1; n <= 3; ++n) CHECK(power(x, n).size() == oracle::power_size(x, n));
  }
}

TEST_CASE("energy equals the quadruple count") {
  auto g = Sl2Group::create(5);
  GroupSubset t = diagonal_torus(g);
  EnergyCertificate e = energy(t, t);
  CHECK(e.energy == 4 * 4 * 4);
  CHECK(e.normalized_at_most_one());
  CHECK(e.alpha() == 1);
  Elem x = el(g, 1, 1, 0, 1);
  CHECK(energy(GroupSubset(g, {g->identity(), x}), GroupSubset::identity(g)).energy == 2);
  Rng rng(9);
  for (int i = 0; i < 40; ++i) {
    GroupSubset a = sampling::random_subset(g, 10, rng), b = sampling::random_subset(g, 1 + rng.below(10), rng);
    EnergyCertificate c = energy(a, b);
    CHECK(c.energy == oracle::energy_quadruples(a, b));
    CHECK(c.normalized_at_most_one());
    CHECK(c.energy >= a.size() * b.size());
    CHECK(c.at_least_inverse(c.alpha()));
    CHECK(!c.at_least_inverse(c.alpha() - mpq_class(1, 1000)));
  }
}

TEST_CASE("rational ceiling of a square root") {
  CHECK(rational_ceiling_sqrt(4, 1) == 2);
  CHECK(rational_ceiling_sqrt(2, 1) == mpq_class(283, 200));  // 1.415
  CHECK(rational_ceiling_sqrt(1, 4) == 1);  // clamped to 1
}

TEST_CASE("Ruzsa distance and the diagram rules") {
  auto g = Sl2Group::create(5);
  GroupSubset t = diagonal_torus(g);
  CHECK(ruzsa_distance(t, t).alpha() == 1);
  CHECK(ruzsa_distance(GroupSubset::identity(g), GroupSubset::identity(g)).alpha() == 1);
  for (const auto& grp : small_groups()) {
    Rng rng(21);
    for (int i = 0; i < 30; ++i) {
      auto pick = [&] { return sampling::random_subset(grp, 1 + rng.below(12), rng); };
      GroupSubset a = pick(), b = pick(), c = pick();
      RuzsaDistance d = ruzsa_distance(a, b);
      CHECK(d.product == oracle::product_set(a, b.inverse()).size());
      CheckReport r = diagram_rules_check(a, b, c);
      CHECK(r.ok());
    }
  }
}

TEST_CASE("Ruzsa covering lemma") {
  for (const auto& grp : small_groups()) {
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
      GroupSubset a = sampling::random_subset(grp, 1 + rng.below(15), rng);
      GroupSubset b = sampling::random_subset(grp, 1 + rng.below(15), rng);
      for (auto side : {CoverSide::kRight, CoverSide::kLeft}) {
        Cover c = ruzsa_cover(a, b, side);
        CHECK(c.report.ok());
        // Independent containment check.
        std::set<Elem> cov;
        const auto& gg = *grp;
        for (Elem x : c.x)
          for (Elem a1 : a)
            for (Elem a2 : a)
              cov.insert(side == CoverSide::kRight ? gg.mul(gg.mul(gg.inv(a1), a2), x)
                                                   : gg.mul(gg.mul(x, a1), gg.inv(a2)));
        for (Elem y : b) CHECK(cov.count(y));
      }
    }
  }
  auto g = Sl2Group::create(7);
  GroupSubset t = diagonal_torus(g);
  Cover c = ruzsa_cover(t, t, CoverSide::kRight);
  CHECK(c.x.size() == 1);
  CHECK(c.alpha == 1);
}

TEST_CASE("approximate subgroup from small tripling") {
  auto g = Sl2Group::create(7);
  GroupSubset t = diagonal_torus(g);
  TriplingResult r = approx_from_tripling(t);
  CHECK(r.report.ok());
  CHECK(r.witness.h == t);
  CHECK(r.witness.x.size() == 1);
  CHECK(r.witness.alpha == 2);
  TriplingResult u = approx_from_tripling(unipotent3(g));
  CHECK(u.tripling == mpq_class(7, 3));
  CHECK(u.report.ok());
  // Ball of radius 1 of the Lubotzky generators mod 11.
  auto g11 = Sl2Group::create(11);
  std::vector<Elem> ball{g11->identity()};
  for (const auto& m : freegrp::GenSetZ::lubotzky().mod(11)) ball.push_back(g11->index(m));
  TriplingResult b = approx_from_tripling(GroupSubset(g11, ball));
  CHECK(b.report.ok());
  CHECK(verify_approx(b.witness).ok());
  CHECK_THROWS_AS(approx_from_tripling(GroupSubset(g, {el(g, 1, 1, 0, 1)})), DomainError);
}

TEST_CASE("symmetry set") {
  auto g = Sl2Group::create(5);
  GroupSubset t = diagonal_torus(g);
  CHECK(tao_symmetry_set(t, 1) == t);
  CHECK(tao_symmetry_set(GroupSubset::identity(g), 1) == GroupSubset::identity(g));
  Rng rng(4);
  for (int i = 0; i < 30; ++i) {
    GroupSubset a = sampling::random_subset(g, 1 + rng.below(30), rng);
    mpq_class alpha(1 + rng.below(5), 1 + rng.below(2));
    if (alpha < 1) alpha = 1;
    GroupSubset s = tao_symmetry_set(a, alpha);
    CHECK(s.is_symmetric());
    CHECK(s.contains_identity());
    // Definition, directly.
    for (Elem x = 0; x < g->order(); ++x) {
      size_t inter = a.intersect(a.right_translate(x)).size();
      CHECK(s.contains(x) == (2 * alpha * alpha * inter > mpq_class(a.size())));
    }
  }
}

TEST_CASE("approximate subgroup from small Ruzsa distance") {
  auto g = Sl2Group::create(5);
  GroupSubset t = diagonal_torus(g);
  Th46Result r = th46_construct(t, t, 1);
  CHECK(r.report.ok());
  CHECK(t.is_subset_of(r.h));
  for (const auto& grp : small_groups()) {
    Rng rng(8);
    for (int i = 0; i < 10; ++i) {
      GroupSubset a = sampling::random_subset(grp, 2 + rng.below(20), rng);
      GroupSubset b = i % 2 ? a.inverse() : sampling::random_subset(grp, 2 + rng.below(20), rng);
      mpq_class alpha = ruzsa_distance(a, b.inverse()).alpha();
      Th46Result x = th46_construct(a, b, alpha);
      CHECK(x.report.ok());
    }
  }
  CHECK_THROWS_AS(th46_construct(GroupSubset::identity(g), GroupSubset::whole(g), 1), DomainError);
}

TEST_CASE("BGS witness and energy-to-approximate-subgroup") {
  auto g = Sl2Group::create(7);
  GroupSubset t = diagonal_torus(g);
  BgsResult b = bgs_witness(t, t, 1);
  REQUIRE(b.a1);
  CHECK(*b.a1 == t);
  EnergyApproxResult e = energy_to_approx(t, t, 1);
  REQUIRE(e.h);
  CHECK(e.report.ok());
  // Planted structure: A in xK, B in Ky for a subgroup K.
  Rng rng(12);
  auto subs = sampling::discover_subgroups(g, rng, 10);
  for (const auto& k : subs) {
    if (k.size() < 6) continue;
    Elem x = sampling::random_element(*g, rng), y = sampling::random_element(*g, rng);
    GroupSubset a = sampling::random_subset(g, k.size() / 2 + 1, rng);
    std::vector<Elem> va, vb;
    for (size_t i = 0; i < k.size(); i += 1 + (i % 2)) va.push_back(g->mul(x, k.elements()[i]));
    for (size_t i = 0; i < k.size(); i += 1 + (i % 3 == 0)) vb.push_back(g->mul(k.elements()[i], y));
    GroupSubset pa(g, va), pb(g, vb);
    mpq_class alpha = energy(pa, pb).alpha();
    EnergyApproxResult r = energy_to_approx(pa, pb, alpha);
    CHECK(r.report.ok());
    CHECK(!r.report.inconclusive);
    (void)a;
  }
}

TEST_CASE("Ruzsa, small-p and intersection lemmas") {
  auto g7 = Sl2Group::create(7);
  CheckReport u = ruzsa_lemma_check(unipotent3(g7), 4, 3);
  CHECK(u.ok());
  auto g5 = Sl2Group::create(5);
  GroupSubset h = standard5(g5);
  CheckReport s = small_p_check(h);
  CHECK(s.ok());
  CHECK(oracle::power_size(h, 3) >= 8);
  CHECK(small_p_check(GroupSubset::whole(g5)).ok());
  CHECK(intersection_lemma_check(standard5(g7), diagonal_torus(g7), 3).ok());
  for (const auto& grp : small_groups()) {
    Rng rng(31);
    auto subs = sampling::discover_subgroups(grp, rng, 6);
    subs.push_back(GroupSubset::identity(grp));
    for (int i = 0; i < 15; ++i) {
      GroupSubset a = sampling::random_symmetric_set(grp, 2 + rng.below(10), rng);
      CHECK(ruzsa_lemma_check(a, 3 + static_cast<int>(rng.below(3)), 3).ok());
      for (const auto& k : subs) CHECK(intersection_lemma_check(a, k, 1 + static_cast<int>(rng.below(3))).ok());
      if (generates(a)) CHECK(small_p_check(a).ok());
    }
  }
  CHECK_THROWS_AS(small_p_check(GroupSubset::identity(g5)), DomainError);
}
