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

#include "sl2lab/torus.hpp"

#include "sl2lab/error.hpp"

namespace sl2lab::groups {

namespace {

std::vector<Elem> commuting_elements(const Sl2Group& g, const Sl2ModP& x) {
  std::vector<Elem> out;
  if (g.order() <= kCentralizerEnumLimit) {
    for (Elem y = 0; y < g.order(); ++y) {
      Sl2ModP m = g.element(y);
      if (mul(m, x) == mul(x, m)) out.push_back(y);
    }
    return out;
  }
  // Non-scalar x: the commutant in M_2 is F_p[x].
  const PrimeField& f = g.field();
  const uint32_t p = f.p();
  const uint32_t t = x.trace();
  for (uint32_t a = 0; a < p; ++a) {
    for (uint32_t b = 0; b < p; ++b) {
      uint32_t det = f.add(f.add(f.mul(a, a), f.mul(f.mul(a, b), t)), f.mul(b, b));
      if (det != 1) continue;
      Sl2ModP m{p, f.add(a, f.mul(b, x.a)), f.mul(b, x.b), f.mul(b, x.c), f.add(a, f.mul(b, x.d))};
      out.push_back(g.index(m));
    }
  }
  return out;
}

Fp2 apply_row(const QuadExtField& f, uint32_t r0, uint32_t r1, const Line& v) {
  return f.add(f.mul(f.embed(r0), v[0]), f.mul(f.embed(r1), v[1]));
}

bool is_eigenvector(const QuadExtField& f, const Sl2ModP& g, const Line& v) {
  Fp2 w0 = apply_row(f, g.a, g.b, v);
  Fp2 w1 = apply_row(f, g.c, g.d, v);
  return f.sub(f.mul(w0, v[1]), f.mul(w1, v[0])).is_zero();
}

Line normalize(const QuadExtField& f, Line v) {
  if (!v[0].is_zero()) {
    Fp2 s = f.inv(v[0]);
    return {f.embed(1), f.mul(v[1], s)};
  }
  return {f.embed(0), f.embed(1)};
}

}  // namespace

MaximalTorus centralizer_torus(const Sl2GroupPtr& group, const Sl2ModP& g) {
  if (!is_regular_semisimple(g)) throw DomainError(g.str() + " is not regular semisimple");
  const PrimeField& f = group->field();
  uint32_t t = g.trace();
  uint32_t disc = f.sub(f.mul(t, t), 4 % f.p());
  return MaximalTorus{g, GroupSubset(group, commuting_elements(*group, g)), f.legendre(disc) == 1};
}

bool involved(const GroupSubset& h, const MaximalTorus& t) {
  const auto* g = dynamic_cast<const Sl2Group*>(&h.group());
  if (!g) throw DomainError("involved() needs a subset of SL2(F_p)");
  for (Elem x : h.intersect(t.points)) {
    if (is_sreg(g->element(x))) return true;
  }
  return false;
}

TorusFacts torus_facts_check(const Sl2GroupPtr& group, const MaximalTorus& t,
                             const std::vector<MaximalTorus>& others) {
  if (group->order() > 2'000'000) throw BudgetError("torus facts need full enumeration");
  TorusFacts r;
  const uint32_t p = group->p();
  r.order = static_cast<uint32_t>(t.points.size());
  r.order_matches_split = r.order == (t.split ? p - 1 : p + 1);
  r.same_centralizer = true;
  for (Elem x : t.points) {
    Sl2ModP m = group->element(x);
    if (!is_regular_semisimple(m)) {
      ++r.nonregular_count;
      continue;
    }
    if (r.same_centralizer) {
      std::vector<Elem> c = commuting_elements(*group, m);
      r.same_centralizer = GroupSubset(group, c) == t.points;
    }
  }
  Sl2ModP rep = t.representative;
  for (Elem y = 0; y < group->order(); ++y) {
    Sl2ModP m = group->element(y);
    if (t.points.contains(group->index(mul(mul(m, rep), m.inverse())))) ++r.normalizer_order;
  }
  for (const MaximalTorus& o : others) {
    if (o.points == t.points) continue;
    ++r.pairs_checked;
    for (Elem x : t.points.intersect(o.points)) {
      if (is_regular_semisimple(group->element(x))) {
        ++r.overlapping_pairs;
        break;
      }
    }
  }
  return r;
}

std::vector<Line> eigenlines(const QuadExtField& f, const Sl2ModP& g) {
  if (g.is_scalar()) throw DomainError("scalar matrix has no distinguished eigenlines");
  const PrimeField& k = f.base();
  uint32_t t = g.trace();
  uint32_t disc = k.sub(k.mul(t, t), k.reduce(4));
  Fp2 s = f.sqrt_base(disc);
  Fp2 half = f.embed(k.inv(2));
  std::vector<Fp2> lambdas{f.mul(f.add(f.embed(t), s), half)};
  if (!s.is_zero()) lambdas.push_back(f.mul(f.sub(f.embed(t), s), half));
  std::vector<Line> out;
  for (Fp2 lam : lambdas) {
    Line v;
    if (g.b != 0) {
      v = {f.embed(g.b), f.sub(lam, f.embed(g.a))};
    } else if (g.c != 0) {
      v = {f.sub(lam, f.embed(g.d)), f.embed(g.c)};
    } else {
      // Diagonal with distinct entries.
      v = lam == f.embed(g.a) ? Line{f.embed(1), f.embed(0)} : Line{f.embed(0), f.embed(1)};
    }
    out.push_back(normalize(f, v));
  }
  return out;
}

std::optional<Line> common_borel(const std::vector<Sl2ModP>& xs) {
  if (xs.empty()) return std::nullopt;
  const uint32_t p = xs.front().p;
  for (const auto& x : xs) {
    if (x.p != p) throw DomainError("field mismatch in common_borel");
  }
  QuadExtField f{PrimeField(p)};
  const Sl2ModP* pivot = nullptr;
  for (const auto& x : xs) {
    if (!x.is_scalar()) {
      pivot = &x;
      break;
    }
  }
  if (!pivot) return Line{f.embed(1), f.embed(0)};
  for (const Line& v : eigenlines(f, *pivot)) {
    bool all = true;
    for (const auto& x : xs) {
      if (!is_eigenvector(f, x, v)) {
        all = false;
        break;
      }
    }
    if (all) return v;
  }
  return std::nullopt;
}

Fp2 eigenvalue_on_line(const QuadExtField& f, const Sl2ModP& g, const Line& v) {
  if (!v[0].is_zero()) return f.mul(apply_row(f, g.a, g.b, v), f.inv(v[0]));
  return f.mul(apply_row(f, g.c, g.d, v), f.inv(v[1]));
}

}  // namespace sl2lab::groups
