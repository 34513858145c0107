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

#include "sl2lab/growth.hpp"

#include <algorithm>
#include <set>

#include "sl2lab/certified.hpp"
#include "sl2lab/error.hpp"
#include "sl2lab/setcalc.hpp"
#include "sl2lab/spectral.hpp"

namespace sl2lab::growth {

using groups::Sl2Group;
using groups::Sl2ModP;

namespace {

mpz_class Z(uint64_t v) {
  mpz_class r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return r;
}

void require_generating(const GroupSubset& h) {
  if (!h.is_symmetric() || !h.contains_identity()) throw DomainError("H must be symmetric and contain 1");
  if (!generates(h)) throw DomainError("H does not generate");
}

// The trivial set {1} is also accepted: both sides are then 1.
void require_generating_or_trivial(const GroupSubset& h) {
  if (h.size() == 1 && h.contains_identity()) return;
  require_generating(h);
}

bool sreg_trace(uint32_t t, uint32_t p) { return t != 0 && t != 2 && t != p - 2; }

mpq_class trp(const GroupSubset& h) { return setcalc::tripling(h); }

}  // namespace

const Sl2Group& sl2_of(const GroupSubset& h) {
  const auto* g = dynamic_cast<const Sl2Group*>(&h.group());
  if (!g) throw DomainError("subset does not live in SL2(F_p)");
  return *g;
}

uint32_t trace_of(const Sl2Group& g, Elem x) { return g.element(x).trace(); }

GroupSubset trace_fiber(const groups::Sl2GroupPtr& g, uint32_t t) {
  const uint32_t p = g->p();
  if (t >= p) throw DomainError("trace out of range");
  const auto& f = g->field();
  std::vector<Elem> out;
  // Enumerate (a, b, c); d = t - a is forced and ad - bc = 1 pins one more.
  for (uint32_t a = 0; a < p; ++a) {
    uint32_t d = f.sub(t, a);
    uint32_t bc = f.sub(f.mul(a, d), 1);  // bc = ad - 1
    for (uint32_t b = 0; b < p; ++b) {
      if (b == 0) {
        if (bc != 0) continue;
        for (uint32_t c = 0; c < p; ++c) out.push_back(g->index(Sl2ModP::make(p, a, 0, c, d)));
      } else {
        uint32_t c = f.mul(bc, f.inv(b));
        out.push_back(g->index(Sl2ModP::make(p, a, b, c, d)));
      }
    }
  }
  return GroupSubset(g, std::move(out));
}

std::optional<Elem> escape_witness(const GroupSubset& h) {
  const Sl2Group& g = sl2_of(h);
  GroupSubset h3 = power(h, 3);
  for (Elem x : h3) {
    if (sreg_trace(trace_of(g, x), g.p())) return x;
  }
  return std::nullopt;
}

CheckReport escape_check(const GroupSubset& h) {
  require_generating(h);
  const Sl2Group& g = sl2_of(h);
  CheckReport r;
  r.check = "escape";
  auto w = escape_witness(h);
  r.fact("p", std::to_string(g.p()));
  r.fact("witness", w ? g.element_str(*w) : "none");
  if (g.p() >= 7) r.add("sreg_in_h3", w.has_value());
  return r;
}

SharpnessOutcome escape_sharpness_search(const groups::Sl2GroupPtr& g, sampling::Rng& rng, uint64_t random_budget) {
  SharpnessOutcome out;
  const uint32_t n = g->order();
  const Elem one = g->identity();
  const Elem minus = g->index(Sl2ModP::make(g->p(), -1, 0, 0, -1));
  // One representative per conjugacy class.
  std::vector<Elem> reps;
  std::vector<bool> seen(n, false);
  for (Elem a = 0; a < n; ++a) {
    if (seen[a]) continue;
    reps.push_back(a);
    for (Elem y = 0; y < n; ++y) seen[g->mul(g->mul(y, a), g->inv(y))] = true;
  }
  auto test = [&](const std::vector<Elem>& v) {
    ++out.candidates;
    GroupSubset h(g, v);
    if (!generates(h)) return false;
    ++out.generating;
    if (escape_witness(h)) return false;
    out.found = true;
    out.example = h.elements();
    return true;
  };
  for (Elem a : reps) {
    for (Elem b = 0; b < n; ++b) {
      std::vector<Elem> v{one, a, g->inv(a), b, g->inv(b)};
      if (test(v)) return out;
      v.push_back(minus);
      if (test(v)) return out;
    }
  }
  for (uint64_t i = 0; i < random_budget; ++i) {
    GroupSubset h = sampling::random_symmetric_set(g, 4 + rng.below(12), rng);
    if (test(h.elements())) return out;
  }
  return out;
}

CheckReport nonconcentration_check(const GroupSubset& h, Elem gel) {
  require_generating(h);
  const Sl2Group& g = sl2_of(h);
  const uint32_t t = trace_of(g, gel);
  if (!sreg_trace(t, g.p())) throw DomainError("g must be regular semisimple with non-zero trace");
  CheckReport r;
  r.check = "nonconcentration";
  uint64_t in_class = 0;
  for (Elem x : h) in_class += trace_of(g, x) == t;
  const mpq_class a = trp(h);
  const mpz_class sh = Z(h.size());
  const mpq_class lhs(Z(in_class) * Z(in_class) * Z(in_class));
  const bool main = lhs <= 343 * a * a * mpq_class(sh * sh);
  const bool alt = setcalc::qpow(a, 28) > mpq_class(sh);
  r.add("class_bound_or_large_tripling", main || alt, lhs.get_str(), mpq_class(343 * a * a * mpq_class(sh * sh)).get_str());
  r.fact("class_count", std::to_string(in_class));
  r.fact("tripling", a.get_str());
  r.fact("branch", main ? "bound" : (alt ? "large_tripling" : "none"));
  return r;
}

CheckReport subkey_check(const GroupSubset& h, Elem x, uint32_t gamma) {
  require_generating_or_trivial(h);
  const Sl2Group& g = sl2_of(h);
  const uint32_t p = g.p();
  if (gamma == 0 || gamma >= p) throw DomainError("gamma must be a non-zero residue");
  const uint32_t gi = g.field().inv(gamma);
  CheckReport r;
  r.check = "subkey";
  uint64_t count = 0;
  const Elem xi = g.inv(x);
  for (uint32_t t = 0; t < p; ++t) {
    Elem c = g.index(Sl2ModP::make(p, gamma, t, 0, gi));
    count += h.contains(g.mul(g.mul(x, c), xi));
  }
  const mpq_class a = trp(h);
  const mpq_class lhs(Z(count) * Z(count) * Z(count));
  r.le("line_bound", lhs, 8 * setcalc::qpow(a, 6) * mpq_class(Z(h.size())));
  r.fact("count", std::to_string(count));
  return r;
}

CheckReport dichotomy_check(const GroupSubset& h, const groups::MaximalTorus& t) {
  require_generating_or_trivial(h);
  const Sl2Group& g = sl2_of(h);
  CheckReport r;
  r.check = "dichotomy";
  const bool inv = groups::involved(h, t);
  r.fact("involved", inv ? "true" : "false");
  if (!inv) {
    r.le("uninvolved_meet", Z(h.intersect(t.points).size()), mpz_class(4));
    return r;
  }
  GroupSubset h2 = product(h, h);
  uint64_t reg = 0;
  for (Elem x : t.points) {
    uint32_t tr = trace_of(g, x);
    if (tr != 2 && tr != g.p() - 2 && h2.contains(x)) ++reg;
  }
  const mpq_class a = trp(h);
  const mpz_class sh = Z(h.size());
  const mpq_class lhs = 2744 * setcalc::qpow(a, 12) * mpq_class(Z(reg) * Z(reg) * Z(reg));
  const bool main = lhs >= mpq_class(sh);
  const bool alt = setcalc::qpow(a, 168) >= mpq_class(sh);
  r.add("regular_meet_or_large_tripling", main || alt, lhs.get_str(), sh.get_str());
  r.fact("regular_in_h2", std::to_string(reg));
  r.fact("branch", main ? "bound" : (alt ? "large_tripling" : "none"));
  return r;
}

std::string pink_case_name(PinkCase c) {
  switch (c) {
    case PinkCase::kSmall: return "small";
    case PinkCase::kTrivialY: return "case1_trivial_y";
    case PinkCase::kBorel: return "case2_borel";
    case PinkCase::kTraceZero: return "case3_trace_zero";
    case PinkCase::kUnexplained: return "unexplained";
  }
  return "?";
}

FiberRecord pink_fiber(const groups::Sl2GroupPtr& g, Elem gel, Elem y1, Elem y2) {
  return pink_fiber(g, trace_fiber(g, trace_of(*g, gel)), gel, y1, y2);
}

FiberRecord pink_fiber(const groups::Sl2GroupPtr& g, const GroupSubset& fib, Elem gel, Elem y1, Elem y2) {
  const uint32_t p = g->p();
  const uint32_t t = trace_of(*g, gel);
  const Sl2ModP gm = g->element(gel);
  if (!groups::is_regular_semisimple(gm)) throw DomainError("g must be regular semisimple");
  FiberRecord rec{gel, y1, y2, {}, PinkCase::kSmall, std::nullopt};
  const Elem y1i = g->inv(y1), y2i = g->inv(y2);
  for (Elem x : fib) {
    if (trace_of(*g, g->mul(y1i, x)) == t && trace_of(*g, g->mul(y2i, x)) == t) rec.fiber.push_back(x);
  }
  if (rec.fiber.size() <= 2) return rec;
  const Elem one = g->identity();
  const Elem minus = g->index(Sl2ModP::make(p, -1, 0, 0, -1));
  if (y1 == one || y2 == one || y1 == y2 || y1 == minus) {
    rec.tag = PinkCase::kTrivialY;
    return rec;
  }
  if (t == 0) {
    rec.tag = PinkCase::kTraceZero;
    return rec;
  }
  std::vector<Sl2ModP> xs;
  for (Elem x : rec.fiber) xs.push_back(g->element(x));
  auto line = groups::common_borel(xs);
  if (!line) {
    rec.tag = PinkCase::kUnexplained;
    return rec;
  }
  rec.tag = PinkCase::kBorel;
  // y in U cup t^2 U for the Borel B of the line: y stabilizes the line and
  // acts on it by 1 or by lambda^{+-2}, lambda an eigenvalue of g. Every
  // element of B with eigenvalue 1 on the line lies in U.
  groups::QuadExtField f(g->field());
  const groups::Line v = *line;
  const groups::Fp2 lam = groups::eigenvalue_on_line(f, xs.front(), v);
  const groups::Fp2 lam2 = f.mul(lam, lam);
  const groups::Fp2 lam2i = f.inv(lam2);
  auto in_u_or_t2u = [&](Elem y) {
    const Sl2ModP ym = g->element(y);
    groups::Fp2 a = f.add(f.mul(f.embed(ym.a), v[0]), f.mul(f.embed(ym.b), v[1]));
    groups::Fp2 c = f.add(f.mul(f.embed(ym.c), v[0]), f.mul(f.embed(ym.d), v[1]));
    if (!f.sub(f.mul(a, v[1]), f.mul(c, v[0])).is_zero()) return false;
    groups::Fp2 mu = groups::eigenvalue_on_line(f, ym, v);
    return mu == f.embed(1) || mu == lam2 || mu == lam2i;
  };
  rec.y_membership = in_u_or_t2u(y1) && in_u_or_t2u(y2);
  return rec;
}

CheckReport qr_check(const GroupSubset& h) {
  const Sl2Group& g = sl2_of(h);
  CheckReport r;
  r.check = "quasirandom";
  mpz_class lhs, rhs, o = Z(g.order());
  mpz_pow_ui(lhs.get_mpz_t(), Z(h.size()).get_mpz_t(), 9);
  mpz_pow_ui(rhs.get_mpz_t(), o.get_mpz_t(), 8);
  rhs *= 512;
  const bool above = lhs >= rhs;
  r.fact("above_threshold", above ? "true" : "false");
  if (above) r.add("h3_is_g", power(h, 3).is_whole());
  return r;
}

std::string growth_case_name(GrowthCase c) {
  switch (c) {
    case GrowthCase::kTripleIsG: return "triple_is_G";
    case GrowthCase::kGrowthHolds: return "growth_holds";
    case GrowthCase::kViolation: return "violation";
  }
  return "?";
}

GrowthVerdict helfgott_check(const GroupSubset& h, bool sharp) {
  require_generating(h);
  const Sl2Group& g = sl2_of(h);
  GrowthVerdict v;
  GroupSubset h3 = power(h, 3);
  v.size = h.size();
  v.triple_size = h3.size();
  v.ratio = mpq_class(Z(h3.size()), Z(h.size()));
  v.ratio.canonicalize();
  mpz_class l, r;
  mpz_pow_ui(l.get_mpz_t(), Z(h3.size()).get_mpz_t(), 3024);
  mpz_pow_ui(r.get_mpz_t(), Z(h.size()).get_mpz_t(), 3025);
  v.exponent_check = l >= r;
  if (sharp && g.p() >= 7 && !h3.is_whole()) {
    mpz_class r2;
    mpz_pow_ui(r2.get_mpz_t(), Z(h.size()).get_mpz_t(), 3026);
    mpz_class two;
    mpz_ui_pow_ui(two.get_mpz_t(), 2, 1512);
    v.sharp_check = two * l >= r2;
  }
  if (h3.is_whole()) {
    v.verdict = GrowthCase::kTripleIsG;
  } else {
    v.verdict = v.exponent_check ? GrowthCase::kGrowthHolds : GrowthCase::kViolation;
  }
  return v;
}

CheckReport babai_check(const GroupSubset& s) {
  if (!s.is_symmetric()) throw DomainError("S must be symmetric");
  if (!generates(s)) throw DomainError("S does not generate");
  CheckReport r;
  r.check = "babai";
  std::vector<Elem> gens;
  for (Elem x : s) {
    if (x != s.group().identity()) gens.push_back(x);
  }
  spectral::CayleyGraph cg(s.group_ptr(), gens);
  const uint32_t d = spectral::diameter(cg);
  using constants::Interval;
  // ln(rhs) = ln 3 + 3323 ln ln |G|
  Interval lnln = log(log(Interval(static_cast<long>(s.group().order()))));
  Interval log_rhs = log(Interval(3)) + Interval(3323) * lnln;
  Interval log_lhs = log(Interval(static_cast<long>(d)));
  r.add("diameter_bound", log_lhs.certainly_le(log_rhs), std::to_string(d), "exp(" + log_rhs.lo_str(12) + ")");
  r.fact("diameter", std::to_string(d));
  return r;
}

CheckReport orbit_stabilizer_check(const GroupSubset& h, Elem gel) {
  if (!h.is_symmetric() || h.empty()) throw DomainError("H must be symmetric and nonempty");
  const FiniteGroup& g = h.group();
  CheckReport r;
  r.check = "orbit_stabilizer";
  GroupSubset h2 = product(h, h);
  uint64_t stab = 0;
  for (Elem x : h2) stab += g.mul(x, gel) == g.mul(gel, x);
  std::set<Elem> orbit;
  for (Elem x : h) orbit.insert(g.mul(g.mul(x, gel), g.inv(x)));
  r.le("orbit_stabilizer", Z(h.size()), mpz_class(Z(stab) * Z(orbit.size())));
  return r;
}

}  // namespace sl2lab::growth
