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

#include "sl2lab/walks.hpp"

#include <mpfr.h>

#include <algorithm>
#include <map>

#include "sl2lab/certified.hpp"
#include "sl2lab/constants.hpp"
#include "sl2lab/error.hpp"
#include "sl2lab/setcalc.hpp"
#include "sl2lab/spectral.hpp"

namespace sl2lab::walks {

namespace {

using constants::Interval;

mpz_class pow2(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

// 2^e as a rational for any integer e.
mpq_class pow2q(long e) {
  return e >= 0 ? mpq_class(pow2(static_cast<unsigned long>(e))) : mpq_class(mpz_class(1), pow2(-e));
}

void require_same_group(const Distribution& a, const Distribution& b) {
  if (a.group.get() != b.group.get()) throw DomainError("distributions live on different groups");
}

// floor of an enclosure; ConvergenceError if the endpoints disagree.
long certified_floor(const Interval& x) {
  mpz_class lo, hi;
  mpfr_get_z(lo.get_mpz_t(), x.lo(), MPFR_RNDD);
  mpfr_get_z(hi.get_mpz_t(), x.hi(), MPFR_RNDD);
  if (lo != hi) throw ConvergenceError("floor not determined at working precision");
  return lo.get_si();
}

}  // namespace

Distribution Distribution::unit(GroupPtr group) {
  Distribution d;
  d.counts.assign(group->order(), 0);
  d.counts[group->identity()] = 1;
  d.group = std::move(group);
  return d;
}

Distribution Distribution::uniform(GroupPtr group) {
  Distribution d;
  d.counts.assign(group->order(), 1);
  d.denominator = group->order();
  d.group = std::move(group);
  return d;
}

mpz_class Distribution::total() const {
  mpz_class t = 0;
  for (const auto& c : counts) t += c;
  return t;
}

size_t Distribution::support_size() const {
  return static_cast<size_t>(std::count_if(counts.begin(), counts.end(), [](const mpz_class& c) { return c != 0; }));
}

WalkDistribution step(const WalkDistribution& d) {
  WalkDistribution out;
  out.group = d.group;
  out.gens = d.gens;
  out.steps = d.steps + 1;
  out.denominator = d.denominator * static_cast<unsigned long>(d.gens.size());
  out.counts.assign(d.group->order(), 0);
  for (Elem x = 0; x < d.group->order(); ++x) {
    if (d.counts[x] == 0) continue;
    for (Elem s : d.gens) out.counts[d.group->mul(x, s)] += d.counts[x];
  }
  return out;
}

WalkDistribution walk(const GroupPtr& g, const std::vector<Elem>& gens, uint32_t n) {
  if (gens.empty()) throw DomainError("empty step set");
  std::vector<Elem> sorted = gens;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw DomainError("repeated step element");
  WalkDistribution d;
  static_cast<Distribution&>(d) = Distribution::unit(g);
  d.gens = gens;
  for (uint32_t i = 0; i < n; ++i) d = step(d);
  return d;
}

WalkDistribution walk(uint32_t p, const freegrp::GenSetZ& s, uint32_t n) {
  auto g = groups::Sl2Group::create(p);
  std::vector<Elem> gens;
  for (const auto& m : s.mod(p)) gens.push_back(g->index(m));
  return walk(g, gens, n);
}

mpq_class return_probability(const Distribution& d) {
  mpz_class sq = 0;
  for (const auto& c : d.counts) sq += c * c;
  return ratio(sq, d.denominator * d.denominator);
}

Distribution convolve(const Distribution& a, const Distribution& b) {
  require_same_group(a, b);
  const auto& g = *a.group;
  Distribution out;
  out.group = a.group;
  out.denominator = a.denominator * b.denominator;
  out.counts.assign(g.order(), 0);
  std::vector<Elem> sb;
  for (Elem y = 0; y < g.order(); ++y) {
    if (b.counts[y] != 0) sb.push_back(y);
  }
  for (Elem x = 0; x < g.order(); ++x) {
    if (a.counts[x] == 0) continue;
    for (Elem y : sb) out.counts[g.mul(x, y)] += a.counts[x] * b.counts[y];
  }
  return out;
}

uint32_t dyadic_levels(uint64_t order) {
  // smallest I with 2^I >= (2|G|)^2
  const mpz_class target = mpz_class(2 * order) * (2 * order);
  uint32_t i = 0;
  while (pow2(i) < target) ++i;
  return i;
}

std::vector<uint32_t> dyadic_level_of(const Distribution& d, uint32_t levels) {
  std::vector<uint32_t> out(d.counts.size(), levels);
  for (size_t x = 0; x < d.counts.size(); ++x) {
    const mpz_class& c = d.counts[x];
    if (c == 0) continue;
    // largest i with c 2^i <= D
    long i = static_cast<long>(mpz_sizeinbase(d.denominator.get_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(c.get_mpz_t(), 2)) + 1;
    while (i >= 0 && mpz_class(c * pow2(static_cast<unsigned long>(i))) > d.denominator) --i;
    if (i < 0) throw DomainError("probability exceeds 1");
    out[x] = static_cast<uint32_t>(std::min<long>(i, levels));
  }
  return out;
}

CheckReport flattening_identities_check(const Distribution& d1, const Distribution& d2,
                                        const std::vector<mpq_class>& alphas) {
  require_same_group(d1, d2);
  for (const auto& d : {&d1, &d2}) {
    if (d->total() != d->denominator) throw DomainError("masses do not sum to 1");
  }
  const GroupPtr& g = d1.group;
  const uint64_t n = g->order();
  CheckReport r;
  r.check = "flattening";
  const mpq_class rp1 = return_probability(d1), rp2 = return_probability(d2);
  const mpq_class rp12 = return_probability(convolve(d1, d2));
  const mpq_class rpp = std::max(rp1, rp2);
  r.le("young", rp12, rpp);

  const uint32_t levels = dyadic_levels(n);
  r.fact("levels", std::to_string(levels));
  std::vector<std::vector<Elem>> cls1(levels + 1), cls2(levels + 1);
  auto l1 = dyadic_level_of(d1, levels), l2 = dyadic_level_of(d2, levels);
  for (Elem x = 0; x < n; ++x) {
    cls1[l1[x]].push_back(x);
    cls2[l2[x]].push_back(x);
  }
  bool size_ok = true;
  for (uint32_t i = 0; i < levels; ++i) {
    size_ok = size_ok && mpz_class(cls1[i].size()) <= pow2(i + 1) && mpz_class(cls2[i].size()) <= pow2(i + 1);
  }
  r.add("level_sizes", size_ok);

  mpq_class sum = 0;
  bool bound1 = true;
  std::vector<bool> bound2(alphas.size(), true);
  std::string first_bad1;
  for (uint32_t i = 0; i < levels; ++i) {
    if (cls1[i].empty()) continue;
    GroupSubset a(g, cls1[i]);
    const mpz_class sa(a.size());
    for (uint32_t j = 0; j < levels; ++j) {
      if (cls2[j].empty()) continue;
      GroupSubset b(g, cls2[j]);
      const mpz_class sb(b.size());
      const mpz_class e = setcalc::energy(a, b).energy;
      const mpq_class scaled = mpq_class(e) * pow2q(-2L * (i + j));
      sum += scaled;
      // 2^{-2(i+j)} E <= 16 rpp E / (|A||B|)^{3/2}, squared and divided by E > 0
      const mpz_class ab = sa * sb;
      const mpq_class lhs1 = mpq_class(ab * ab * ab) * pow2q(-4L * (i + j));
      if (!(lhs1 <= 256 * rpp * rpp)) {
        bound1 = false;
        if (first_bad1.empty()) first_bad1 = std::to_string(i) + "," + std::to_string(j);
      }
      for (size_t k = 0; k < alphas.size(); ++k) {
        const mpq_class& al = alphas[k];
        if (scaled <= rpp / al) continue;
        const bool large = 4 * al * mpq_class(sa * sa) >= mpq_class(pow2(2 * i)) &&
                           4 * al * mpq_class(sb * sb) >= mpq_class(pow2(2 * j));
        if (!large) bound2[k] = false;
      }
    }
  }
  const mpq_class rhs = pow2q(3 - 2L * levels) * mpq_class(mpz_class(n) * n * n) +
                        2 * mpq_class(mpz_class(levels) * levels) * sum;
  r.le("dyadic_decomposition", rp12, rhs);
  r.add("energy_vs_rpp", bound1, first_bad1);
  for (size_t k = 0; k < alphas.size(); ++k) r.add("small_energy_or_large_levels[alpha=" + alphas[k].get_str() + "]", bound2[k]);
  r.fact("rp12", rp12.get_str());
  r.fact("rpp", rpp.get_str());
  return r;
}

mpq_class coset_mass(const Distribution& d, const GroupSubset& h, Elem x) {
  if (h.group_ptr().get() != d.group.get()) throw DomainError("subset and distribution live on different groups");
  mpz_class acc = 0;
  for (Elem y : h) acc += d.counts[d.group->mul(x, y)];
  return ratio(acc, d.denominator);
}

std::string dickson_class_name(DicksonClass c) {
  switch (c) {
    case DicksonClass::kSmall:
      return "small";
    case DicksonClass::kMetabelian:
      return "metabelian_relation";
    case DicksonClass::kViolation:
      return "violation";
  }
  return "?";
}

DicksonResult dickson_classify(const GroupSubset& h) {
  const auto* sl2 = dynamic_cast<const groups::Sl2Group*>(&h.group());
  if (!sl2) throw DomainError("dickson_classify needs SL2(F_p)");
  if (sl2->p() < 5) throw DomainError("dickson_classify needs p >= 5");
  if (h.is_whole() || !is_subgroup(h)) throw DomainError("H must be a proper subgroup");
  DicksonResult res;
  res.order = h.size();
  const auto& g = h.group();
  // commutator -> one pair producing it
  std::map<Elem, std::pair<Elem, Elem>> comm;
  for (Elem x : h) {
    for (Elem y : h) comm.emplace(g.commutator(x, y), std::make_pair(x, y));
  }
  res.commutators = comm.size();
  res.relation = true;
  for (auto i = comm.begin(); i != comm.end() && res.relation; ++i) {
    for (auto j = comm.begin(); j != comm.end(); ++j) {
      if (g.mul(i->first, j->first) != g.mul(j->first, i->first)) {
        res.relation = false;
        res.counterexample = std::array<Elem, 4>{i->second.first, i->second.second, j->second.first, j->second.second};
        break;
      }
    }
  }
  if (h.size() <= 120) res.cls = DicksonClass::kSmall;
  else res.cls = res.relation ? DicksonClass::kMetabelian : DicksonClass::kViolation;
  return res;
}

CheckReport adhoc_ball_count(const freegrp::GenSetZ& s, uint32_t p, const GroupSubset& h, uint32_t m,
                             uint64_t budget) {
  if (m < 1) throw DomainError("m must be >= 1");
  const auto* sl2 = dynamic_cast<const groups::Sl2Group*>(&h.group());
  if (!sl2 || sl2->p() != p) throw DomainError("H must be a subset of SL2(F_p) for the given p");
  if (!is_subgroup(h) || h.is_whole()) throw DomainError("H must be a proper subgroup");
  const auto gens = s.mod(p);
  std::vector<freegrp::Word> wm;
  for (const auto& w : freegrp::ball(s.rank(), m, budget)) {
    if (h.contains(sl2->index(freegrp::word_mod_p(gens, w)))) wm.push_back(w);
  }
  CheckReport r;
  r.check = "adhoc_ball";
  const mpz_class bound = mpz_class(4 * m + 1) * (8 * m + 1);
  r.fact("m", std::to_string(m));
  r.fact("count", std::to_string(wm.size()));
  r.fact("bound", bound.get_str());
  // The relation holds on W_m iff all commutators [x, y] commute pairwise;
  // commuting is transitive on non-trivial elements of a free group.
  std::optional<freegrp::Word> anchor;
  bool relation = true;
  for (size_t i = 0; i < wm.size() && relation; ++i) {
    for (size_t j = i + 1; j < wm.size() && relation; ++j) {
      freegrp::Word c = freegrp::commutator(wm[i], wm[j]);
      if (c.length() == 0) continue;
      if (!anchor) anchor = c;
      else relation = freegrp::commute(*anchor, c);
    }
  }
  r.fact("relation_in_free_group", relation ? "true" : "false");
  r.fact("within_bound", mpz_class(wm.size()) <= bound ? "true" : "false");
  if (relation) r.le("ball_count", mpz_class(wm.size()), bound);
  return r;
}

CheckReport decay_inequality_eval(const freegrp::GenSetZ& s, uint32_t p, const mpq_class& c) {
  if (c <= 0 || c > 1) throw DomainError("c must lie in (0, 1]");
  const Interval tau = constants::compute_tau(s);
  const Interval cI(c);
  const long base = certified_floor(tau * log(Interval(ratio(p, 2))));
  const mpz_class nz = mpz_class(mpq_class(c * base).get_num() / mpq_class(c * base).get_den());
  const uint32_t n = static_cast<uint32_t>(nz.get_ui());
  auto d = walk(p, s, n);
  mpz_class mx = *std::max_element(d.counts.begin(), d.counts.end());
  const uint64_t order = d.group->order();
  // gamma_1 = tau ln(2 sqrt(|S|/3)) / 8
  const Interval gamma1 = constants::compute_gamma(s).raw / Interval(8L);
  const Interval lhs = log2(Interval(mx)) - Interval(static_cast<long>(n)) * log2(Interval(static_cast<long>(s.size())));
  const Interval rhs = -(cI * gamma1 * log2(Interval(mpz_class(order))));
  const Interval threshold = max(Interval(17L), Interval(2L) * exp(Interval(2L) / (cI * tau)));
  const bool in_range = Interval(static_cast<long>(p)).certainly_ge(threshold);
  CheckReport r;
  r.check = "decay";
  r.fact("n", std::to_string(n));
  r.fact("max_count", mx.get_str());
  r.fact("log2_max_probability", lhs.hi_str(12));
  r.fact("log2_bound", rhs.lo_str(12));
  r.fact("threshold", threshold.hi_str(12));
  r.fact("range", in_range ? "within guarantee" : "outside guarantee");
  const bool holds = lhs.certainly_le(rhs);
  const bool fails = rhs.certainly_lt(lhs);
  r.fact("outcome", holds ? "holds" : (fails ? "fails" : "undecided"));
  // Only inside the guaranteed range is the inequality a claim.
  if (in_range) r.add("decay_bound", holds, lhs.hi_str(12), rhs.lo_str(12));
  return r;
}

CheckReport tree_agreement_check(const freegrp::GenSetZ& s, uint32_t p, uint32_t n) {
  auto graph = spectral::build_graph(p, s);
  const uint32_t gi = spectral::girth(graph);
  if (gi != 0 && 2 * n >= gi) throw DomainError("tree agreement needs 2n < girth = " + std::to_string(gi));
  std::vector<Elem> gens = graph.gens();
  auto d = walk(graph.group_ptr(), gens, n);
  auto dist = spectral::bfs_distances(graph);
  auto tree = freegrp::tree_walk_counts(s.rank(), n);
  uint64_t mismatches = 0, checked = 0;
  for (Elem x = 0; x < graph.order(); ++x) {
    const mpz_class want = dist[x] >= 0 && static_cast<uint32_t>(dist[x]) <= n ? tree[dist[x]] : mpz_class(0);
    ++checked;
    if (d.counts[x] != want) ++mismatches;
  }
  CheckReport r;
  r.check = "tree_agreement";
  r.fact("girth", std::to_string(gi));
  r.fact("n", std::to_string(n));
  r.fact("elements", std::to_string(checked));
  r.add("counts_match_tree", mismatches == 0, std::to_string(mismatches), "0");
  return r;
}

}  // namespace sl2lab::walks
