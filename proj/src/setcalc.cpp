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

#include "sl2lab/setcalc.hpp"

#include <algorithm>
#include <numeric>

#include "sl2lab/error.hpp"

namespace sl2lab::setcalc {

namespace {

mpz_class Z(uint64_t v) {
  mpz_class r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return r;
}

std::string qs(const mpq_class& q) { return q.get_str(); }

// Every element of `sub` lies in `super`.
bool covered(const GroupSubset& sub, const GroupSubset& super) { return sub.is_subset_of(super); }

mpq_class two_pow(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return mpq_class(r);
}

}  // namespace

mpq_class qpow(const mpq_class& x, unsigned long n) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), n);
  mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), n);
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

mpq_class rational_ceiling_sqrt(const mpz_class& num, const mpz_class& den, unsigned long scale) {
  // Smallest integer k >= scale with k^2 den >= scale^2 num; returns k/scale.
  if (den <= 0 || num < 0) throw DomainError("bad ratio");
  mpz_class s2 = mpz_class(scale) * scale;
  mpz_class target = s2 * num;
  mpz_class q = target / den;
  mpz_class k;
  mpz_sqrt(k.get_mpz_t(), q.get_mpz_t());
  while (k > 0 && (k - 1) * (k - 1) * den >= target) --k;
  while (k * k * den < target) ++k;
  if (k < scale) k = scale;
  mpq_class r(k, mpz_class(scale));
  r.canonicalize();
  return r;
}

mpq_class tripling(const GroupSubset& a) {
  if (a.empty()) throw DomainError("tripling of an empty set");
  mpq_class r(Z(power(a, 3).size()), Z(a.size()));
  r.canonicalize();
  return r;
}

bool EnergyCertificate::normalized_at_most_one() const {
  mpz_class n = Z(size_a) * Z(size_b);
  return energy * energy <= n * n * n;
}

bool EnergyCertificate::at_least_inverse(const mpq_class& alpha) const {
  mpz_class n = Z(size_a) * Z(size_b);
  mpq_class lhs = alpha * alpha * mpq_class(energy * energy);
  return lhs >= mpq_class(n * n * n);
}

mpq_class EnergyCertificate::alpha() const {
  mpz_class n = Z(size_a) * Z(size_b);
  return rational_ceiling_sqrt(n * n * n, energy * energy);
}

EnergyCertificate energy(const GroupSubset& a, const GroupSubset& b) {
  if (a.empty() || b.empty()) throw DomainError("energy of an empty set");
  std::vector<uint64_t> r = representation_counts(a, b);
  EnergyCertificate c;
  c.size_a = a.size();
  c.size_b = b.size();
  for (uint64_t v : r) {
    if (v) c.energy += Z(v) * Z(v);
  }
  return c;
}

bool RuzsaDistance::at_most_log(const mpq_class& alpha) const {
  mpz_class p = Z(product);
  return mpq_class(p * p) <= alpha * alpha * mpq_class(Z(size_a) * Z(size_b));
}

mpq_class RuzsaDistance::alpha() const {
  mpz_class p = Z(product);
  return rational_ceiling_sqrt(p * p, Z(size_a) * Z(size_b));
}

RuzsaDistance ruzsa_distance(const GroupSubset& a, const GroupSubset& b) {
  if (a.empty() || b.empty()) throw DomainError("Ruzsa distance of an empty set");
  return {product(a, b.inverse()).size(), a.size(), b.size()};
}

Cover ruzsa_cover(const GroupSubset& a, const GroupSubset& b, CoverSide side) {
  if (a.empty() || b.empty()) throw DomainError("cover of an empty set");
  const FiniteGroup& g = a.group();
  const bool right = side == CoverSide::kRight;
  GroupSubset ab = right ? product(a, b) : product(b, a);
  Cover out{GroupSubset::identity(a.group_ptr()), mpq_class(Z(ab.size()), Z(a.size())), {}};
  out.alpha.canonicalize();
  out.report.check = right ? "cover_right" : "cover_left";
  // Greedy maximal family of pairwise disjoint translates.
  ElemBitset used(g.order());
  std::vector<Elem> xs;
  for (Elem x : b) {
    bool free = true;
    for (Elem e : a) {
      if (used.test(right ? g.mul(e, x) : g.mul(x, e))) {
        free = false;
        break;
      }
    }
    if (!free) continue;
    xs.push_back(x);
    for (Elem e : a) used.set(right ? g.mul(e, x) : g.mul(x, e));
  }
  out.x = GroupSubset(a.group_ptr(), xs);
  out.report.le("card_x", mpq_class(Z(out.x.size())), out.alpha);
  out.report.add("x_in_b", covered(out.x, b));
  GroupSubset cover = right ? product(product(a.inverse(), a), out.x) : product(product(out.x, a), a.inverse());
  out.report.add(right ? "b_in_ainv_a_x" : "b_in_y_a_ainv", covered(b, cover));
  return out;
}

CheckReport verify_approx(const ApproxGroupWitness& w) {
  CheckReport r;
  r.check = "approx_subgroup";
  r.add("one_in_h", w.h.contains_identity());
  r.add("h_symmetric", w.h.is_symmetric());
  r.add("x_symmetric", w.x.is_symmetric());
  GroupSubset hh = product(w.h, w.h);
  r.add("x_in_hh", covered(w.x, hh));
  r.le("card_x", mpq_class(Z(w.x.size())), w.alpha);
  r.add("hh_in_xh", covered(hh, product(w.x, w.h)));
  return r;
}

TriplingResult approx_from_tripling(const GroupSubset& a) {
  if (!a.is_symmetric() || !a.contains_identity()) throw DomainError("A must be symmetric and contain 1");
  GroupSubset h = power(a, 3);
  mpq_class trp(Z(h.size()), Z(a.size()));
  trp.canonicalize();
  GroupSubset h2 = product(h, h);
  Cover c = ruzsa_cover(a, h2, CoverSide::kRight);
  GroupSubset x1 = c.x.unite(c.x.inverse());
  TriplingResult out{{h, x1, 2 * qpow(trp, 5)}, trp, {}};
  out.report.check = "approx_from_tripling";
  out.report.fact("tripling", qs(trp));
  out.report.fact("card_x", std::to_string(x1.size()));
  out.report.add("a_in_h", covered(a, h));
  out.report.le("card_cover", mpq_class(Z(c.x.size())), qpow(trp, 5));
  out.report.merge(c.report, "cover.");
  out.report.merge(verify_approx(out.witness), "witness.");
  out.report.add("hh_in_hx", covered(h2, product(h, x1)));
  return out;
}

GroupSubset tao_symmetry_set(const GroupSubset& a, const mpq_class& alpha) {
  if (a.empty()) throw DomainError("symmetry set of an empty set");
  // |A cap Ax| = #{(a', a) : a'^{-1} a = x}.
  std::vector<uint64_t> r = representation_counts(a.inverse(), a);
  std::vector<Elem> s;
  const mpq_class bound = mpq_class(Z(a.size())) / (2 * alpha * alpha);
  for (Elem x = 0; x < r.size(); ++x) {
    if (r[x] && mpq_class(Z(r[x])) > bound) s.push_back(x);
  }
  return GroupSubset(a.group_ptr(), s);
}

Th46Result th46_construct(const GroupSubset& a, const GroupSubset& b, const mpq_class& alpha) {
  if (alpha < 1) throw DomainError("alpha must be >= 1");
  RuzsaDistance d = ruzsa_distance(a, b.inverse());
  if (!d.at_most_log(alpha)) throw DomainError("hypothesis d(A, B^-1) <= log alpha fails");
  const GroupPtr& g = a.group_ptr();
  CheckReport rep;
  rep.check = "th46";
  const mpq_class sa(Z(a.size()));

  GroupSubset s = tao_symmetry_set(a, alpha);
  rep.add("s_symmetric_with_one", s.is_symmetric() && s.contains_identity());
  rep.le("card_a_vs_s", sa, 2 * alpha * alpha * mpq_class(Z(s.size())));
  rep.le("card_as", mpq_class(Z(product(a, s).size())), 2 * qpow(alpha, 6) * sa);

  TriplingResult tr = approx_from_tripling(s);
  GroupSubset h = tr.witness.h;
  GroupSubset z = tr.witness.x;
  rep.merge(tr.report, "tripling.");

  // A in Y H H with Y in A, from |AH| small relative to |H|.
  Cover cy = ruzsa_cover(h, a, CoverSide::kLeft);
  rep.merge(cy.report, "cover_y.");
  rep.le("card_y", mpq_class(Z(cy.x.size())), 16 * qpow(alpha, 16));
  // B^{-1} in Y1 H H with Y1 in B^{-1}.
  GroupSubset binv = b.inverse();
  Cover cy1 = ruzsa_cover(h, binv, CoverSide::kLeft);
  rep.merge(cy1.report, "cover_y1.");
  rep.le("card_y1", mpq_class(Z(cy1.x.size())), 64 * qpow(alpha, 24));

  // A in YZH and B in H Z Y1^{-1}; X collects both families.
  GroupSubset x = product(cy.x, z).unite(product(z, cy1.x.inverse()));

  const mpq_class gamma = two_pow(21) * qpow(alpha, 80);
  const mpq_class gamma1 = two_pow(28) * qpow(alpha, 104);
  const mpq_class gamma2 = 8 * qpow(alpha, 14);
  rep.merge(verify_approx({h, z, gamma}), "h_gamma_approx.");
  rep.le("card_x", mpq_class(Z(x.size())), gamma1);
  rep.add("a_in_xh", covered(a, product(x, h)));
  rep.add("b_in_hx", covered(b, product(h, x)));
  rep.le("card_h", mpq_class(Z(h.size())), gamma2 * sa);
  rep.le("tripling_h", mpq_class(Z(power(h, 3).size())), two_pow(10) * qpow(alpha, 40) * mpq_class(Z(h.size())));
  rep.fact("card_s", std::to_string(s.size()));
  rep.fact("card_h", std::to_string(h.size()));
  rep.fact("card_x", std::to_string(x.size()));
  (void)g;
  return {s, h, x, cy.x, cy1.x, z, rep};
}

namespace {

// The BGS conclusion clauses for a candidate pair.
CheckReport bgs_clauses(const GroupSubset& a, const GroupSubset& b, const GroupSubset& a1, const GroupSubset& b1,
                        const mpq_class& alpha) {
  CheckReport r;
  r.check = "bgs";
  r.add("a1_in_a", covered(a1, a));
  r.add("b1_in_b", covered(b1, b));
  r.le("card_a_sq", mpq_class(Z(a.size()) * Z(a.size())), 128 * alpha * alpha * mpq_class(Z(a1.size()) * Z(a1.size())));
  r.le("card_b", mpq_class(Z(b.size())), 8 * alpha * mpq_class(Z(b1.size())));
  RuzsaDistance d = ruzsa_distance(a1, b1.inverse());
  r.add("dist_a1_b1inv", d.at_most_log(two_pow(23) * qpow(alpha, 9)), std::to_string(d.product),
        "alpha1^2 |A1||B1|");
  return r;
}

}  // namespace

BgsResult bgs_witness(const GroupSubset& a, const GroupSubset& b, const mpq_class& alpha) {
  EnergyCertificate e = energy(a, b);
  if (!e.at_least_inverse(alpha)) throw DomainError("hypothesis e(A,B) >= 1/alpha fails");
  BgsResult out;
  CheckReport first = bgs_clauses(a, b, a, b, alpha);
  if (first.ok()) {
    out.a1 = a;
    out.b1 = b;
    out.report = first;
    out.report.fact("strategy", "whole");
    return out;
  }
  // Popularity: how many energy quadruples each element takes part in.
  const FiniteGroup& g = a.group();
  std::vector<uint64_t> r = representation_counts(a, b);
  std::vector<std::pair<uint64_t, Elem>> pa, pb;
  for (Elem x : a) {
    uint64_t s = 0;
    for (Elem y : b) s += r[g.mul(x, y)];
    pa.push_back({s, x});
  }
  for (Elem y : b) {
    uint64_t s = 0;
    for (Elem x : a) s += r[g.mul(x, y)];
    pb.push_back({s, y});
  }
  auto by_pop = [](const auto& u, const auto& v) { return u.first != v.first ? u.first > v.first : u.second < v.second; };
  std::sort(pa.begin(), pa.end(), by_pop);
  std::sort(pb.begin(), pb.end(), by_pop);
  for (size_t ka = a.size(); ka >= 1; ka = ka * 3 / 4) {
    for (size_t kb = b.size(); kb >= 1; kb = kb * 3 / 4) {
      std::vector<Elem> va, vb;
      for (size_t i = 0; i < ka; ++i) va.push_back(pa[i].second);
      for (size_t i = 0; i < kb; ++i) vb.push_back(pb[i].second);
      GroupSubset a1(a.group_ptr(), va), b1(b.group_ptr(), vb);
      CheckReport c = bgs_clauses(a, b, a1, b1, alpha);
      if (c.ok()) {
        out.a1 = a1;
        out.b1 = b1;
        out.report = c;
        out.report.fact("strategy", "popularity");
        return out;
      }
      if (kb == 1) break;
    }
    if (ka == 1) break;
  }
  out.report.check = "bgs";
  out.report.inconclusive = true;
  out.report.fact("strategy", "search_failed");
  return out;
}

EnergyApproxResult energy_to_approx(const GroupSubset& a, const GroupSubset& b, const mpq_class& alpha) {
  EnergyApproxResult out;
  out.report.check = "energy_to_approx";
  BgsResult bgs = bgs_witness(a, b, alpha);
  out.report.merge(bgs.report, "bgs.");
  if (!bgs.a1) return out;
  const mpq_class alpha1 = two_pow(23) * qpow(alpha, 9);
  Th46Result th = th46_construct(*bgs.a1, *bgs.b1, alpha1);
  out.report.merge(th.report, "th46.");
  const GroupSubset& h = th.h;
  const FiniteGroup& g = a.group();

  // Coset selection over X: A1 in XH and B1 in HX.
  size_t best_a = 0, best_b = 0;
  for (Elem x : th.x) {
    size_t ca = a.intersect(h.left_translate(x)).size();
    if (ca > best_a) {
      best_a = ca;
      out.x = x;
    }
    size_t cb = b.intersect(h.right_translate(x)).size();
    if (cb > best_b) {
      best_b = cb;
      out.y = x;
    }
  }
  (void)g;
  const mpq_class beta = two_pow(1861) * qpow(alpha, 720);
  const mpq_class beta1 = two_pow(2424) * qpow(alpha, 937);
  const mpq_class beta2 = two_pow(325) * qpow(alpha, 126);
  const mpq_class beta3 = two_pow(930) * qpow(alpha, 360);
  const mpq_class sa(Z(a.size())), sb(Z(b.size())), sh(Z(h.size()));
  out.report.merge(verify_approx({h, th.z, beta}), "h_beta_approx.");
  out.report.le("card_h", sh, beta2 * sa);
  out.report.le("card_a_vs_b", sa, alpha * alpha * sb);
  out.report.le("card_a_vs_coset", sa, beta1 * mpq_class(Z(best_a)));
  out.report.le("card_b_vs_coset", sb, beta1 * mpq_class(Z(best_b)));
  out.report.le("tripling_h", mpq_class(Z(power(h, 3).size())), beta3 * sh);
  out.report.fact("card_h", std::to_string(h.size()));
  out.report.fact("card_a_cap_xh", std::to_string(best_a));
  out.report.fact("card_b_cap_hy", std::to_string(best_b));
  out.h = h;
  return out;
}

CheckReport ruzsa_lemma_check(const GroupSubset& a, int n, int kmax) {
  if (!a.is_symmetric() || a.empty()) throw DomainError("A must be symmetric and nonempty");
  if (n < 3) throw DomainError("n must be >= 3");
  CheckReport r;
  r.check = "ruzsa_lemma";
  const mpq_class sa(Z(a.size()));
  std::vector<GroupSubset> pw{a};
  const int top = std::max(n, 3 * std::max(kmax, 2));
  for (int i = 2; i <= top; ++i) {
    pw.push_back(product(pw.back(), a));
    if (pw.back().is_whole()) {
      // Further powers are the whole group.
      while (static_cast<int>(pw.size()) < top) pw.push_back(pw.back());
      break;
    }
  }
  auto card = [&](int k) { return mpq_class(Z(pw[k - 1].size())); };
  const mpq_class a3 = card(3) / sa;
  r.le("alpha_n", card(n) / sa, qpow(a3, n - 2));
  // trp(A^(2)) = |A^(6)| / |A^(2)|, trp(A^(k)) = |A^(3k)| / |A^(k)|.
  r.le("trp_a2", card(6) / card(2), qpow(a3, 4));
  for (int k = 3; k <= kmax; ++k) r.le("trp_a" + std::to_string(k), card(3 * k) / card(k), qpow(a3, 3 * k - 3));
  return r;
}

CheckReport small_p_check(const GroupSubset& h) {
  if (!h.is_symmetric() || !h.contains_identity()) throw DomainError("H must be symmetric and contain 1");
  if (!generates(h)) throw DomainError("H does not generate");
  CheckReport r;
  r.check = "small_p";
  GroupSubset h3 = power(h, 3);
  if (h3.is_whole()) {
    r.add("h3_is_g", true);
    return r;
  }
  r.le("growth_sqrt2", mpz_class(2 * Z(h.size()) * Z(h.size())), mpz_class(Z(h3.size()) * Z(h3.size())));
  return r;
}

CheckReport intersection_lemma_check(const GroupSubset& h, const GroupSubset& k, int n) {
  if (!h.is_symmetric()) throw DomainError("H must be symmetric");
  if (!is_subgroup(k)) throw DomainError("K is not a subgroup");
  if (n < 1) throw DomainError("n must be >= 1");
  CheckReport r;
  r.check = "intersection_lemma";
  GroupSubset hn = power(h, n);
  GroupSubset hn1 = product(hn, h);
  GroupSubset h2 = product(h, h);
  r.le("coset_count", mpz_class(Z(h.size()) * Z(hn.intersect(k).size())),
       mpz_class(Z(hn1.size()) * Z(h2.intersect(k).size())));
  return r;
}

CheckReport diagram_rules_check(const GroupSubset& a, const GroupSubset& b, const GroupSubset& c) {
  CheckReport r;
  r.check = "diagram_rules";
  RuzsaDistance ab = ruzsa_distance(a, b);
  RuzsaDistance bc = ruzsa_distance(b, c);
  RuzsaDistance ac = ruzsa_distance(a, c);
  RuzsaDistance ba = ruzsa_distance(b, a);
  const mpz_class sa = Z(a.size()), sb = Z(b.size()), sc = Z(c.size());
  const mpz_class pab = Z(ab.product), pbc = Z(bc.product), pac = Z(ac.product), pba = Z(ba.product);
  // (1) |B| <= alpha^2 |A| with alpha^2 = |AB^-1|^2/(|A||B|), i.e. |B|^2 <= |AB^-1|^2; same for A.
  r.le("rule1_b", mpz_class(sb * sb), mpz_class(pab * pab));
  r.le("rule1_a", mpz_class(sa * sa), mpz_class(pab * pab));
  // (2) |AC^-1| / sqrt|A||C| <= (|AB^-1| / sqrt|A||B|) (|BC^-1| / sqrt|B||C|).
  r.le("rule2_triangle", mpz_class(pac * sb), mpz_class(pab * pbc));
  // Same with the rounded-up rational alphas.
  r.add("rule2_rational", ac.at_most_log(ab.alpha() * bc.alpha()));
  // (4) |B| <= alpha|A|, d(B,A) <= log beta  =>  |AB^-1|^2 <= alpha beta^2 |A|^2.
  {
    mpq_class alpha(sb, sa);
    alpha.canonicalize();
    mpq_class beta = ba.alpha();
    r.le("rule4_unfold", mpq_class(pab * pab), alpha * beta * beta * mpq_class(sa * sa));
  }
  // (5) |AB^-1| <= alpha|A|, |A| <= beta|B|  =>  |AB^-1|^2 <= alpha^2 beta |A||B|.
  {
    mpq_class alpha(pab, sa), beta(sa, sb);
    alpha.canonicalize();
    beta.canonicalize();
    r.le("rule5_fold", mpq_class(pab * pab), alpha * alpha * beta * mpq_class(sa * sb));
  }
  // (3) sizes compose.
  r.le("rule3_chain", ratio(sc, sa), ratio(sc, sb) * ratio(sb, sa));
  (void)pba;
  return r;
}

}  // namespace sl2lab::setcalc
