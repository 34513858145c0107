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

#include "sl2lab/constants.hpp"
#include "sl2lab/report.hpp"

#include "sl2lab/error.hpp"

namespace sl2lab::constants {

namespace {

Interval I(long v) { return Interval(v); }
Interval Q(const mpq_class& q) { return Interval(q); }

// Sufficient log2 p for |G|^a >= 2^k, using log2|G| >= 3 log2 p - 1.
Interval linear_threshold(const Interval& a, const Interval& k) {
  if (!a.certainly_positive()) throw DomainError("threshold exponent is not positive");
  return ((k / a + I(1)) / I(3)).upper();
}

Interval loglog_value(const Interval& a, const Interval& beta, const Interval& u, const Interval& v,
                      const Interval& kappa, const Interval& x) {
  return a * (I(3) * x - I(1)) - beta * log2(u + v * x) - kappa;
}

}  // namespace

Interval compute_tau_inv(const freegrp::GenSetZ& s) {
  if (s.size() == 0) throw DomainError("empty generating set");
  Interval m = freegrp::norm_log(s[0]);
  for (size_t i = 1; i < s.size(); ++i) m = max(m, freegrp::norm_log(s[i]));
  if (!m.certainly_positive()) throw DomainError("all generators have operator norm 1; tau is undefined");
  return m;
}

Interval compute_tau(const freegrp::GenSetZ& s) { return I(1) / compute_tau_inv(s); }

GammaPair compute_gamma(size_t s_size, const Interval& tau_inv) {
  if (s_size < 4 || s_size % 2) throw DomainError("gamma needs an even |S| >= 4");
  GammaPair g;
  // ln((2/sqrt 3) sqrt|S|) = ln(4|S|/3) / 2
  Interval num = log(Interval(ratio(4 * static_cast<long>(s_size), 3))) / I(2);
  g.raw = num / tau_inv;
  g.eff = g.raw / I(Table::kGammaScale);
  g.eff_at_most_2m5 = g.eff.certainly_le(Q(mpq_class(1, 32)));
  return g;
}

GammaPair compute_gamma(const freegrp::GenSetZ& s) { return compute_gamma(s.size(), compute_tau_inv(s)); }

mpq_class flattening_delta1(const mpq_class& delta, const mpq_class& gamma, const mpq_class& epsilon) {
  if (delta <= 0 || delta > 1) throw DomainError("delta must lie in (0, 1]");
  if (gamma <= 0 || gamma >= 1) throw DomainError("gamma must lie in (0, 1)");
  if (epsilon <= 0) throw DomainError("epsilon must be positive");
  mpq_class a = delta * gamma / (2 * Table::kC2 + 1);
  mpq_class b = epsilon / (2 * Table::kC2);
  return (a < b ? a : b) / 2;
}

Interval flattening_delta1(const Interval& delta, const Interval& gamma, const Interval& epsilon) {
  if (!delta.certainly_positive() || !delta.certainly_le(I(1))) throw DomainError("delta must lie in (0, 1]");
  if (!gamma.certainly_positive() || !gamma.certainly_lt(I(1))) throw DomainError("gamma must lie in (0, 1)");
  if (!epsilon.certainly_positive()) throw DomainError("epsilon must be positive");
  Interval a = delta * gamma / I(2 * Table::kC2 + 1);
  Interval b = epsilon / I(2 * Table::kC2);
  return min(a, b) / I(2);
}

BoundReport gap_bound(const freegrp::GenSetZ& s) {
  BoundReport r;
  r.s_size = s.size();
  r.tau_inv = compute_tau_inv(s);
  r.tau = I(1) / r.tau_inv;
  r.gamma = compute_gamma(s.size(), r.tau_inv);
  const Interval& g = r.gamma.eff;
  const Interval delta = Q(Table::delta());
  const Interval d = Q(Table::d());
  const Interval c = Q(Table::c());
  r.delta1 = flattening_delta1(delta, g, Q(Table::epsilon()));
  const Interval c2 = I(Table::kC2);
  const Interval first = I(2 * Table::kC2 + 1) / (delta * g);
  r.j_stated = I(Table::kJStated) / g;
  r.j_chain = I(8) * max(first, I(4) * c2 / d);
  r.j_statement = I(8) * max(first, I(16) * c2 / (I(7) * d));
  r.j_used = max(max(r.j_stated, r.j_chain), r.j_statement).upper();
  r.gap_log2 = log2(d / c) - I(4) - r.j_used;
  r.stated_exponent = exp2(I(35)) / r.gamma.raw;
  r.implies_stated_form = r.gap_log2.lower().certainly_ge(-r.stated_exponent);
  r.exponent_at_most_2_36 = r.stated_exponent.certainly_le(exp2(I(36)));
  return r;
}

Interval solve_loglog_threshold(const Interval& a, const Interval& beta, const Interval& u, const Interval& v,
                                const Interval& kappa, const Interval& floor_x) {
  if (!a.certainly_positive() || !v.certainly_positive()) throw DomainError("bad log-log threshold parameters");
  const Interval ln2 = Interval::ln2();
  // g is decreasing then increasing; its derivative vanishes at x*.
  Interval xstar = beta / (I(3) * a * ln2) - u / v;
  if (!(u + v * floor_x).certainly_positive()) throw DomainError("log-log threshold below its domain");
  // The minimum over [floor_x, inf) sits at max(floor_x, x*).
  Interval xmin = max(floor_x, xstar);
  if (loglog_value(a, beta, u, v, kappa, xmin).lower().certainly_ge(I(0))) return floor_x.upper();
  Interval x0 = xmin.upper();
  Interval lo = x0;
  Interval hi = max(x0 * I(2), I(1)).upper();
  for (int it = 0; !loglog_value(a, beta, u, v, kappa, hi).lower().certainly_ge(I(0)); ++it) {
    if (it > 4000) throw ConvergenceError("log-log threshold did not bracket");
    lo = hi;
    hi = (hi * I(2)).upper();
  }
  for (int it = 0; it < 400; ++it) {
    Interval mid = Interval::hull(lo, hi).midpoint();
    if (loglog_value(a, beta, u, v, kappa, mid).lower().certainly_ge(I(0))) {
      hi = mid;
    } else {
      lo = mid;
    }
    if ((hi - lo).certainly_le(hi * Interval::from_decimal("1e-40"))) break;
  }
  return hi.upper();
}

ThresholdReport p_threshold(const freegrp::GenSetZ& s, const BoundReport& b) {
  ThresholdReport r;
  const Interval ln2 = Interval::ln2();
  const Interval ln3 = log(I(3));
  const Interval g = b.gamma.eff;
  const Interval delta = Q(Table::delta());
  const Interval delta0 = I(2) * b.delta1;
  const Interval eps = Q(Table::epsilon());
  const Interval d = Q(Table::d());
  const Interval c = Q(Table::c());
  const long c1 = Table::kC1Log2;
  const long c2 = Table::kC2;
  const Interval x_floor = log2(I(2));

  // |G|^{gamma - (1+c2) delta0} > 4 c1
  Interval g1 = g - I(1 + c2) * delta0;
  r.terms.push_back({"flatten_generation", linear_threshold(g1, I(c1 + 2))});

  // |G|^{g1} > 4c1 {c1 (4c1)^{1/g1}}^{1/(delta - c2 delta0/g1)}
  Interval denom = delta - I(c2) * delta0 / g1;
  if (!denom.certainly_positive()) throw DomainError("delta0 too large for the flourishing step");
  Interval k2 = I(c1 + 2) + (I(c1) + I(c1 + 2) / g1) / denom;
  r.terms.push_back({"flatten_flourishing", linear_threshold(g1, k2)});

  // |G|^{eps - 2 c2 delta0} >= (ln 3|G|)^4 with ln 3|G| <= ln 3 + 3 x ln 2
  r.terms.push_back({"flatten_log_factor_1",
                     solve_loglog_threshold(eps - I(2 * c2) * delta0, I(4), ln3, I(3) * ln2, I(0), x_floor)});
  // |G|^{delta0} >= c1^{-2} (ln 3|G|)^4
  r.terms.push_back({"flatten_log_factor_2",
                     solve_loglog_threshold(delta0, I(4), ln3, I(3) * ln2, I(-2 * c1), x_floor)});

  // min(|G|^{d/4}, |G|^{delta1/2}) >= c3
  r.terms.push_back({"flatten_c3_d", linear_threshold(d / I(4), I(Table::kC3Log2))});
  r.terms.push_back({"flatten_c3_delta1", linear_threshold(b.delta1 / I(2), I(Table::kC3Log2))});

  // p >= max(17, 2 exp(2/(c tau)))
  r.terms.push_back({"decay_p17", log2(I(17)).upper()});
  r.terms.push_back({"decay_girth", (I(1) + I(2) * b.tau_inv / (c * ln2)).upper()});

  // |G|^gamma >= max(120, ln(p/2)), ln(p/2) = x ln 2 - ln 2
  r.terms.push_back({"coset_120", linear_threshold(g, log2(I(Table::kDicksonSmall)))});
  r.terms.push_back({"coset_log", solve_loglog_threshold(g, I(1), -ln2, ln2, I(0), log2(I(3)))});

  // mdim = (p-1)/2 >= |G|^{1/4}, i.e. (p-1)^3 >= 16 p (p+1); exact scan.
  long last_fail = 1;
  for (long p = 2; p <= 1000; ++p) {
    mpz_class lhs = mpz_class(p - 1) * (p - 1) * (p - 1);
    mpz_class rhs = mpz_class(16) * p * (p + 1);
    if (lhs < rhs) last_fail = p;
  }
  r.terms.push_back({"mdim_quarter", log2(I(last_fail + 1)).upper()});
  (void)s;

  r.log2_p = r.terms.front().log2_p;
  r.binding = r.terms.front().name;
  for (const auto& t : r.terms) {
    if (mpfr_greater_p(t.log2_p.hi(), r.log2_p.hi())) {
      r.log2_p = t.log2_p;
      r.binding = t.name;
    }
  }
  r.log2_log2_p = log2(r.log2_p).upper();
  r.within_2_46 = r.log2_log2_p.certainly_le(I(46));
  return r;
}

DiameterReport diameter_bound(const freegrp::GenSetZ& s) {
  if (s.size() < 4) throw DomainError("diameter bound needs |S| >= 4");
  DiameterReport r;
  Interval tau_inv = compute_tau_inv(s);
  Interval tau = I(1) / tau_inv;
  Interval l1d = log(I(1) + Q(Table::delta()));
  Interval log2_3 = log2(I(3));
  const long sm1 = static_cast<long>(s.size()) - 1;
  r.a_stated = log(I(8) * tau_inv / I(sm1)) / l1d;
  r.coeff_log2_stated = r.a_stated * log2_3;
  r.delta2 = tau * log(I(sm1)) / I(8);
  r.a_derived = log(I(1) / r.delta2) / l1d;
  r.coeff_log2_derived = r.a_derived * log2_3;
  r.validity = exp(I(2) * tau_inv);
  mpz_class fl;
  mpfr_get_z(fl.get_mpz_t(), r.validity.hi(), MPFR_RNDD);
  r.p_min = mpz_class(fl + 1).get_ui();
  return r;
}

Interval babai_constant(const mpq_class& delta) {
  if (delta <= 0) throw DomainError("delta must be positive");
  return log(I(3)) / log(I(1) + Q(delta));
}

mpz_class transfer_expansion(uint64_t s_size, const mpq_class& c) {
  if (c < 1) throw DomainError("word-length bound C must be >= 1");
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), c.get_num_mpz_t(), c.get_den_mpz_t());
  mpz_class w = 0, term = 1;
  for (mpz_class j = 1; j <= fl; ++j) {
    w += term;
    term *= static_cast<unsigned long>(s_size);
  }
  return 4 * w;
}

}  // namespace sl2lab::constants
