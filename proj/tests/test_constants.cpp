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

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "sl2lab/constants.hpp"
#include "sl2lab/error.hpp"

using namespace sl2lab;
using namespace sl2lab::constants;
using freegrp::GenSetZ;

namespace {

using Ref = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<400, boost::multiprecision::digit_base_2>>;

// Largest singular value of a det-1 matrix: ||s||^2 + ||s||^-2 = a^2+b^2+c^2+d^2.
long double oracle_norm_log(long double a, long double b, long double c, long double d) {
  long double f = a * a + b * b + c * c + d * d;
  return 0.5L * std::log((f + std::sqrt(f * f - 4)) / 2);
}

Ref to_ref(mpfr_srcptr x) {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.140Re", x);
  Ref r(s);
  mpfr_free_str(s);
  return r;
}

}  // namespace

TEST_CASE("tau and gamma of the Lubotzky set") {
  GenSetZ s = GenSetZ::lubotzky();
  Interval ti = compute_tau_inv(s);
  long double o = oracle_norm_log(1, 3, 0, 1);
  CHECK(std::fabs(ti.mid_d() - static_cast<double>(o)) < 1e-12);
  CHECK(ti.rel_width() < 1e-50);
  GammaPair g = compute_gamma(s);
  long double graw = 0.5L * std::log(16.0L / 3) / o;
  CHECK(std::fabs(g.raw.mid_d() - static_cast<double>(graw)) < 1e-12);
  CHECK(g.raw.certainly_ge(Interval::from_decimal("0.7005")));
  CHECK(g.raw.certainly_le(Interval::from_decimal("0.7006")));
  CHECK(g.eff_at_most_2m5);
}

TEST_CASE("gap bound of the Lubotzky set") {
  BoundReport b = gap_bound(GenSetZ::lubotzky());
  CHECK(b.exponent_at_most_2_36);
  CHECK(b.implies_stated_form);
  // The three j bounds, evaluated independently.
  long double g = b.gamma.eff.mid_d();
  long double first = 1875.0L * 3024.0L / g;
  CHECK(std::fabs(b.j_chain.mid_d() / static_cast<double>(8 * std::max(first, 14992.0L)) - 1) < 1e-12);
  CHECK(std::fabs(b.j_stated.mid_d() / static_cast<double>(48060000.0L / g) - 1) < 1e-12);
  CHECK(b.j_used.certainly_ge(b.j_chain));
  CHECK(b.j_used.certainly_ge(b.j_stated));
  CHECK(b.j_used.certainly_ge(b.j_statement));
  double gap = b.gap_log2.mid_d();
  double expect = std::log2(24.0) - 4 - b.j_used.mid_d();
  CHECK(std::fabs(gap - expect) < 1e-6 * std::fabs(expect));
}

TEST_CASE("p threshold terms") {
  GenSetZ s = GenSetZ::lubotzky();
  BoundReport b = gap_bound(s);
  ThresholdReport t = p_threshold(s, b);
  CHECK(t.within_2_46);
  CHECK(t.binding == "flatten_c3_delta1");
  long double g = b.gamma.eff.mid_d();
  long double d1 = 0.5L * std::min(g / (3024.0L * 1875), 0.125L / 1874);
  long double x = (2438.0L / (d1 / 2) + 1) / 3;
  CHECK(std::fabs(t.log2_p.hi_d() / static_cast<double>(x) - 1) < 1e-10);
  CHECK(t.log2_log2_p.hi_d() < 46);
  for (const auto& term : t.terms) {
    if (term.name == "decay_girth") {
      long double o = 1 + 192 * oracle_norm_log(1, 3, 0, 1) / std::log(2.0L);
      CHECK(std::fabs(term.log2_p.hi_d() - static_cast<double>(o)) < 1e-9);
    }
    if (term.name == "mdim_quarter") CHECK(std::fabs(term.log2_p.hi_d() - std::log2(20.0)) < 1e-12);
    CHECK(mpfr_lessequal_p(term.log2_p.hi(), t.log2_p.hi()));
  }
}

TEST_CASE("log-log threshold solver") {
  // Direct check in long double: g >= 0 at and beyond the returned point, and
  // negative just below it when the floor is not returned.
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ua(1e-4, 1e-1);
  for (int it = 0; it < 40; ++it) {
    double a = ua(rng);
    double beta = 4;
    double kappa = (it % 2) ? -50.0 : 0.0;
    Interval x0 = solve_loglog_threshold(Interval::from_decimal(std::to_string(a)), Interval(4),
                                         log(Interval(3)), Interval(3) * Interval::ln2(),
                                         Interval(static_cast<long>(kappa)), Interval(1));
    long double av = std::stold(std::to_string(a));
    auto gfun = [&](long double x) {
      return av * (3 * x - 1) - beta * std::log2(std::log(3.0L) + 3 * std::log(2.0L) * x) - kappa;
    };
    long double x = x0.hi_d();
    for (int k = 0; k <= 50; ++k) CHECK(gfun(x * (1 + 0.37L * k * k)) >= -1e-9L);
    if (x > 1 + 1e-9) CHECK(gfun(x * (1 - 1e-9L)) < 1e-9L);
  }
  // Comfortably satisfied at the floor.
  Interval f = solve_loglog_threshold(Interval(1), Interval(1), Interval(1), Interval(1), Interval(0), Interval(5));
  CHECK(f.mid_d() == 5.0);
}

TEST_CASE("diameter bound") {
  DiameterReport r = diameter_bound(GenSetZ::lubotzky());
  long double o = oracle_norm_log(1, 3, 0, 1);
  long double a = std::log(8 * o / 3) / std::log1p(1.0L / 3024);
  CHECK(std::fabs(r.a_stated.mid_d() / static_cast<double>(a) - 1) < 1e-12);
  CHECK(r.coeff_log2_stated.certainly_ge(Interval(5554)));
  CHECK(r.coeff_log2_stated.certainly_le(Interval(5556)));
  CHECK(r.p_min == 11);
  CHECK(std::fabs(r.delta2.mid_d() - static_cast<double>(std::log(3.0L) / (8 * o))) < 1e-12);
  CHECK(r.a_derived.mid_d() > 0);
}

TEST_CASE("Babai constant and transfer expansion") {
  Interval c = babai_constant(Table::delta());
  CHECK(c.certainly_ge(Interval(3322)));
  CHECK(c.certainly_le(Interval(Table::kBabaiC)));
  Interval cs = babai_constant(Table::delta_sharp());
  CHECK(std::fabs(cs.mid_d() - std::log(3.0) / std::log1p(1.0 / 1512)) < 1e-9);
  for (uint64_t s : {2u, 4u, 6u}) {
    for (long n = 1; n <= 12; ++n) {
      mpz_class sp;
      mpz_ui_pow_ui(sp.get_mpz_t(), s, n);
      mpz_class expect = 4 * (sp - 1) / (s - 1);
      CHECK(transfer_expansion(s, mpq_class(n)) == expect);
      CHECK(transfer_expansion(s, mpq_class(2 * n + 1, 2)) == expect);
    }
  }
  CHECK_THROWS_AS(transfer_expansion(4, mpq_class(1, 2)), DomainError);
}

TEST_CASE("delta1 rational and interval forms agree") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 200; ++it) {
    mpq_class delta(1, 1 + rng() % 5000), gamma(1, 2 + rng() % 1000), eps(1, 1 + rng() % 64);
    mpq_class q = flattening_delta1(delta, gamma, eps);
    mpq_class a = delta * gamma / 1875, b = eps / 1874;
    CHECK(q == (a < b ? a : b) / 2);
    CHECK(flattening_delta1(Interval(delta), Interval(gamma), Interval(eps)).contains(Interval(q)));
  }
  CHECK_THROWS_AS(flattening_delta1(mpq_class(0), mpq_class(1, 2), mpq_class(1)), DomainError);
}

TEST_CASE("interval arithmetic encloses a high-precision reference") {
  // Random expression trees evaluated both ways; the 400-bit reference must
  // lie in the interval up to its own rounding.
  std::mt19937_64 rng(20260101);
  const Ref tol("1e-90");
  int checked = 0;
  std::function<std::pair<Interval, Ref>(int)> gen = [&](int depth) -> std::pair<Interval, Ref> {
    if (depth == 0 || rng() % 4 == 0) {
      long p = static_cast<long>(rng() % 2001) - 1000;
      long q = 1 + static_cast<long>(rng() % 97);
      return {Interval(mpq_class(p, q)), Ref(p) / Ref(q)};
    }
    auto [x, rx] = gen(depth - 1);
    switch (rng() % 7) {
      case 0: { auto [y, ry] = gen(depth - 1); return {x + y, rx + ry}; }
      case 1: { auto [y, ry] = gen(depth - 1); return {x - y, rx - ry}; }
      case 2: {
        auto [y, ry] = gen(depth - 1);
        if (abs(rx * ry) > Ref("1e40")) return {x, rx};
        return {x * y, rx * ry};
      }
      case 3: {
        auto [y, ry] = gen(depth - 1);
        if (y.contains_zero() || abs(ry) < Ref("1e-20")) return {x, rx};
        return {x / y, rx / ry};
      }
      case 4:
        if (!x.certainly_positive()) return {x, rx};
        return {log(x), log(rx)};
      case 5:
        if (abs(rx) > 40) return {x, rx};
        return {exp(x), exp(rx)};
      default:
        if (x.certainly_negative() || x.contains_zero()) return {x, rx};
        return {sqrt(x), sqrt(rx)};
    }
  };
  for (int it = 0; it < 1000; ++it) {
    auto [x, rx] = gen(5);
    Ref lo = to_ref(x.lo()), hi = to_ref(x.hi());
    Ref slack = tol * (1 + abs(rx));
    CHECK(lo <= rx + slack);
    CHECK(rx - slack <= hi);
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("monotonicity of gamma and j") {
  // gamma decreases in ln max ||s|| and increases in |S|; j decreases in gamma.
  Interval prev_g;
  for (long k = 1; k <= 30; ++k) {
    Interval ti(mpq_class(k, 10));
    GammaPair g = compute_gamma(6, ti);
    CHECK(compute_gamma(8, ti).raw.certainly_ge(g.raw));
    if (k > 1) CHECK(g.raw.certainly_lt(prev_g));
    prev_g = g.raw;
  }
}

TEST_CASE("random admissible generating sets have gamma_eff <= 2^-5") {
  std::mt19937_64 rng(4100);
  int tried = 0;
  while (tried < 300) {
    size_t half = 2 + rng() % 3;
    std::vector<groups::IntEntries> mats;
    for (size_t i = 0; i < half; ++i) {
      // Random product of elementary matrices.
      mpz_class a = 1, b = 0, c = 0, d = 1;
      int steps = 1 + static_cast<int>(rng() % 4);
      for (int k = 0; k < steps; ++k) {
        long t = static_cast<long>(rng() % 7) - 3;
        if (t == 0) t = 1;
        if (k % 2 == 0) { b += a * t; d += c * t; } else { a += b * t; c += d * t; }
      }
      mats.push_back({a, b, c, d});
    }
    GenSetZ s;
    try {
      s = GenSetZ::from_entries(mats, true);
    } catch (const DomainError&) {
      continue;
    }
    if (s.size() != 2 * half) continue;
    GammaPair g = compute_gamma(s);
    CHECK(g.eff_at_most_2m5);
    CHECK(g.eff.certainly_le(Interval(mpq_class(1, 32))));
    ++tried;
  }
}
