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

#include "sl2lab/harness.hpp"

#include <map>

#include "sl2lab/error.hpp"
#include "sl2lab/growth.hpp"
#include "sl2lab/sampling.hpp"
#include "sl2lab/setcalc.hpp"
#include "sl2lab/torus.hpp"
#include "sl2lab/walks.hpp"

namespace sl2lab::harness {

Json to_json(const constants::Interval& x, int digits) {
  return Json{{"lo", x.lo_str(digits)}, {"hi", x.hi_str(digits)}};
}

Json to_json(const CheckReport& r) {
  Json j;
  j["check"] = r.check;
  j["ok"] = r.ok();
  if (r.inconclusive) j["inconclusive"] = true;
  Json clauses = Json::array();
  for (const auto& c : r.clauses) {
    Json cj{{"name", c.name}, {"holds", c.holds}};
    if (!c.lhs.empty()) cj["lhs"] = c.lhs;
    if (!c.rhs.empty()) cj["rhs"] = c.rhs;
    clauses.push_back(std::move(cj));
  }
  j["clauses"] = std::move(clauses);
  if (!r.facts.empty()) {
    Json facts = Json::object();
    for (const auto& [k, v] : r.facts) facts[k] = v;
    j["facts"] = std::move(facts);
  }
  return j;
}

Json to_json(const constants::BoundReport& b) {
  Json j;
  j["s_size"] = b.s_size;
  j["tau_inv"] = to_json(b.tau_inv);
  j["tau"] = to_json(b.tau);
  j["gamma_raw"] = to_json(b.gamma.raw);
  j["gamma_eff"] = to_json(b.gamma.eff);
  j["gamma_eff_at_most_2^-5"] = b.gamma.eff_at_most_2m5;
  j["delta1"] = to_json(b.delta1);
  j["j_stated"] = to_json(b.j_stated);
  j["j_chain"] = to_json(b.j_chain);
  j["j_statement"] = to_json(b.j_statement);
  j["j_used"] = to_json(b.j_used);
  j["gap_log2"] = to_json(b.gap_log2);
  j["stated_exponent"] = to_json(b.stated_exponent);
  j["implies_stated_form"] = b.implies_stated_form;
  j["exponent_at_most_2^36"] = b.exponent_at_most_2_36;
  return j;
}

Json to_json(const constants::ThresholdReport& t) {
  Json terms = Json::array();
  for (const auto& term : t.terms) terms.push_back(Json{{"name", term.name}, {"log2_p", to_json(term.log2_p)}});
  return Json{{"terms", std::move(terms)},
              {"binding", t.binding},
              {"log2_p", to_json(t.log2_p)},
              {"log2_log2_p", to_json(t.log2_log2_p)},
              {"within_2^46", t.within_2_46}};
}

Json to_json(const constants::DiameterReport& d) {
  return Json{{"a_stated", to_json(d.a_stated)},
              {"coeff_log2_stated", to_json(d.coeff_log2_stated)},
              {"delta2", to_json(d.delta2)},
              {"a_derived", to_json(d.a_derived)},
              {"coeff_log2_derived", to_json(d.coeff_log2_derived)},
              {"validity", to_json(d.validity)},
              {"p_min", d.p_min}};
}

Json to_json(const spectral::SpectrumSummary& s, bool with_eigenvalues) {
  Json j{{"lambda1", s.lambda1},     {"rho_plus", s.rho_plus}, {"rho", s.rho},
         {"lambda_min", s.lambda_min}, {"method", s.method},     {"residual", s.residual}};
  if (with_eigenvalues) j["eigenvalues"] = s.eigenvalues;
  return j;
}

namespace {

struct Ctx {
  const SuiteConfig& cfg;
  const Sink& sink;
  SuiteSummary out;

  Json record(uint32_t p) const { return Json{{"schema", kSchema}, {"suite", cfg.suite}, {"p", p}}; }
  // Emits a record for a set of reports; counts one run.
  void emit(Json rec, const std::vector<CheckReport>& reports) {
    bool ok = true, inc = false;
    Json arr = Json::array();
    for (const auto& r : reports) {
      ok = ok && r.ok();
      inc = inc || r.inconclusive;
      arr.push_back(to_json(r));
    }
    rec["reports"] = std::move(arr);
    rec["ok"] = ok;
    ++out.runs;
    if (!ok) ++out.violations;
    if (inc) ++out.inconclusive;
    if (sink) sink(rec);
  }
};

groups::Sl2GroupPtr sl2(uint32_t p) { return groups::Sl2Group::create(p); }

// Regular semisimple element; trace 0 only when allowed.
Elem random_regular(const groups::Sl2Group& g, sampling::Rng& rng, bool allow_zero_trace) {
  for (;;) {
    Elem x = sampling::random_element(g, rng);
    uint32_t t = g.element(x).trace();
    if (t != 2 && t != g.p() - 2 && (allow_zero_trace || t != 0)) return x;
  }
}

void run_growth(Ctx& c) {
  uint64_t sharp_fail = 0;
  std::map<std::string, uint64_t> verdicts;
  for (uint32_t p : c.cfg.primes) {
    auto g = sl2(p);
    sampling::Rng rng(c.cfg.seed, p);
    auto subs = sampling::discover_subgroups(g, rng, 20);
    for (uint64_t i = 0; i < c.cfg.samples; ++i) {
      auto h = sampling::sample_generating_set(g, i, rng, subs);
      auto v = growth::helfgott_check(h, p >= 7);
      Json rec = c.record(p);
      rec["sample"] = i;
      rec["size"] = v.size;
      rec["triple_size"] = v.triple_size;
      rec["ratio"] = v.ratio.get_str();
      rec["verdict"] = growth::growth_case_name(v.verdict);
      rec["exponent_check"] = v.exponent_check;
      if (v.sharp_check) rec["sharp_check"] = *v.sharp_check;
      CheckReport r;
      r.check = "helfgott";
      r.add("verdict", v.verdict != growth::GrowthCase::kViolation);
      ++verdicts[growth::growth_case_name(v.verdict)];
      if (v.sharp_check && !*v.sharp_check) ++sharp_fail;
      c.emit(std::move(rec), {r});
    }
  }
  c.out.summary["verdicts"] = verdicts;
  c.out.summary["sharp_failures"] = sharp_fail;
}

void run_escape(Ctx& c) {
  for (uint32_t p : c.cfg.primes) {
    auto g = sl2(p);
    sampling::Rng rng(c.cfg.seed, p);
    if (c.cfg.search_sharpness) {
      auto s = growth::escape_sharpness_search(g, rng, c.cfg.samples);
      Json rec = c.record(p);
      rec["sharpness_search"] = Json{{"found", s.found},
                                     {"candidates", s.candidates},
                                     {"generating", s.generating}};
      if (s.found) {
        Json ex = Json::array();
        for (Elem x : s.example) ex.push_back(g->element_str(x));
        rec["sharpness_search"]["example"] = std::move(ex);
      }
      c.out.summary["sharpness_p" + std::to_string(p)] = s.found ? "found" : "not_found";
      c.emit(std::move(rec), {});
      continue;
    }
    auto subs = sampling::discover_subgroups(g, rng, 20);
    for (uint64_t i = 0; i < c.cfg.samples; ++i) {
      auto h = sampling::sample_generating_set(g, i, rng, subs);
      Json rec = c.record(p);
      rec["sample"] = i;
      rec["size"] = h.size();
      c.emit(std::move(rec), {growth::escape_check(h)});
    }
  }
}

void run_nonconc(Ctx& c) {
  for (uint32_t p : c.cfg.primes) {
    auto g = sl2(p);
    sampling::Rng rng(c.cfg.seed, p);
    auto subs = sampling::discover_subgroups(g, rng, 20);
    for (uint64_t i = 0; i < c.cfg.samples; ++i) {
      auto h = sampling::sample_generating_set(g, i, rng, subs);
      Elem s = random_regular(*g, rng, false);
      Elem x = sampling::random_element(*g, rng);
      auto gamma = static_cast<uint32_t>(1 + rng.below(p - 1));
      auto torus = groups::centralizer_torus(g, g->element(random_regular(*g, rng, false)));
      Json rec = c.record(p);
      rec["sample"] = i;
      rec["size"] = h.size();
      c.emit(std::move(rec), {growth::nonconcentration_check(h, s), growth::subkey_check(h, x, gamma),
                              growth::dichotomy_check(h, torus), growth::orbit_stabilizer_check(h, s)});
    }
  }
}

void run_pink(Ctx& c) {
  Json tallies = Json::object();
  for (uint32_t p : c.cfg.primes) {
    if (p < 5) throw DomainError("pink suite needs p >= 5");
    auto g = sl2(p);
    sampling::Rng rng(c.cfg.seed, p);
    std::map<std::string, uint64_t> tally;
    std::map<uint32_t, GroupSubset> fibers;
    auto fiber_of = [&](uint32_t t) -> const GroupSubset& {
      auto it = fibers.find(t);
      if (it == fibers.end()) it = fibers.emplace(t, growth::trace_fiber(g, t)).first;
      return it->second;
    };
    auto visit = [&](Elem gel, Elem y1, Elem y2) {
      const auto& fib = fiber_of(g->element(gel).trace());
      auto rec = growth::pink_fiber(g, fib, gel, y1, y2);
      ++tally[growth::pink_case_name(rec.tag)];
      ++c.out.runs;
      if (rec.tag == growth::PinkCase::kUnexplained) {
        ++c.out.violations;
        if (c.sink) {
          Json j = c.record(p);
          j["g"] = g->element_str(gel);
          j["y1"] = g->element_str(y1);
          j["y2"] = g->element_str(y2);
          j["fiber_size"] = rec.fiber.size();
          j["tag"] = growth::pink_case_name(rec.tag);
          c.sink(j);
        }
      }
    };
    if (c.cfg.exhaustive) {
      // The fiber depends on g only through its trace.
      for (uint32_t t = 0; t < p; ++t) {
        if (t == 2 || t == p - 2) continue;
        Elem gel = fiber_of(t).elements().front();
        for (Elem y1 = 0; y1 < g->order(); ++y1) {
          for (Elem y2 = 0; y2 < g->order(); ++y2) visit(gel, y1, y2);
        }
      }
    } else {
      for (uint64_t i = 0; i < c.cfg.samples; ++i) {
        Elem gel = random_regular(*g, rng, true);
        Elem y1 = sampling::random_element(*g, rng), y2 = sampling::random_element(*g, rng);
        visit(gel, y1, y2);
      }
    }
    tallies[std::to_string(p)] = tally;
    if (c.sink) {
      Json j = c.record(p);
      j["mode"] = c.cfg.exhaustive ? "exhaustive" : "sampled";
      j["tags"] = tally;
      c.sink(j);
    }
  }
  c.out.summary["tags"] = std::move(tallies);
}

std::vector<GroupPtr> small_groups(const std::vector<uint32_t>& primes) {
  std::vector<GroupPtr> out;
  for (uint32_t p : primes) {
    auto g = sl2(p);
    if (g->order() > 2000) throw DomainError("set-calculus suites need |G| <= 2000");
    out.push_back(g);
  }
  out.push_back(std::make_shared<groups::SymmetricGroup>(5));
  return out;
}

// A pair (A, B) from one of three regimes by index: a symmetric set with B = A,
// a subgroup plus a few stray elements with B a translate, or two unstructured sets.
std::pair<GroupSubset, GroupSubset> appendix_instance(const GroupPtr& g, uint64_t i, sampling::Rng& rng,
                                                      const std::vector<GroupSubset>& subs) {
  const size_t cap = std::max<size_t>(4, g->order() / 10);
  switch (i % 3) {
    case 0: {
      auto a = sampling::random_symmetric_set(g, 3 + rng.below(cap), rng);
      return {a, a};
    }
    case 1: {
      if (!subs.empty()) {
        const auto& k = subs[rng.below(subs.size())];
        if (k.size() <= cap * 2) {
          std::vector<Elem> av(k.begin(), k.end()), bv;
          for (int e = 0; e < 2; ++e) av.push_back(sampling::random_element(*g, rng));
          Elem t = sampling::random_element(*g, rng);
          for (Elem y : k) bv.push_back(g->mul(y, t));
          bv.push_back(sampling::random_element(*g, rng));
          return {GroupSubset(g, av), GroupSubset(g, bv)};
        }
      }
      [[fallthrough]];
    }
    default:
      return {sampling::random_subset(g, 2 + rng.below(cap), rng), sampling::random_subset(g, 2 + rng.below(cap), rng)};
  }
}

void run_appendix(Ctx& c) {
  auto groups = small_groups(c.cfg.primes);
  uint64_t k = 0;
  for (const auto& g : groups) {
    sampling::Rng rng(c.cfg.seed, k++);
    auto subs = sampling::discover_subgroups(g, rng, 20);
    for (uint64_t i = 0; i < c.cfg.samples; ++i) {
      auto [a, b] = appendix_instance(g, i, rng, subs);
      Json rec{{"schema", kSchema}, {"suite", c.cfg.suite}, {"group", g->name()}, {"sample", i},
               {"size_a", a.size()}, {"size_b", b.size()}};
      std::vector<CheckReport> reports;
      // approximate subgroup from tripling, on the symmetrized A with 1
      std::vector<Elem> sym(a.begin(), a.end());
      for (Elem x : a) sym.push_back(g->inv(x));
      sym.push_back(g->identity());
      reports.push_back(setcalc::approx_from_tripling(GroupSubset(g, sym)).report);
      // tightest rational alpha with d(A, B^{-1}) <= log alpha
      const auto d = setcalc::ruzsa_distance(a, b.inverse());
      const mpq_class alpha = setcalc::rational_ceiling_sqrt(d.product * d.product, mpz_class(d.size_a) * d.size_b);
      reports.push_back(setcalc::th46_construct(a, b, std::max(alpha, mpq_class(1))).report);
      const auto e = setcalc::energy(a, b);
      reports.push_back(setcalc::energy_to_approx(a, b, e.alpha()).report);
      c.emit(std::move(rec), reports);
    }
  }
}

void run_ruzsa(Ctx& c) {
  auto groups = small_groups(c.cfg.primes);
  uint64_t k = 0;
  for (const auto& g : groups) {
    sampling::Rng rng(c.cfg.seed, k++);
    auto subs = sampling::discover_subgroups(g, rng, 20);
    const size_t cap = std::max<size_t>(4, g->order() / 10);
    for (uint64_t i = 0; i < c.cfg.samples; ++i) {
      auto a = sampling::random_symmetric_set(g, 2 + rng.below(cap), rng);
      auto b = sampling::random_subset(g, 1 + rng.below(cap), rng);
      auto cc = sampling::random_subset(g, 1 + rng.below(cap), rng);
      auto h = sampling::sample_generating_set(g, i, rng, subs);
      std::vector<CheckReport> reports;
      reports.push_back(setcalc::ruzsa_lemma_check(a, 4, 4));
      reports.push_back(setcalc::small_p_check(h));
      if (!subs.empty()) reports.push_back(setcalc::intersection_lemma_check(h, subs[rng.below(subs.size())], 2));
      reports.push_back(setcalc::diagram_rules_check(a, b, cc));
      reports.push_back(setcalc::ruzsa_cover(a, b, setcalc::CoverSide::kRight).report);
      reports.push_back(setcalc::ruzsa_cover(a, b, setcalc::CoverSide::kLeft).report);
      Json rec{{"schema", kSchema}, {"suite", c.cfg.suite}, {"group", g->name()}, {"sample", i}};
      c.emit(std::move(rec), reports);
    }
  }
}

void run_flattening(Ctx& c) {
  for (uint32_t p : c.cfg.primes) {
    auto g = sl2(p);
    std::vector<walks::Distribution> dists;
    dists.push_back(walks::Distribution::unit(g));
    dists.push_back(walks::Distribution::uniform(g));
    const uint32_t max_steps = static_cast<uint32_t>(std::min<uint64_t>(c.cfg.samples, 6));
    auto w = walks::walk(p, c.cfg.gens, 0);
    for (uint32_t n = 1; n <= max_steps; ++n) {
      w = walks::step(w);
      dists.push_back(w);
    }
    auto label = [&](size_t i) { return i == 0 ? std::string("unit") : i == 1 ? std::string("uniform") : "walk" + std::to_string(i - 1); };
    for (size_t i = 0; i < dists.size(); ++i) {
      for (size_t j = i; j < dists.size(); ++j) {
        Json rec = c.record(p);
        rec["x1"] = label(i);
        rec["x2"] = label(j);
        c.emit(std::move(rec), {walks::flattening_identities_check(dists[i], dists[j])});
      }
    }
  }
}

void run_dickson(Ctx& c) {
  std::map<std::string, uint64_t> tally;
  for (uint32_t p : c.cfg.primes) {
    auto g = sl2(p);
    sampling::Rng rng(c.cfg.seed, p);
    for (const auto& h : sampling::discover_subgroups(g, rng, static_cast<int>(c.cfg.samples))) {
      auto r = walks::dickson_classify(h);
      ++tally[walks::dickson_class_name(r.cls)];
      Json rec = c.record(p);
      rec["order"] = r.order;
      rec["class"] = walks::dickson_class_name(r.cls);
      rec["commutators"] = r.commutators;
      CheckReport cr;
      cr.check = "dickson";
      cr.add("not_violation", r.cls != walks::DicksonClass::kViolation);
      c.emit(std::move(rec), {cr});
    }
  }
  c.out.summary["classes"] = tally;
}

void run_adhoc(Ctx& c) {
  for (uint32_t p : c.cfg.primes) {
    auto g = sl2(p);
    sampling::Rng rng(c.cfg.seed, p);
    auto subs = sampling::discover_subgroups(g, rng, static_cast<int>(c.cfg.samples));
    for (const auto& h : subs) {
      // only subgroups where the two-step relation holds mod p enter the count
      if (!walks::dickson_classify(h).relation) continue;
      for (uint32_t m = 1; m <= 8; ++m) {
        Json rec = c.record(p);
        rec["subgroup_order"] = h.size();
        rec["m"] = m;
        c.emit(std::move(rec), {walks::adhoc_ball_count(c.cfg.gens, p, h, m, 10'000'000)});
      }
    }
  }
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"growth", "escape", "pink", "nonconc", "appendix", "ruzsa", "flattening", "dickson", "adhoc"};
}

SuiteSummary run_suite(const SuiteConfig& cfg, const Sink& sink) {
  if (cfg.primes.empty()) throw DomainError("no primes given");
  Ctx c{cfg, sink, {}};
  c.out.summary = Json::object();
  if (cfg.suite == "growth") run_growth(c);
  else if (cfg.suite == "escape") run_escape(c);
  else if (cfg.suite == "nonconc") run_nonconc(c);
  else if (cfg.suite == "pink") run_pink(c);
  else if (cfg.suite == "appendix") run_appendix(c);
  else if (cfg.suite == "ruzsa") run_ruzsa(c);
  else if (cfg.suite == "flattening") run_flattening(c);
  else if (cfg.suite == "dickson") run_dickson(c);
  else if (cfg.suite == "adhoc") run_adhoc(c);
  else throw DomainError("unknown suite '" + cfg.suite + "'");
  return c.out;
}

}  // namespace sl2lab::harness
