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

// Command-line front end. Exit codes: 0 ok, 1 a checked inequality failed,
// 2 bad arguments or unreadable input, 3 a precondition or resource limit.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sl2lab/constants.hpp"
#include "sl2lab/error.hpp"
#include "sl2lab/freegrp.hpp"
#include "sl2lab/harness.hpp"
#include "sl2lab/spectral.hpp"
#include "sl2lab/subset.hpp"
#include "sl2lab/walks.hpp"

namespace {

using namespace sl2lab;
using harness::Json;

constexpr int kExitViolation = 1;
constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

uint32_t parse_uint(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw ParseError("not a number: '" + s + "'");
  unsigned long long v = std::stoull(s);
  if (v > UINT32_MAX) throw ParseError("number too large: '" + s + "'");
  return static_cast<uint32_t>(v);
}

// "7,11,13" or "5..31" (primes in the range) or a mix of both.
std::vector<uint32_t> parse_primes(const std::string& spec) {
  std::vector<uint32_t> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto dots = item.find("..");
    if (dots != std::string::npos) {
      uint32_t lo = parse_uint(item.substr(0, dots)), hi = parse_uint(item.substr(dots + 2));
      if (lo > hi) throw ParseError("empty range '" + item + "'");
      for (uint32_t p = lo; p <= hi; ++p) {
        if (is_prime(p)) out.push_back(p);
      }
    } else {
      uint32_t p = parse_uint(item);
      if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
      out.push_back(p);
    }
  }
  if (out.empty()) throw ParseError("no primes in '" + spec + "'");
  return out;
}

uint32_t single_prime(const std::string& spec) {
  auto ps = parse_primes(spec);
  if (ps.size() != 1) throw ParseError("expected a single prime, got '" + spec + "'");
  return ps.front();
}

void print_interval(const char* name, const constants::Interval& x) {
  std::cout << name << " in [" << x.lo_str(12) << ", " << x.hi_str(12) << "]\n";
}

int cmd_gap_bound(const freegrp::GenSetZ& s, bool json) {
  auto b = constants::gap_bound(s);
  auto t = constants::p_threshold(s, b);
  auto d = constants::diameter_bound(s);
  auto babai = constants::babai_constant(constants::Table::delta());
  if (json) {
    Json j{{"schema", harness::kSchema}, {"command", "gap-bound"}};
    j["bound"] = harness::to_json(b);
    j["threshold"] = harness::to_json(t);
    j["diameter"] = harness::to_json(d);
    j["babai_constant"] = harness::to_json(babai);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "|S| = " << b.s_size << "\n";
    print_interval("tau^-1", b.tau_inv);
    print_interval("gamma_raw", b.gamma.raw);
    print_interval("gamma_eff", b.gamma.eff);
    print_interval("j_used", b.j_used);
    print_interval("log2 lambda1 lower bound", b.gap_log2);
    print_interval("2^35/gamma_raw", b.stated_exponent);
    std::cout << "implies lambda1 >= 2^(-2^35/gamma_raw): " << (b.implies_stated_form ? "yes" : "no") << "\n";
    std::cout << "exponent <= 2^36: " << (b.exponent_at_most_2_36 ? "yes" : "no") << "\n";
    print_interval("log2 p_threshold", t.log2_p);
    print_interval("log2 log2 p_threshold", t.log2_log2_p);
    std::cout << "binding term: " << t.binding << "\n";
    print_interval("log2 diameter coefficient (stated A)", d.coeff_log2_stated);
    print_interval("log2 diameter coefficient (derived A)", d.coeff_log2_derived);
    std::cout << "diameter bound valid for p >= " << d.p_min << "\n";
    print_interval("ln 3 / ln(1 + delta)", babai);
  }
  return 0;
}

int cmd_verify(const harness::SuiteConfig& cfg, bool json) {
  harness::Sink sink;
  if (json) sink = [](const Json& rec) { std::cout << rec.dump() << "\n"; };
  auto out = harness::run_suite(cfg, sink);
  Json summary{{"schema", harness::kSchema},
               {"suite", cfg.suite},
               {"seed", cfg.seed},
               {"runs", out.runs},
               {"violations", out.violations},
               {"inconclusive", out.inconclusive},
               {"details", out.summary}};
  if (json) {
    std::cout << Json{{"summary", summary}}.dump() << "\n";
  } else {
    std::cout << cfg.suite << ": " << out.runs << " runs, " << out.violations << " violations, " << out.inconclusive
              << " inconclusive\n"
              << out.summary.dump() << "\n";
  }
  return out.violations == 0 ? 0 : kExitViolation;
}

int cmd_spectrum(uint32_t p, const freegrp::GenSetZ& s, bool json, bool iterative, bool eigenvalues, uint64_t seed) {
  auto g = spectral::build_graph(p, s);
  auto sp = iterative ? spectral::spectrum_iterative(g, seed) : spectral::spectrum(g);
  if (json) {
    Json j{{"schema", harness::kSchema}, {"command", "spectrum"}, {"p", p}, {"order", g.order()}};
    j["spectrum"] = harness::to_json(sp, eigenvalues);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "p = " << p << ", |G| = " << g.order() << ", method " << sp.method << "\n";
    std::cout.precision(15);
    std::cout << "lambda1 = " << sp.lambda1 << "\nrho_plus = " << sp.rho_plus << "\nrho = " << sp.rho
              << "\nlambda_min = " << sp.lambda_min << "\nresidual = " << sp.residual << "\n";
  }
  return 0;
}

int cmd_walk(uint32_t p, const freegrp::GenSetZ& s, uint32_t steps, bool json, bool csv) {
  auto d = walks::walk(p, s, steps);
  if (csv) {
    std::cout << "element,index,count\n";
    for (Elem x = 0; x < d.group->order(); ++x) {
      if (d.counts[x] != 0) std::cout << "\"" << d.group->element_str(x) << "\"," << x << "," << d.counts[x] << "\n";
    }
    return 0;
  }
  Json j{{"schema", harness::kSchema},
         {"command", "walk"},
         {"p", p},
         {"steps", steps},
         {"denominator", d.denominator.get_str()},
         {"total", d.total().get_str()},
         {"support", d.support_size()},
         {"return_count", d.counts[d.group->identity()].get_str()},
         {"return_probability", walks::return_probability(d).get_str()}};
  if (json) {
    std::cout << j.dump() << "\n";
  } else {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() != "schema" && it.key() != "command") std::cout << it.key() << " = " << it.value() << "\n";
    }
  }
  return 0;
}

int cmd_diameter(uint32_t p, const freegrp::GenSetZ& s, bool json) {
  auto g = spectral::build_graph(p, s);
  const uint32_t diam = spectral::diameter(g);
  const uint32_t gi = spectral::girth(g);
  if (json) {
    std::cout << Json{{"schema", harness::kSchema}, {"command", "diameter"}, {"p", p}, {"order", g.order()},
                      {"diameter", diam}, {"girth", gi}}
                     .dump()
              << "\n";
  } else {
    std::cout << "p = " << p << ", |G| = " << g.order() << "\ndiameter = " << diam << "\ngirth = " << gi << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and certified computations for expansion in SL2(F_p)"};
  app.require_subcommand(1);

  std::string gens_spec = "lubotzky";
  std::string primes_spec;
  uint64_t seed = 0, samples = 100, mem_budget = 0;
  uint32_t steps = 0;
  bool json = false, csv = false, no_close = false, exhaustive = false, search_sharpness = false;
  bool iterative = false, eigenvalues = false;
  std::string suite;

  auto add_common = [&](CLI::App* sc) {
    sc->add_option("--gens", gens_spec, "built-in name (lubotzky, standard) or generator file")->capture_default_str();
    sc->add_flag("--json", json, "JSON output");
    sc->add_option("--mem-budget", mem_budget, "element budget for set products");
    sc->add_flag("--no-close", no_close, "do not add missing inverses from a generator file");
  };

  auto* gap = app.add_subcommand("gap-bound", "certified spectral gap, p threshold and diameter constants");
  add_common(gap);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify);
  verify->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(harness::suite_names()));
  verify->add_option("--p", primes_spec, "primes: LIST (7,11,13) or RANGE (5..31)")->required();
  auto* seed_opt = verify->add_option("--seed", seed, "RNG seed");
  verify->add_option("--samples", samples, "samples per prime")->capture_default_str();
  verify->add_flag("--exhaustive", exhaustive, "exhaustive scan where supported");
  verify->add_flag("--search-sharpness", search_sharpness, "escape: search for sharpness examples");

  auto* spec = app.add_subcommand("spectrum", "Markov operator spectrum of a Cayley graph");
  add_common(spec);
  spec->add_option("--p", primes_spec, "prime")->required();
  spec->add_flag("--iterative", iterative, "force the iterative solver");
  spec->add_flag("--eigenvalues", eigenvalues, "include the full spectrum (dense only)");
  spec->add_option("--seed", seed, "start-vector seed for the iterative solver");

  auto* walk = app.add_subcommand("walk", "exact random-walk counts");
  add_common(walk);
  walk->add_option("--p", primes_spec, "prime")->required();
  walk->add_option("--steps", steps, "number of steps")->required();
  walk->add_flag("--csv", csv, "per-element counts as CSV");

  auto* diam = app.add_subcommand("diameter", "diameter and girth by BFS");
  add_common(diam);
  diam->add_option("--p", primes_spec, "prime")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParse;
  }

  try {
    if (mem_budget) set_mem_budget(mem_budget);
    const auto gens = freegrp::GenSetZ::resolve(gens_spec, !no_close);
    if (gap->parsed()) return cmd_gap_bound(gens, json);
    if (verify->parsed()) {
      if (seed_opt->count() == 0) throw ParseError("verify needs --seed");
      harness::SuiteConfig cfg;
      cfg.suite = suite;
      cfg.primes = parse_primes(primes_spec);
      cfg.seed = seed;
      cfg.samples = samples;
      cfg.exhaustive = exhaustive;
      cfg.search_sharpness = search_sharpness;
      cfg.gens = gens;
      return cmd_verify(cfg, json);
    }
    if (spec->parsed()) return cmd_spectrum(single_prime(primes_spec), gens, json, iterative, eigenvalues, seed ? seed : 1);
    if (walk->parsed()) return cmd_walk(single_prime(primes_spec), gens, steps, json, csv);
    if (diam->parsed()) return cmd_diameter(single_prime(primes_spec), gens, json);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitParse;
}
