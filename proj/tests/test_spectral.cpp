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

#include <cmath>
#include <deque>
#include <numbers>
#include <set>

#include "doctest.h"
#include "sl2lab/constants.hpp"
#include "sl2lab/error.hpp"
#include "sl2lab/freegrp.hpp"
#include "sl2lab/spectral.hpp"

using namespace sl2lab;
using namespace sl2lab::spectral;
using freegrp::GenSetZ;
using groups::Sl2Group;

namespace {

std::vector<std::set<Elem>> simple_adjacency(const CayleyGraph& g) {
  std::vector<std::set<Elem>> adj(g.order());
  for (Elem x = 0; x < g.order(); ++x) {
    for (Elem s : g.gens()) {
      Elem y = g.group().mul(x, s);
      if (y != x) {
        adj[x].insert(y);
        adj[y].insert(x);
      }
    }
  }
  return adj;
}

std::vector<int> bfs_from(const std::vector<std::set<Elem>>& adj, Elem src, Elem skip_a = 0, Elem skip_b = 0,
                          bool skip = false) {
  std::vector<int> d(adj.size(), -1);
  std::deque<Elem> q{src};
  d[src] = 0;
  while (!q.empty()) {
    Elem u = q.front();
    q.pop_front();
    for (Elem v : adj[u]) {
      if (skip && ((u == skip_a && v == skip_b) || (u == skip_b && v == skip_a))) continue;
      if (d[v] < 0) {
        d[v] = d[u] + 1;
        q.push_back(v);
      }
    }
  }
  return d;
}

// Girth as the shortest (u, v)-path avoiding edge uv, plus one, over all edges.
uint32_t girth_oracle(const CayleyGraph& g) {
  auto adj = simple_adjacency(g);
  int best = -1;
  for (Elem u = 0; u < g.order(); ++u) {
    for (Elem v : adj[u]) {
      if (v < u) continue;
      int d = bfs_from(adj, u, u, v, true)[v];
      if (d > 0 && (best < 0 || d + 1 < best)) best = d + 1;
    }
  }
  return best < 0 ? 0 : static_cast<uint32_t>(best);
}

uint32_t diameter_oracle(const CayleyGraph& g) {
  auto adj = simple_adjacency(g);
  int best = 0;
  for (Elem u = 0; u < g.order(); ++u) {
    for (int d : bfs_from(adj, u)) best = std::max(best, d);
  }
  return static_cast<uint32_t>(best);
}

// Exact return probability sum_x P(X_m = x)^2 by counting walks.
mpq_class return_probability_oracle(const CayleyGraph& g, int m) {
  std::vector<mpz_class> cur(g.order(), 0);
  cur[g.group().identity()] = 1;
  for (int i = 0; i < m; ++i) {
    std::vector<mpz_class> next(g.order(), 0);
    for (Elem x = 0; x < g.order(); ++x) {
      if (cur[x] == 0) continue;
      for (Elem s : g.gens()) next[g.group().mul(x, s)] += cur[x];
    }
    cur.swap(next);
  }
  mpz_class sq = 0, total = 0;
  for (const auto& c : cur) {
    sq += c * c;
    total += c;
  }
  return ratio(sq, total * total);
}

CayleyGraph complete_graph(const GroupPtr& g) {
  std::vector<Elem> all;
  for (Elem x = 0; x < g->order(); ++x) {
    if (x != g->identity()) all.push_back(x);
  }
  return CayleyGraph(g, all);
}

}  // namespace

TEST_CASE("standard generators mod 5 give a connected 4-regular graph") {
  auto g = build_graph(5, GenSetZ::standard());
  CHECK(g.order() == 120);
  CHECK(g.degree() == 4);
  CHECK(g.connected());
  CHECK(diameter(g) == diameter_oracle(g));
  CHECK(girth(g) == girth_oracle(g));
  for (Elem x = 0; x < g.order(); x += 7) {
    for (size_t i = 0; i < g.degree(); ++i) CHECK(g.step(g.step(x, i), g.inverse_index(i)) == x);
  }
}

TEST_CASE("cyclic generating set gives a disconnected graph") {
  auto g = Sl2Group::create(7);
  Elem u = g->index(groups::Sl2ModP::make(7, 1, 1, 0, 1));
  CayleyGraph c(g, {u, g->inv(u)});
  CHECK_FALSE(c.connected());
  CHECK_THROWS_AS(spectrum(c), DomainError);
  CHECK_THROWS_AS(diameter(c), DomainError);
  CHECK_THROWS_AS(CayleyGraph(g, {u}), DomainError);
}

TEST_CASE("Lubotzky set collides mod 3") { CHECK_THROWS_AS(build_graph(3, GenSetZ::lubotzky()), DomainError); }

TEST_CASE("complete graph spectrum, diameter and gap bound") {
  for (GroupPtr grp : {GroupPtr(Sl2Group::create(5)), GroupPtr(std::make_shared<groups::CyclicGroup>(30))}) {
    auto g = complete_graph(grp);
    auto s = spectrum_dense(g);
    const double n = g.order();
    CHECK(s.lambda1 == doctest::Approx(n / (n - 1)).epsilon(1e-12));
    CHECK(s.rho == doctest::Approx(1 / (n - 1)).epsilon(1e-12));
    CHECK(diameter(g) == 1);
    CHECK(gap_from_diameter(g) == doctest::Approx(1 / (n - 1)));
    CHECK(gap_from_diameter(g) <= s.lambda1 + 1e-9);
  }
}

TEST_CASE("cycle graphs: known spectrum and bipartite symmetry") {
  for (uint32_t n : {6u, 7u, 12u}) {
    auto grp = std::make_shared<groups::CyclicGroup>(n);
    CayleyGraph g(grp, {1, n - 1});
    auto s = spectrum_dense(g);
    REQUIRE(s.eigenvalues.size() == n);
    std::vector<double> want;
    for (uint32_t k = 0; k < n; ++k) want.push_back(std::cos(2 * std::numbers::pi * k / n));
    std::sort(want.begin(), want.end());
    for (uint32_t k = 0; k < n; ++k) CHECK(s.eigenvalues[k] == doctest::Approx(want[k]).epsilon(1e-12));
    if (n % 2 == 0) {
      CHECK(s.lambda_min == doctest::Approx(-1.0));
      CHECK(s.rho == doctest::Approx(1.0));
    }
    CHECK(girth(g) == n);
    CHECK(girth(g) == girth_oracle(g));
  }
}

TEST_CASE("involutive generators contribute single edges") {
  auto grp = std::make_shared<groups::SymmetricGroup>(3);
  Elem t = 0, c = 0;
  for (Elem x = 1; x < grp->order(); ++x) {
    if (grp->mul(x, x) == grp->identity()) t = x;
    else c = x;
  }
  CayleyGraph g(grp, {t, c, grp->inv(c)});
  CHECK(g.connected());
  CHECK(girth(g) == girth_oracle(g));
  CHECK(girth(g) == 3);  // the 3-cycle generates a triangle
  CayleyGraph inv_only(grp, {t});
  CHECK(girth(inv_only) == 0);
}

TEST_CASE("dense and iterative spectra agree") {
  for (uint32_t p : {5u, 7u, 11u, 13u}) {
    auto g = build_graph(p, GenSetZ::lubotzky());
    auto d = spectrum_dense(g);
    auto it = spectrum_iterative(g);
    CHECK(it.residual <= 1e-10);
    CHECK(d.lambda1 == doctest::Approx(it.lambda1).epsilon(1e-8));
    CHECK(d.rho == doctest::Approx(it.rho).epsilon(1e-8));
    CHECK(d.lambda1 > 0);
    CHECK(d.lambda1 <= 2);
    CHECK(d.rho >= std::fabs(d.rho_plus));
    for (double l : d.eigenvalues) {
      CHECK(l >= -1 - 1e-12);
      CHECK(l <= 1 + 1e-12);
    }
    // exactly one eigenvalue at 1 (connected)
    CHECK(std::count_if(d.eigenvalues.begin(), d.eigenvalues.end(), [](double l) { return l > 1 - 1e-9; }) == 1);
    CHECK(gap_from_diameter(g) <= d.lambda1 + 1e-9);
  }
}

TEST_CASE("trace identity against exact walk counts") {
  for (uint32_t p : {5u, 7u, 13u}) {
    auto g = build_graph(p, GenSetZ::lubotzky());
    auto s = spectrum_dense(g);
    for (int m = 1; m <= 6; ++m) CHECK(trace_identity_error(s, g.order(), m, return_probability_oracle(g, m)) <= 1e-9);
  }
  auto g5 = build_graph(5, GenSetZ::standard());
  auto s5 = spectrum_dense(g5);
  CHECK(trace_identity_error(s5, 120, 3, return_probability_oracle(g5, 3)) <= 1e-9);
}

TEST_CASE("trace method bound holds for Lubotzky mod 11") {
  auto g = build_graph(11, GenSetZ::lubotzky());
  auto s = spectrum_dense(g);
  std::vector<double> rhs;
  for (int m = 1; m <= 10; ++m) {
    auto r = trace_method_check(g, 11, s, m, return_probability_oracle(g, m));
    CHECK(r.ok());
  }
  CHECK_THROWS_AS(trace_method_check(g, 11, s, 0, mpq_class(1)), DomainError);
}

TEST_CASE("girth of Lubotzky graphs meets the tree-lift bound") {
  const double tau = 1.0 / constants::compute_tau_inv(GenSetZ::lubotzky()).mid_d();
  for (uint32_t p : {5u, 7u, 11u}) {
    auto g = build_graph(p, GenSetZ::lubotzky());
    uint32_t gi = girth(g);
    CHECK(gi == girth_oracle(g));
    CHECK(gi >= 2 * tau * std::log(p / 2.0));
  }
  auto g = build_graph(101, GenSetZ::lubotzky());
  uint32_t gi = girth(g);
  CHECK(gi >= 7);
  CHECK(gi >= 2 * tau * std::log(50.5));
}
