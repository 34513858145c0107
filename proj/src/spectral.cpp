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

#include "sl2lab/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "sl2lab/error.hpp"

namespace sl2lab::spectral {

CayleyGraph::CayleyGraph(GroupPtr group, std::vector<Elem> gens) : group_(std::move(group)), gens_(std::move(gens)) {
  if (gens_.empty()) throw DomainError("empty generating set");
  std::map<Elem, size_t> pos;
  for (size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i] >= group_->order()) throw DomainError("generator out of range");
    if (!pos.emplace(gens_[i], i).second) throw DomainError("repeated generator " + group_->element_str(gens_[i]));
  }
  inv_index_.resize(gens_.size());
  for (size_t i = 0; i < gens_.size(); ++i) {
    auto it = pos.find(group_->inv(gens_[i]));
    if (it == pos.end()) throw DomainError("generating set is not symmetric");
    inv_index_[i] = it->second;
  }
  const size_t n = group_->order(), k = gens_.size();
  next_.resize(n * k);
  for (Elem x = 0; x < n; ++x) {
    for (size_t i = 0; i < k; ++i) next_[x * k + i] = group_->mul(x, gens_[i]);
  }
  auto d = bfs_distances(*this);
  connected_ = std::none_of(d.begin(), d.end(), [](int32_t v) { return v < 0; });
}

CayleyGraph build_graph(uint32_t p, const freegrp::GenSetZ& s) {
  auto g = groups::Sl2Group::create(p);
  std::vector<Elem> gens;
  for (const auto& m : s.mod(p)) gens.push_back(g->index(m));
  return CayleyGraph(g, gens);
}

CayleyGraph build_graph(const GroupSubset& s) { return CayleyGraph(s.group_ptr(), s.elements()); }

std::vector<int32_t> bfs_distances(const CayleyGraph& g) {
  std::vector<int32_t> dist(g.order(), -1);
  std::vector<Elem> queue{g.group().identity()};
  dist[queue[0]] = 0;
  for (size_t head = 0; head < queue.size(); ++head) {
    Elem u = queue[head];
    for (size_t i = 0; i < g.degree(); ++i) {
      Elem v = g.step(u, i);
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

uint32_t diameter(const CayleyGraph& g) {
  if (!g.connected()) throw DomainError("Cayley graph is disconnected");
  auto d = bfs_distances(g);
  return static_cast<uint32_t>(*std::max_element(d.begin(), d.end()));
}

uint32_t girth(const CayleyGraph& g) {
  // One BFS from the identity suffices by vertex-transitivity.
  const Elem root = g.group().identity();
  std::vector<int32_t> dist(g.order(), -1);
  std::vector<Elem> parent(g.order(), root);
  std::vector<Elem> queue{root};
  dist[root] = 0;
  uint64_t best = UINT64_MAX;
  for (size_t head = 0; head < queue.size(); ++head) {
    Elem u = queue[head];
    if (2 * static_cast<uint64_t>(dist[u]) + 1 >= best) break;
    for (size_t i = 0; i < g.degree(); ++i) {
      Elem v = g.step(u, i);
      if (v == u) continue;  // loop
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        parent[v] = u;
        queue.push_back(v);
      } else if (v != parent[u] && parent[v] != u) {
        best = std::min<uint64_t>(best, static_cast<uint64_t>(dist[u]) + dist[v] + 1);
      }
    }
  }
  return best == UINT64_MAX ? 0 : static_cast<uint32_t>(best);
}

namespace {

void finish_summary(SpectrumSummary& s, std::vector<double> nontrivial) {
  std::sort(nontrivial.begin(), nontrivial.end());
  s.rho_plus = nontrivial.back();
  s.lambda_min = nontrivial.front();
  s.rho = std::max(std::fabs(s.rho_plus), std::fabs(s.lambda_min));
  s.lambda1 = 1.0 - s.rho_plus;
}

// A central involution of the group, if the group is SL2(F_p) with p odd.
std::optional<Elem> central_involution(const FiniteGroup& g) {
  const auto* sl2 = dynamic_cast<const groups::Sl2Group*>(&g);
  if (!sl2 || sl2->p() == 2) return std::nullopt;
  return sl2->index(groups::Sl2ModP::make(sl2->p(), -1, 0, 0, -1));
}

std::vector<double> eigenvalues_of(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolve failed");
  const auto& ev = es.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

}  // namespace

SpectrumSummary spectrum_dense(const CayleyGraph& g) {
  if (!g.connected()) throw DomainError("Cayley graph is disconnected");
  const uint32_t n = g.order();
  const double w = 1.0 / static_cast<double>(g.degree());
  SpectrumSummary s;
  s.method = "dense";
  std::vector<double> all;
  // Index of the trivial eigenvalue 1 within `all`, removed below.
  if (auto z = central_involution(g.group())) {
    // Split L^2(G) into functions even and odd under x -> xz.
    std::vector<int64_t> slot(n, -1);
    std::vector<Elem> reps;
    for (Elem x = 0; x < n; ++x) {
      Elem y = g.group().mul(x, *z);
      if (slot[x] < 0) {
        slot[x] = static_cast<int64_t>(reps.size());
        slot[y] = static_cast<int64_t>(reps.size());
        reps.push_back(x);
      }
    }
    const size_t h = reps.size();
    Eigen::MatrixXd even = Eigen::MatrixXd::Zero(h, h), odd = Eigen::MatrixXd::Zero(h, h);
    for (size_t r = 0; r < h; ++r) {
      for (size_t i = 0; i < g.degree(); ++i) {
        Elem y = g.step(reps[r], i);
        size_t c = static_cast<size_t>(slot[y]);
        even(r, c) += w;
        odd(r, c) += reps[c] == y ? w : -w;
      }
    }
    all = eigenvalues_of(even);
    // Remove one copy of the trivial eigenvalue (the largest even one).
    std::vector<double> nontrivial(all.begin(), all.end() - 1);
    auto o = eigenvalues_of(odd);
    nontrivial.insert(nontrivial.end(), o.begin(), o.end());
    all.insert(all.end(), o.begin(), o.end());
    finish_summary(s, nontrivial);
  } else {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Elem x = 0; x < n; ++x) {
      for (size_t i = 0; i < g.degree(); ++i) m(x, g.step(x, i)) += w;
    }
    all = eigenvalues_of(m);
    finish_summary(s, std::vector<double>(all.begin(), all.end() - 1));
  }
  std::sort(all.begin(), all.end());
  s.eigenvalues = std::move(all);
  return s;
}

SpectrumSummary spectrum_iterative(const CayleyGraph& g, uint64_t seed, double tol, int max_iter) {
  if (!g.connected()) throw DomainError("Cayley graph is disconnected");
  const size_t n = g.order();
  if (n < 3) throw DomainError("graph too small for the iterative solver");
  const double w = 1.0 / static_cast<double>(g.degree());
  // Krylov dimension per restart, capped by memory (~256 MB of basis).
  const size_t kmax = std::min<size_t>({n - 1, 300, std::max<size_t>(20, 32'000'000 / n)});
  using Vec = Eigen::VectorXd;
  auto apply = [&](const Vec& v, Vec& out) {
    out.resize(n);
    for (size_t x = 0; x < n; ++x) {
      double acc = 0;
      for (size_t i = 0; i < g.degree(); ++i) acc += v[g.step(static_cast<Elem>(x), i)];
      out[x] = acc * w;
    }
  };
  auto deflate = [&](Vec& v) { v.array() -= v.sum() / static_cast<double>(n); };

  std::mt19937_64 rng(seed);
  Vec start(n);
  for (size_t i = 0; i < n; ++i) start[i] = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
  deflate(start);
  start.normalize();

  SpectrumSummary s;
  s.method = "iterative";
  int iters = 0;
  for (int restart = 0; iters < max_iter; ++restart) {
    std::vector<Vec> basis;
    std::vector<double> alpha, beta;
    basis.push_back(start);
    Vec wv;
    double last_beta = 0;
    for (size_t j = 0; j < kmax && iters < max_iter; ++j, ++iters) {
      apply(basis[j], wv);
      deflate(wv);
      alpha.push_back(basis[j].dot(wv));
      // Full reorthogonalization, twice for stability.
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : basis) wv -= b.dot(wv) * b;
      }
      last_beta = wv.norm();
      if (last_beta < 1e-14 || j + 1 == kmax) break;
      beta.push_back(last_beta);
      basis.push_back(wv / last_beta);
    }
    const size_t k = alpha.size();
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
    for (size_t i = 0; i < k; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const auto& th = es.eigenvalues();
    const auto& sv = es.eigenvectors();
    // Residuals of the extreme Ritz pairs: |beta_k| |last component|.
    double r_top = std::fabs(last_beta * sv(k - 1, k - 1));
    double r_bot = std::fabs(last_beta * sv(k - 1, 0));
    s.rho_plus = th[k - 1];
    s.lambda_min = th[0];
    s.residual = std::max(r_top, r_bot);
    if (s.residual <= tol || last_beta < 1e-14) break;
    // Explicit restart from the two extreme Ritz vectors.
    Vec top = Vec::Zero(n), bot = Vec::Zero(n);
    for (size_t i = 0; i < k; ++i) {
      top += sv(i, k - 1) * basis[i];
      bot += sv(i, 0) * basis[i];
    }
    start = top + bot;
    deflate(start);
    start.normalize();
  }
  if (s.residual > tol) throw ConvergenceError("Lanczos did not reach residual " + std::to_string(tol));
  s.rho = std::max(std::fabs(s.rho_plus), std::fabs(s.lambda_min));
  s.lambda1 = 1.0 - s.rho_plus;
  return s;
}

SpectrumSummary spectrum(const CayleyGraph& g, uint32_t dense_limit) {
  return g.order() <= dense_limit ? spectrum_dense(g) : spectrum_iterative(g);
}

CheckReport trace_method_check(const CayleyGraph& g, uint32_t p, const SpectrumSummary& s, int m,
                               const mpq_class& rp, double tol) {
  if (p < 3) throw DomainError("mdim needs p >= 3");
  if (m < 1) throw DomainError("m must be >= 1");
  CheckReport r;
  r.check = "trace_method";
  mpq_class base = rp * mpq_class(g.order()) / ratio(p - 1, 2);
  double rhs = std::pow(base.get_d(), 1.0 / (2.0 * m));
  r.add("rho_bound", s.rho <= rhs + tol, std::to_string(s.rho), std::to_string(rhs));
  return r;
}

double gap_from_diameter(const CayleyGraph& g) {
  double d = diameter(g);
  return 1.0 / (static_cast<double>(g.degree()) * d * d);
}

double trace_identity_error(const SpectrumSummary& s, uint32_t order, int m, const mpq_class& rp) {
  if (s.eigenvalues.size() != order) throw DomainError("trace identity needs the full spectrum");
  long double acc = 0;
  for (double l : s.eigenvalues) acc += std::pow(static_cast<long double>(l), 2 * m);
  return static_cast<double>(std::fabs(acc / order - static_cast<long double>(rp.get_d())));
}

}  // namespace sl2lab::spectral
