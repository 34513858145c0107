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

#ifndef SL2LAB_SPECTRAL_HPP
#define SL2LAB_SPECTRAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "sl2lab/freegrp.hpp"
#include "sl2lab/group.hpp"
#include "sl2lab/report.hpp"
#include "sl2lab/subset.hpp"

namespace sl2lab::spectral {

// Cayley graph with edges x -- xs. The generator list is symmetric and free of
// repeats; an identity generator is a loop and is ignored by BFS.
class CayleyGraph {
 public:
  CayleyGraph(GroupPtr group, std::vector<Elem> gens);

  const FiniteGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  const std::vector<Elem>& gens() const { return gens_; }
  uint32_t order() const { return group_->order(); }
  size_t degree() const { return gens_.size(); }
  // Index of s^{-1} in gens().
  size_t inverse_index(size_t i) const { return inv_index_[i]; }
  Elem step(Elem x, size_t i) const { return next_[static_cast<size_t>(x) * gens_.size() + i]; }
  bool connected() const { return connected_; }

 private:
  GroupPtr group_;
  std::vector<Elem> gens_;
  std::vector<size_t> inv_index_;
  std::vector<Elem> next_;  // x * gens_[i], row-major by x
  bool connected_ = false;
};

// S mod p as a Cayley graph of SL2(F_p); collisions raise DomainError.
CayleyGraph build_graph(uint32_t p, const freegrp::GenSetZ& s);
CayleyGraph build_graph(const GroupSubset& s);

// BFS distances from the identity; -1 when unreachable.
std::vector<int32_t> bfs_distances(const CayleyGraph& g);
// Eccentricity of the identity; DomainError when disconnected.
uint32_t diameter(const CayleyGraph& g);
// Shortest cycle in the simple graph (loops and repeated edges collapsed);
// 0 when acyclic.
uint32_t girth(const CayleyGraph& g);

struct SpectrumSummary {
  double lambda1 = 0;   // 1 - rho_plus
  double rho_plus = 0;  // largest eigenvalue of M below the trivial one
  double rho = 0;       // spectral radius of M on the complement of constants
  double lambda_min = 0;
  std::string method;   // "dense" or "iterative"
  double residual = 0;
  std::vector<double> eigenvalues;  // full spectrum (dense only), ascending
};

// Dense: eigensolve of M split by the action of a central involution when the
// generators allow it. |G| above dense_limit switches to Lanczos.
SpectrumSummary spectrum(const CayleyGraph& g, uint32_t dense_limit = 5000);
SpectrumSummary spectrum_dense(const CayleyGraph& g);
// Lanczos with full reorthogonalization, started orthogonal to constants.
SpectrumSummary spectrum_iterative(const CayleyGraph& g, uint64_t seed = 1, double tol = 1e-10,
                                   int max_iter = 100000);

// rho <= (|G| / mdim * rp(X_m))^{1/(2m)} with mdim = (p-1)/2; rp exact.
CheckReport trace_method_check(const CayleyGraph& g, uint32_t p, const SpectrumSummary& s, int m,
                               const mpq_class& rp, double tol = 1e-9);
// 1 / (|S| diam^2).
double gap_from_diameter(const CayleyGraph& g);
// |sum_i lambda_i^{2m} / |G| - rp(X_m)|.
double trace_identity_error(const SpectrumSummary& s, uint32_t order, int m, const mpq_class& rp);

}  // namespace sl2lab::spectral

#endif  // SL2LAB_SPECTRAL_HPP
