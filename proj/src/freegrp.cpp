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

#include "sl2lab/freegrp.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "sl2lab/error.hpp"

namespace sl2lab::freegrp {

using constants::Interval;
using groups::Sl2ModP;

mpz_class Sl2Int::max_abs_entry() const {
  mpz_class m = abs(a);
  for (const mpz_class* x : {&b, &c, &d}) {
    mpz_class t = abs(*x);
    if (t > m) m = t;
  }
  return m;
}

Sl2ModP Sl2Int::mod(uint32_t p) const { return Sl2ModP::from_integers(p, {a, b, c, d}); }

std::string Sl2Int::str() const {
  return "[[" + a.get_str() + "," + b.get_str() + "],[" + c.get_str() + "," + d.get_str() + "]]";
}

Sl2Int mul(const Sl2Int& x, const Sl2Int& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

bool is_reduced(const Word& w) {
  for (size_t i = 1; i < w.letters.size(); ++i) {
    if (w.letters[i] == inverse_letter(w.letters[i - 1])) return false;
  }
  return true;
}

Word reduce(const Word& w) {
  Word out;
  for (Letter x : w.letters) {
    if (!out.letters.empty() && out.letters.back() == inverse_letter(x)) {
      out.letters.pop_back();
    } else {
      out.letters.push_back(x);
    }
  }
  return out;
}

Word concat(const Word& x, const Word& y) {
  Word w = x;
  w.letters.insert(w.letters.end(), y.letters.begin(), y.letters.end());
  return reduce(w);
}

Word invert(const Word& w) {
  Word out;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.letters.push_back(inverse_letter(*it));
  return out;
}

Word commutator(const Word& x, const Word& y) {
  return concat(concat(x, y), concat(invert(x), invert(y)));
}

Word primitive_root(const Word& w0) {
  Word w = reduce(w0);
  const auto& l = w.letters;
  size_t i = 0, j = l.size();
  while (j - i >= 2 && l[j - 1] == inverse_letter(l[i])) {
    ++i;
    --j;
  }
  std::vector<Letter> core(l.begin() + i, l.begin() + j);
  const size_t n = core.size();
  size_t period = n;
  for (size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool ok = true;
    for (size_t t = d; t < n && ok; ++t) ok = core[t] == core[t - d];
    if (ok) {
      period = d;
      break;
    }
  }
  Word out;
  out.letters.assign(l.begin(), l.begin() + i);
  out.letters.insert(out.letters.end(), core.begin(), core.begin() + period);
  out.letters.insert(out.letters.end(), l.begin() + j, l.end());
  return out;
}

bool commute(const Word& x, const Word& y) {
  Word rx = primitive_root(x), ry = primitive_root(y);
  if (rx.letters.empty() || ry.letters.empty()) return true;
  return rx == ry || rx == invert(ry);
}

std::string word_str(const Word& w) {
  if (w.letters.empty()) return "1";
  std::string s;
  for (Letter x : w.letters) {
    char base = static_cast<char>('a' + (x >> 1));
    s.push_back((x & 1) ? static_cast<char>(base - 'a' + 'A') : base);
  }
  return s;
}

GenSetZ GenSetZ::from_entries(const std::vector<groups::IntEntries>& mats, bool close_inverses) {
  std::vector<Sl2Int> in;
  for (const auto& e : mats) {
    Sl2Int m = Sl2Int::from_entries(e);
    if (m.det() != 1) throw DomainError("generator " + m.str() + " has determinant " + m.det().get_str());
    if (m.is_identity()) throw DomainError("the identity is not allowed in a generating set");
    if (m == Sl2Int{-1, 0, 0, -1}) throw DomainError("-I is its own inverse and cannot generate freely");
    if (std::find(in.begin(), in.end(), m) != in.end()) throw DomainError("repeated generator " + m.str());
    in.push_back(m);
  }
  GenSetZ s;
  std::vector<bool> used(in.size(), false);
  for (size_t i = 0; i < in.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    Sl2Int mi = in[i].inverse();
    auto it = std::find(in.begin(), in.end(), mi);
    if (it != in.end()) {
      used[it - in.begin()] = true;
    } else if (!close_inverses) {
      throw DomainError("generating set is not symmetric: inverse of " + in[i].str() + " missing");
    }
    s.mats_.push_back(in[i]);
    s.mats_.push_back(mi);
  }
  if (s.mats_.empty()) throw DomainError("empty generating set");
  return s;
}

GenSetZ GenSetZ::parse(const std::string& text, bool close_inverses) {
  std::vector<groups::IntEntries> mats;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    mats.push_back(groups::parse_matrix_literal(line));
  }
  return from_entries(mats, close_inverses);
}

GenSetZ GenSetZ::load_file(const std::string& path, bool close_inverses) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open generator file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str(), close_inverses);
}

GenSetZ GenSetZ::lubotzky() {
  return parse("[[1,3],[0,1]]\n[[1,-3],[0,1]]\n[[1,0],[3,1]]\n[[1,0],[-3,1]]\n", false);
}

GenSetZ GenSetZ::standard() {
  return parse("[[1,1],[0,1]]\n[[1,-1],[0,1]]\n[[1,0],[1,1]]\n[[1,0],[-1,1]]\n", false);
}

GenSetZ GenSetZ::resolve(const std::string& spec, bool close_inverses) {
  if (spec == "lubotzky") return lubotzky();
  if (spec == "standard") return standard();
  return load_file(spec, close_inverses);
}

std::vector<Sl2ModP> GenSetZ::mod(uint32_t p) const {
  std::vector<Sl2ModP> out;
  for (size_t i = 0; i < mats_.size(); ++i) {
    Sl2ModP m = mats_[i].mod(p);
    for (size_t j = 0; j < out.size(); ++j) {
      if (out[j] == m) {
        throw DomainError("generators " + mats_[j].str() + " and " + mats_[i].str() +
                          " coincide mod " + std::to_string(p));
      }
    }
    out.push_back(m);
  }
  return out;
}

Sl2Int word_to_matrix(const GenSetZ& s, const Word& w) {
  Sl2Int m;
  for (Letter x : w.letters) {
    if (x >= s.size()) throw DomainError("letter outside the generating set");
    m = mul(m, s[x]);
  }
  return m;
}

Sl2ModP word_mod_p(const std::vector<Sl2ModP>& gens, const Word& w) {
  if (gens.empty()) throw DomainError("empty generator list");
  Sl2ModP m = Sl2ModP::identity(gens.front().p);
  for (Letter x : w.letters) m = groups::mul(m, gens.at(x));
  return m;
}

mpz_class ball_size(uint32_t k, uint32_t r) {
  if (k == 0) return 1;
  if (k == 1) return 1 + 2 * mpz_class(r);
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), 2 * k - 1, r);
  return 1 + mpz_class(2 * k) * (q - 1) / (2 * k - 2);
}

std::vector<Word> ball(uint32_t k, uint32_t r, uint64_t budget) {
  mpz_class n = ball_size(k, r);
  if (n > mpz_class(std::to_string(budget))) {
    throw BudgetError("ball of radius " + std::to_string(r) + " has " + n.get_str() + " words, budget " +
                      std::to_string(budget));
  }
  std::vector<Word> out{Word{}};
  size_t layer_start = 0;
  for (uint32_t len = 1; len <= r; ++len) {
    size_t layer_end = out.size();
    for (size_t i = layer_start; i < layer_end; ++i) {
      for (Letter x = 0; x < 2 * k; ++x) {
        const Word& w = out[i];
        if (!w.letters.empty() && w.letters.back() == inverse_letter(x)) continue;
        Word v = w;
        v.letters.push_back(x);
        out.push_back(std::move(v));
      }
    }
    layer_start = layer_end;
  }
  return out;
}

Interval norm_log(const Sl2Int& s) {
  if (s.det() != 1) throw DomainError("norm_log needs determinant 1");
  mpz_class t = s.a * s.a + s.b * s.b + s.c * s.c + s.d * s.d;
  if (t == 2) return Interval(0L);
  Interval ti(t);
  Interval disc(mpz_class(t * t - 4));
  Interval sq = (ti + sqrt(disc)) / Interval(2L);
  return log(sq) / Interval(2L);
}

InjectivityReport injectivity_check(const GenSetZ& s, uint32_t p, uint32_t r, uint64_t budget) {
  InjectivityReport rep;
  rep.p = p;
  rep.radius = r;
  auto gens = s.mod(p);
  auto words = ball(s.rank(), r, budget);
  rep.words = words.size();
  std::map<Sl2ModP, size_t> seen;
  // Ball words come in BFS order, so each image extends its parent's.
  std::vector<Sl2ModP> img(words.size(), Sl2ModP::identity(p));
  std::map<Word, size_t> index;
  for (size_t i = 0; i < words.size(); ++i) {
    const Word& w = words[i];
    if (!w.letters.empty()) {
      Word parent{std::vector<Letter>(w.letters.begin(), w.letters.end() - 1)};
      img[i] = groups::mul(img[index.at(parent)], gens[w.letters.back()]);
    }
    index.emplace(w, i);
    auto [it, fresh] = seen.emplace(img[i], i);
    if (!fresh && rep.injective) {
      rep.injective = false;
      rep.collision = std::make_pair(words[it->second], w);
    }
  }
  return rep;
}

std::optional<Word> find_relation(const GenSetZ& s, uint32_t r, uint64_t budget) {
  auto words = ball(s.rank(), r, budget);
  std::vector<std::pair<std::string, size_t>> keyed;
  keyed.reserve(words.size());
  for (size_t i = 0; i < words.size(); ++i) keyed.emplace_back(word_to_matrix(s, words[i]).str(), i);
  std::sort(keyed.begin(), keyed.end());
  std::optional<Word> best;
  for (size_t i = 1; i < keyed.size(); ++i) {
    if (keyed[i].first != keyed[i - 1].first) continue;
    Word rel = concat(words[keyed[i - 1].second], invert(words[keyed[i].second]));
    if (!rel.letters.empty() && (!best || rel.length() < best->length())) best = rel;
  }
  return best;
}

std::vector<mpz_class> tree_walk_counts(uint32_t k, uint32_t n) {
  if (k < 1) throw DomainError("tree rank must be >= 1");
  // dist[l] = number of length-m walks ending at distance l (all vertices).
  std::vector<mpz_class> dist(n + 2, 0);
  dist[0] = 1;
  for (uint32_t m = 0; m < n; ++m) {
    std::vector<mpz_class> next(n + 2, 0);
    for (uint32_t l = 0; l <= m; ++l) {
      if (dist[l] == 0) continue;
      if (l == 0) {
        next[1] += dist[0] * (2 * k);
      } else {
        next[l - 1] += dist[l];
        next[l + 1] += dist[l] * (2 * k - 1);
      }
    }
    dist.swap(next);
  }
  std::vector<mpz_class> per(n + 1, 0);
  for (uint32_t l = 0; l <= n; ++l) {
    if (l == 0) {
      per[0] = dist[0];
      continue;
    }
    mpz_class sphere;
    mpz_ui_pow_ui(sphere.get_mpz_t(), 2 * k - 1, l - 1);
    sphere *= 2 * k;
    per[l] = dist[l] / sphere;
  }
  return per;
}

KestenReport kesten_bound_check(uint32_t k, uint32_t n) {
  if (k < 2 || n < 1) throw DomainError("kesten check needs k >= 2, n >= 1");
  if (n > 4096) throw BudgetError("kesten check limited to n <= 4096");
  KestenReport rep;
  rep.k = k;
  rep.n = n;
  auto per = tree_walk_counts(k, n);
  mpz_class total;
  mpz_ui_pow_ui(total.get_mpz_t(), 2 * k, n);
  mpz_class num, den;
  mpz_ui_pow_ui(num.get_mpz_t(), 2 * k - 1, n);
  mpz_ui_pow_ui(den.get_mpz_t(), k, 2 * n);
  rep.bound_squared = mpq_class(num, den);
  rep.bound_squared.canonicalize();
  mpz_class mass = 0;
  for (uint32_t l = 0; l <= n; ++l) {
    mpq_class pr(per[l], total);
    pr.canonicalize();
    rep.probability.push_back(pr);
    if (pr * pr > rep.bound_squared) rep.holds = false;
    mpz_class sphere = 1;
    if (l > 0) {
      mpz_ui_pow_ui(sphere.get_mpz_t(), 2 * k - 1, l - 1);
      sphere *= 2 * k;
    }
    mass += per[l] * sphere;
  }
  rep.sums_to_one = mass == total;
  return rep;
}

}  // namespace sl2lab::freegrp
