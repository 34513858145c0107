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

#ifndef SL2LAB_REPORT_HPP
#define SL2LAB_REPORT_HPP

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace sl2lab {

// num / den in canonical form (gmpxx's two-argument constructor does not reduce).
inline mpq_class ratio(const mpz_class& num, const mpz_class& den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

// One exactly checked inequality or containment.
struct Clause {
  std::string name;
  bool holds = false;
  std::string lhs;
  std::string rhs;
};

// Outcome of a verifier: a list of clauses plus free-form facts. A report is
// inconclusive when the check could not be carried out (e.g. a witness search
// gave up); that is not a violation.
struct CheckReport {
  std::string check;
  std::vector<Clause> clauses;
  std::vector<std::pair<std::string, std::string>> facts;
  bool inconclusive = false;

  bool ok() const {
    for (const auto& c : clauses) {
      if (!c.holds) return false;
    }
    return true;
  }
  bool add(std::string name, bool holds, std::string lhs = {}, std::string rhs = {}) {
    clauses.push_back({std::move(name), holds, std::move(lhs), std::move(rhs)});
    return holds;
  }
  // lhs <= rhs, exact.
  bool le(std::string name, const mpz_class& lhs, const mpz_class& rhs) {
    return add(std::move(name), lhs <= rhs, lhs.get_str(), rhs.get_str());
  }
  bool le(std::string name, const mpq_class& lhs, const mpq_class& rhs) {
    return add(std::move(name), lhs <= rhs, lhs.get_str(), rhs.get_str());
  }
  void fact(std::string key, std::string value) { facts.emplace_back(std::move(key), std::move(value)); }
  void merge(const CheckReport& other, const std::string& prefix) {
    for (const auto& c : other.clauses) clauses.push_back({prefix + c.name, c.holds, c.lhs, c.rhs});
    for (const auto& f : other.facts) facts.emplace_back(prefix + f.first, f.second);
    inconclusive = inconclusive || other.inconclusive;
  }
};

}  // namespace sl2lab

#endif  // SL2LAB_REPORT_HPP
