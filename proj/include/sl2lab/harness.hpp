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

#ifndef SL2LAB_HARNESS_HPP
#define SL2LAB_HARNESS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sl2lab/certified.hpp"
#include "sl2lab/constants.hpp"
#include "sl2lab/freegrp.hpp"
#include "sl2lab/report.hpp"
#include "sl2lab/spectral.hpp"

namespace sl2lab::harness {

// Keys keep insertion order so documents are byte-stable.
using Json = nlohmann::ordered_json;

// Bumped on breaking changes to any emitted document.
constexpr int kSchema = 1;

Json to_json(const constants::Interval& x, int digits = 20);
Json to_json(const CheckReport& r);
Json to_json(const constants::BoundReport& b);
Json to_json(const constants::ThresholdReport& t);
Json to_json(const constants::DiameterReport& d);
Json to_json(const spectral::SpectrumSummary& s, bool with_eigenvalues = false);

struct SuiteConfig {
  std::string suite;
  std::vector<uint32_t> primes;
  uint64_t seed = 1;
  uint64_t samples = 100;
  bool exhaustive = false;
  bool search_sharpness = false;
  freegrp::GenSetZ gens = freegrp::GenSetZ::lubotzky();
};

struct SuiteSummary {
  uint64_t runs = 0;
  uint64_t violations = 0;
  uint64_t inconclusive = 0;
  Json summary;  // suite-specific tallies
};

// Receives one JSON record per checked instance, in a fixed order.
using Sink = std::function<void(const Json&)>;

std::vector<std::string> suite_names();
// Runs a verification suite. Throws DomainError for unknown suites.
SuiteSummary run_suite(const SuiteConfig& cfg, const Sink& sink);

}  // namespace sl2lab::harness

#endif  // SL2LAB_HARNESS_HPP
