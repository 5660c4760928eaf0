// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Single-pass mechanisms: generalized deferred acceptance (two
// descriptions), plain deferred acceptance, serial dictatorship, deferred
// acceptance with artificial caps, and adaptive deferred acceptance.

#ifndef DISTMATCH_MECHANISMS_H_
#define DISTMATCH_MECHANISMS_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "distmatch/constraints.h"
#include "distmatch/market.h"

namespace distmatch {

// GDA refuses a spec shown not to be M-natural-convex on |nu| <= n.
class NotMNaturalConvexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InfeasibleQuotaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class GdaCheck {
  kRequire,  // certify structurally, else by enumeration; refuse on kNo
  kTrusted,  // the caller has certified the spec
  kSkip,     // run regardless; the result is marked uncertified
};

struct GdaOptions {
  // Students taking part; everyone when unset.
  std::optional<std::vector<StudentId>> participants;
  GdaCheck check = GdaCheck::kRequire;
  int64_t enumeration_cap = 200'000;
};

struct GdaResult {
  Matching matching;
  std::vector<ContractId> offered;   // every contract offered, sorted
  std::vector<ContractId> rejected;  // sorted
  int rounds = 0;
  int64_t evaluations = 0;
  bool certified = false;
};

GdaResult RunGda(const Market& market, const FeasibilitySpec& spec,
                 const GdaOptions& options = {});

Matching Gda(const Market& market, const FeasibilitySpec& spec);

// Runs GDA without `held_out`, then lets that student in and resolves one
// rejection at a time.
Matching GdaAlt(const Market& market, const FeasibilitySpec& spec,
                StudentId held_out, const GdaOptions& options = {});

// Student-proposing deferred acceptance under per-college quotas.
Matching Da(const Market& market, const std::vector<int64_t>& quotas,
            const std::optional<std::vector<StudentId>>& participants = {});

Matching Sd(const Market& market, const MasterList& order,
            const FeasibilitySpec& spec, int64_t* evaluations = nullptr);

// Throws InfeasibleQuotaError unless the full quota vector is feasible.
Matching Acda(const Market& market, const FeasibilitySpec& spec,
              const std::vector<int64_t>& reduced_quotas);

// Largest uniform quota k whose vector (k, ..., k) is feasible, capped at
// `bound`.
int64_t LargestUniformQuota(const FeasibilitySpec& spec, int64_t bound);

struct AdaResult {
  Matching matching;
  int stages = 0;
  int64_t evaluations = 0;
};

AdaResult RunAda(const Market& market, const MasterList& order,
                 const FeasibilitySpec& spec);

Matching Ada(const Market& market, const MasterList& order,
             const FeasibilitySpec& spec);

}  // namespace distmatch

#endif  // DISTMATCH_MECHANISMS_H_
