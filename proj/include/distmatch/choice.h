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

// Choice functions. Students pick their best acceptable contract; colleges
// jointly pick the heaviest feasible subset of a pool, either greedily
// (exact when the feasible counts form an M-natural-convex set) or by
// exhaustive search.

#ifndef DISTMATCH_CHOICE_H_
#define DISTMATCH_CHOICE_H_

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "distmatch/constraints.h"
#include "distmatch/market.h"

namespace distmatch {

class CapExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when adding one contract to a choice fixed point rejects more than
// one contract, which cannot happen under an M-natural-convex spec.
class MultipleRejectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultBruteforceCap = 16;

// Best acceptable contract of s inside the pool, if any.
std::optional<ContractId> ChStudent(const Market& market, StudentId s,
                                    std::span<const ContractId> pool);

// Union of ChStudent over all students, sorted.
std::vector<ContractId> ChStudents(const Market& market,
                                   std::span<const ContractId> pool);

struct CollegeChoice {
  std::vector<ContractId> chosen;  // sorted
  // False unless the spec is structurally certified M-natural-convex, in
  // which case greedy is the exact argmax.
  bool certified = false;
};

// Descending weight; a contract is kept when it fits next to the ones
// kept so far, otherwise skipped.
CollegeChoice ChCollegesGreedy(const Market& market,
                               std::span<const ContractId> pool,
                               const FeasibilitySpec& spec);

// Same greedy on a caller-owned tracker, which is reset first and left
// holding the counts of the chosen set.
std::vector<ContractId> ChCollegesGreedy(const Market& market,
                                         std::span<const ContractId> pool,
                                         FeasibilityTracker& tracker);

// Exact argmax of the total weight over feasible subsets of the pool.
// Throws CapExceededError when the pool is larger than `cap`.
std::vector<ContractId> ChCollegesBruteforce(const Market& market,
                                             std::span<const ContractId> pool,
                                             const FeasibilitySpec& spec,
                                             int cap = kDefaultBruteforceCap);

struct RejectionStep {
  std::vector<ContractId> accepted;  // sorted
  std::optional<ContractId> rejected;
};

// Ch_C(z + x) for a fixed point z of the greedy choice. Throws
// MultipleRejectionError when two or more contracts drop out.
RejectionStep SingleRejectionStep(const Market& market,
                                  std::span<const ContractId> z, ContractId x,
                                  const FeasibilitySpec& spec);

}  // namespace distmatch

#endif  // DISTMATCH_CHOICE_H_
