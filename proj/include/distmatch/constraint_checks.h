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

// Exhaustive heredity / M-natural-convexity checks for desk-scale specs, and
// the structural certificate used at scale: a single conjunction of caps
// whose (reduced) college sets form a laminar family.

#ifndef DISTMATCH_CONSTRAINT_CHECKS_H_
#define DISTMATCH_CONSTRAINT_CHECKS_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "distmatch/constraints.h"

namespace distmatch {

enum class Verdict { kYes, kNo, kInconclusive };

const char* VerdictName(Verdict v);

inline constexpr int64_t kDefaultEnumerationCap = 2'000'000;

struct HereditaryResult {
  Verdict verdict = Verdict::kInconclusive;
  // On kNo: a feasible vector and an infeasible one directly below it. When
  // the zero vector itself is infeasible both entries are zero.
  std::optional<std::pair<AssignmentVector, AssignmentVector>> witness;
  int64_t enumerated = 0;
};

struct ExchangeViolation {
  AssignmentVector nu;
  AssignmentVector nu_prime;
  CollegeId i;
};

struct ConvexityResult {
  Verdict verdict = Verdict::kInconclusive;
  std::optional<ExchangeViolation> witness;
  int64_t enumerated = 0;
};

// Enumerates every vector 0 <= nu <= box. kInconclusive when the box holds
// more than `cap` vectors.
HereditaryResult CheckHereditary(const FeasibilitySpec& spec,
                                 const AssignmentVector& box,
                                 int64_t cap = kDefaultEnumerationCap);

// Verifies the exchange property over all feasible pairs inside the box.
// Membership of the exchanged vectors is decided by the spec itself, so
// they may leave the box.
ConvexityResult CheckMNaturalConvex(const FeasibilitySpec& spec,
                                    const AssignmentVector& box,
                                    int64_t cap = kDefaultEnumerationCap);

// The exchange condition for one pair (nu, nu') and one i with
// nu_i > nu'_i: some j in {0} u {k : nu_k < nu'_k} keeps both
// nu - e_i + e_j and nu' + e_i - e_j feasible. Returns false when no j does.
bool ExchangeHolds(const FeasibilitySpec& spec, const AssignmentVector& nu,
                   const AssignmentVector& nu_prime, CollegeId i);

// Largest t <= bound with t * e_i feasible. Valid for hereditary specs.
int64_t MaxQuota(const FeasibilitySpec& spec, CollegeId i, int64_t bound);

// --- structural certification -------------------------------------------

inline constexpr int64_t kUnbounded = std::numeric_limits<int64_t>::max();

bool IsLaminar(const std::vector<std::vector<CollegeId>>& sets, int dimension);

// For one conjunction of caps: the largest d such that the caps still able
// to bind inside |nu| <= d, after dropping colleges forced to zero, form a
// laminar family. Such a truncated conjunction is M-natural-convex.
// kUnbounded when the branch is laminar as it stands.
int64_t LaminarTruncationBound(const CapBranch& branch, int dimension);

// True when the spec compiles to at most one live branch and that branch
// is certified by LaminarTruncationBound.
bool StructurallyMNatural(const FeasibilitySpec& spec);

}  // namespace distmatch

#endif  // DISTMATCH_CONSTRAINT_CHECKS_H_
