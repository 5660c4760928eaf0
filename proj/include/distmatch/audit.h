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


// Mechanism-agnostic checks of a matching: feasibility, empty-seat claims,
// (generalized) justified envy, master-list fairness, HM-stability, Pareto
// frontier membership, strategyproofness, and the experiment metrics.

#ifndef DISTMATCH_AUDIT_H_
#define DISTMATCH_AUDIT_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "distmatch/constraint_checks.h"
#include "distmatch/constraints.h"
#include "distmatch/market.h"

namespace distmatch {

struct EnvyTriple {
  StudentId envier;
  StudentId envied;
  CollegeId college;

  friend bool operator==(const EnvyTriple&, const EnvyTriple&) = default;
  friend auto operator<=>(const EnvyTriple&, const EnvyTriple&) = default;
};

using StudentPair = std::pair<StudentId, StudentId>;

bool IsFeasible(const Market& market, const Matching& y,
                const FeasibilitySpec& spec);

// Contracts (s, c) with (s, c) better than Y_s and (Y \ Y_s) + (s, c)
// feasible. Empty iff Y is nonwasteful.
std::vector<ContractId> ClaimsEmptySeat(const Market& market,
                                        const Matching& y,
                                        const FeasibilitySpec& spec);

// As above with Y + (s, c) feasible. Empty iff Y is weakly nonwasteful.
std::vector<ContractId> StronglyClaims(const Market& market, const Matching& y,
                                       const FeasibilitySpec& spec);

// Sorted triples; empty iff Y is fair.
std::vector<EnvyTriple> JustifiedEnvy(const Market& market, const Matching& y);

// Sorted pairs (s, s'); s == s' is possible.
std::vector<StudentPair> GeneralizedEnvy(const Market& market,
                                         const Matching& y,
                                         const FeasibilitySpec& spec);

// Envy triples whose envier precedes the envied student in the list.
std::vector<EnvyTriple> MlFairViolations(const Market& market,
                                         const Matching& y,
                                         const MasterList& order);

struct HmStability {
  bool stable = false;
  // A contract outside Y chosen by both sides from Y + x, or a contract of
  // Y the colleges drop.
  std::optional<ContractId> witness;
  std::string reason;
};

// Uses greedy college choice; meaningful when that choice is exact.
HmStability CheckHmStable(const Market& market, const Matching& y,
                          const FeasibilitySpec& spec);

inline constexpr int64_t kDefaultMatchingCap = 1'000'000;

struct ParetoCheck {
  Verdict verdict = Verdict::kInconclusive;  // kYes: on the frontier
  std::optional<Matching> witness;           // dominating, weakly fairer
  int64_t enumerated = 0;
};

ParetoCheck CheckParetoFrontier(const Market& market, const Matching& y,
                                const FeasibilitySpec& spec,
                                int64_t cap = kDefaultMatchingCap);

// Pareto efficiency among feasible matchings, ignoring fairness.
ParetoCheck CheckParetoEfficient(const Market& market, const Matching& y,
                                 const FeasibilitySpec& spec,
                                 int64_t cap = kDefaultMatchingCap);

using MechanismFn = std::function<Matching(const Market&)>;

struct Misreport {
  StudentId student;
  std::vector<ContractId> report;  // reported acceptable contracts, best first
  ContractId truthful_outcome;
  ContractId misreport_outcome;
};

inline constexpr int kDefaultMisreportCap = 5;

// Every ordered subset of X_s as a report, for every student. Throws
// CapExceededError when some |X_s| exceeds `cap`.
std::vector<Misreport> StrategyproofnessAudit(const MechanismFn& mechanism,
                                              const Market& market,
                                              int cap = kDefaultMisreportCap);

// All reports a student with contracts X_s can make: every ordered subset.
std::vector<std::vector<ContractId>> AllReports(
    std::span<const ContractId> contracts);

struct BordaScores {
  std::vector<int> per_student;
  double mean = 0.0;
  int unmatched = 0;
};

// m - i + 1 for the i-th ranked college, 0 when unmatched.
BordaScores Borda(const Market& market, const Matching& y);

struct EnvyRatios {
  double students_without_envy = 1.0;
  double pairs_without_envy = 1.0;
};

EnvyRatios ComputeEnvyRatios(const Market& market, const Matching& y);

struct AuditOptions {
  bool hm_stable = true;
  bool generalized_envy = true;
  const MasterList* order = nullptr;
};

struct AuditReport {
  bool feasible = false;
  std::vector<ContractId> claims;
  std::vector<ContractId> strong_claims;
  std::vector<EnvyTriple> envy;
  std::vector<StudentPair> generalized_envy;
  std::optional<std::vector<EnvyTriple>> ml_fair_violations;
  std::optional<HmStability> hm_stable;
  BordaScores borda;
  EnvyRatios ratios;
};

AuditReport Audit(const Market& market, const Matching& y,
                  const FeasibilitySpec& spec,
                  const AuditOptions& options = {});

std::string AuditReportToJson(const Market& market, const AuditReport& report);

}  // namespace distmatch

#endif  // DISTMATCH_AUDIT_H_
