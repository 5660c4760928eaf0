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


// Multi-stage GDA: students enter in master-list order, d at a time, each
// batch matched by GDA under the residual constraints truncated to d.

#ifndef DISTMATCH_MSGDA_H_
#define DISTMATCH_MSGDA_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "distmatch/constraints.h"
#include "distmatch/market.h"

namespace distmatch {

class UncertifiedDError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DStrategyKind {
  kFixed,
  kAlwaysOne,
  kLinearCapMax,
  kDisjunctiveCommit,
  kAuto,  // LinearCapMax for one conjunction, DisjunctiveCommit for several,
          // AlwaysOne for black boxes
};

struct DStrategy {
  DStrategyKind kind = DStrategyKind::kAuto;
  int64_t fixed_d = 1;
  int64_t enumeration_cap = 200'000;

  static DStrategy Fixed(int64_t d) { return {DStrategyKind::kFixed, d}; }
  static DStrategy AlwaysOne() { return {DStrategyKind::kAlwaysOne}; }
  static DStrategy LinearCapMax() { return {DStrategyKind::kLinearCapMax}; }
  static DStrategy DisjunctiveCommit() {
    return {DStrategyKind::kDisjunctiveCommit};
  }
  static DStrategy Auto() { return {DStrategyKind::kAuto}; }
};

const char* DStrategyName(DStrategyKind kind);
// Accepts fixed:<d>, one, linear, disjunctive, auto.
DStrategy ParseDStrategy(const std::string& text);

struct DChoice {
  int64_t d = 1;
  // Spec GDA runs on for this stage; agrees with Truncate(spec_k, d).
  FeasibilitySpec stage_spec;
  // Set when DisjunctiveCommit found a single surviving conjunction.
  bool committed = false;
  int64_t d_star = -1;  // DisjunctiveCommit only; -1 if unbounded
};

// One conjunction of caps: the largest d up to `remaining` for which the
// caps binding inside |nu| <= d are laminar. Throws std::invalid_argument
// for black boxes or several live conjunctions.
DChoice ChooseDLinearCap(const FeasibilitySpec& spec_k, int64_t remaining);

// Several conjunctions: d* is the largest d such that every feasible nu
// with |nu| <= d also meets the conjunction of all live conjunctions'
// caps. d* = 0 falls back to d = 1. A single live conjunction is
// committed to.
DChoice ChooseDDisjunctive(const FeasibilitySpec& spec_k, int64_t remaining);

DChoice ChooseD(const DStrategy& strategy, const FeasibilitySpec& spec_k,
                int64_t remaining);

struct StageRecord {
  int stage = 0;
  int64_t d = 0;
  std::vector<StudentId> students;
  std::vector<ContractId> fixed;
  std::string spec;
  bool committed = false;
};

struct MechanismTrace {
  std::vector<StageRecord> stages;
  std::vector<std::string> events;
  int64_t evaluations = 0;  // feasibility queries, all stages
};

struct MsgdaResult {
  Matching matching;
  MechanismTrace trace;
};

MsgdaResult Msgda(const Market& market, const MasterList& order,
                  const FeasibilitySpec& spec,
                  const DStrategy& strategy = DStrategy::Auto());

}  // namespace distmatch

#endif  // DISTMATCH_MSGDA_H_
