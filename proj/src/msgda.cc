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


#include "distmatch/msgda.h"

#include <algorithm>
#include <map>

#include "distmatch/constraint_checks.h"
#include "distmatch/mechanisms.h"

namespace distmatch {
namespace {

DChoice Make(const FeasibilitySpec& spec_k, int64_t d) {
  return DChoice{d, Truncate(spec_k, d)};
}

// Largest nu(S) over vectors feasible in the branch, stopping once it
// reaches `enough`. Greedy is exact because the branch is laminar.
int64_t ReachOn(FeasibilityTracker& tracker,
                const std::vector<CollegeId>& colleges, int64_t enough) {
  tracker.Reset();
  int64_t reached = 0;
  for (CollegeId i : colleges) {
    while (reached < enough && tracker.CanAdd(i)) {
      tracker.Add(i);
      ++reached;
    }
  }
  return reached;
}

}  // namespace

const char* DStrategyName(DStrategyKind kind) {
  switch (kind) {
    case DStrategyKind::kFixed:
      return "fixed";
    case DStrategyKind::kAlwaysOne:
      return "one";
    case DStrategyKind::kLinearCapMax:
      return "linear";
    case DStrategyKind::kDisjunctiveCommit:
      return "disjunctive";
    case DStrategyKind::kAuto:
      return "auto";
  }
  return "?";
}

DStrategy ParseDStrategy(const std::string& text) {
  if (text == "one") return DStrategy::AlwaysOne();
  if (text == "linear") return DStrategy::LinearCapMax();
  if (text == "disjunctive") return DStrategy::DisjunctiveCommit();
  if (text == "auto") return DStrategy::Auto();
  if (text.rfind("fixed:", 0) == 0) {
    const int64_t d = std::stoll(text.substr(6));
    if (d < 1) throw std::invalid_argument("fixed d must be >= 1");
    return DStrategy::Fixed(d);
  }
  throw std::invalid_argument("unknown d strategy: " + text);
}

DChoice ChooseDLinearCap(const FeasibilitySpec& spec_k, int64_t remaining) {
  if (remaining < 1) throw std::invalid_argument("no students remain");
  const auto system = Compile(spec_k);
  if (!system) {
    throw std::invalid_argument("linear-cap strategy needs a compilable spec");
  }
  if (system->branches.size() > 1) {
    throw std::invalid_argument(
        "linear-cap strategy needs a single conjunction of caps");
  }
  if (system->branches.empty()) return Make(spec_k, remaining);
  const int64_t bound =
      LaminarTruncationBound(system->branches.front(), spec_k.dimension());
  return Make(spec_k, std::min(remaining, bound));
}

DChoice ChooseDDisjunctive(const FeasibilitySpec& spec_k, int64_t remaining) {
  if (remaining < 1) throw std::invalid_argument("no students remain");
  const auto system = Compile(spec_k);
  if (!system) {
    throw std::invalid_argument("disjunctive strategy needs a compilable spec");
  }
  const int m = spec_k.dimension();
  const auto& branches = system->branches;
  if (branches.empty()) return Make(spec_k, remaining);
  if (branches.size() == 1) {
    const int64_t bound = LaminarTruncationBound(branches.front(), m);
    DChoice out = Make(spec_k, std::min(remaining, bound));
    out.committed = true;
    return out;
  }

  std::map<std::vector<CollegeId>, int64_t> joint;
  for (const auto& b : branches) {
    for (const auto& cap : b.caps) {
      auto [it, inserted] = joint.emplace(cap.colleges, cap.limit);
      if (!inserted) it->second = std::min(it->second, cap.limit);
    }
  }
  int64_t d_star = kUnbounded;
  for (const auto& b : branches) {
    if (LaminarTruncationBound(b, m) != kUnbounded) {
      DChoice out = Make(spec_k, 1);
      out.d_star = 0;
      return out;
    }
    std::map<std::vector<CollegeId>, int64_t> own;
    for (const auto& cap : b.caps) own.emplace(cap.colleges, cap.limit);
    FeasibilityTracker tracker(SpecFromBranch(m, b));
    for (const auto& [colleges, limit] : joint) {
      if (limit >= d_star) continue;
      auto it = own.find(colleges);
      if (it != own.end() && it->second <= limit) continue;
      if (ReachOn(tracker, colleges, limit + 1) > limit) d_star = limit;
    }
  }
  if (d_star == 0) {
    DChoice out = Make(spec_k, 1);
    out.d_star = 0;
    return out;
  }
  CapBranch merged;
  for (const auto& [colleges, limit] : joint) {
    merged.caps.push_back({colleges, limit});
  }
  const int64_t bound = LaminarTruncationBound(merged, m);
  DChoice out = Make(spec_k, std::min({d_star, bound, remaining}));
  out.d_star = d_star == kUnbounded ? -1 : d_star;
  return out;
}

DChoice ChooseD(const DStrategy& strategy, const FeasibilitySpec& spec_k,
                int64_t remaining) {
  switch (strategy.kind) {
    case DStrategyKind::kAlwaysOne:
      return Make(spec_k, 1);
    case DStrategyKind::kLinearCapMax:
      return ChooseDLinearCap(spec_k, remaining);
    case DStrategyKind::kDisjunctiveCommit:
      return ChooseDDisjunctive(spec_k, remaining);
    case DStrategyKind::kFixed: {
      if (strategy.fixed_d < 1) {
        throw std::invalid_argument("fixed d must be >= 1");
      }
      const int64_t d = std::min(strategy.fixed_d, remaining);
      DChoice out = Make(spec_k, d);
      if (d == 1 || StructurallyMNatural(out.stage_spec)) return out;
      AssignmentVector box(spec_k.dimension());
      for (int i = 0; i < box.dimension(); ++i) box[i] = static_cast<int>(d);
      const Verdict v =
          CheckMNaturalConvex(out.stage_spec, box, strategy.enumeration_cap)
              .verdict;
      if (v != Verdict::kYes) {
        throw UncertifiedDError("d=" + std::to_string(d) +
                                " is not certified M-natural-convex (" +
                                VerdictName(v) + ")");
      }
      return out;
    }
    case DStrategyKind::kAuto: {
      const auto system = Compile(spec_k);
      if (!system) return Make(spec_k, 1);
      if (system->branches.size() <= 1) {
        return ChooseDLinearCap(spec_k, remaining);
      }
      return ChooseDDisjunctive(spec_k, remaining);
    }
  }
  return Make(spec_k, 1);
}

MsgdaResult Msgda(const Market& market, const MasterList& order,
                  const FeasibilitySpec& spec, const DStrategy& strategy) {
  const int n = market.num_students();
  const int m = market.num_colleges();
  if (spec.dimension() != m) {
    throw DimensionError("spec dimension does not match the market");
  }
  if (order.size() != n) {
    throw std::invalid_argument("master list does not cover the students");
  }
  MsgdaResult result;
  result.matching = Matching(n);
  AssignmentVector fixed_nu(m);
  int pos = 0;
  for (int stage = 1; pos < n; ++stage) {
    const FeasibilitySpec spec_k = Shift(spec, fixed_nu);
    const int64_t remaining = n - pos;
    const DChoice choice = ChooseD(strategy, spec_k, remaining);
    if (choice.d < 1 || choice.d > remaining) {
      throw UncertifiedDError("d-selection returned d=" +
                              std::to_string(choice.d));
    }
    StageRecord record;
    record.stage = stage;
    record.d = choice.d;
    record.committed = choice.committed;
    record.students.assign(order.order().begin() + pos,
                           order.order().begin() + pos + choice.d);
    GdaOptions options;
    options.participants = record.students;
    options.check = GdaCheck::kTrusted;
    const GdaResult gda = RunGda(market, choice.stage_spec, options);
    record.fixed = gda.matching.Contracts();
    for (ContractId x : record.fixed) {
      result.matching.Assign(market, x);
      ++fixed_nu[market.college_of(x)];
    }
    record.spec = m <= 12 ? choice.stage_spec.Describe()
                          : "truncate(" + std::to_string(choice.d) +
                                ", shift(nu(Y), f))";
    result.trace.evaluations += gda.evaluations;
    result.trace.events.push_back(
        "stage " + std::to_string(stage) + ": d=" + std::to_string(choice.d) +
        ", rounds=" + std::to_string(gda.rounds) +
        ", matched=" + std::to_string(record.fixed.size()) +
        (choice.committed ? ", committed" : ""));
    result.trace.stages.push_back(std::move(record));
    pos += static_cast<int>(choice.d);
  }
  return result;
}

}  // namespace distmatch
