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


#include "distmatch/choice.h"

#include <algorithm>
#include <limits>

#include "distmatch/constraint_checks.h"

namespace distmatch {
namespace {

std::vector<ContractId> Sorted(std::vector<ContractId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<ContractId> ByWeight(const Market& market,
                                 std::span<const ContractId> pool) {
  std::vector<ContractId> order(pool.begin(), pool.end());
  const WeightTable& w = market.weights();
  std::sort(order.begin(), order.end(),
            [&](ContractId a, ContractId b) { return w.Heavier(a, b); });
  return order;
}

// Pool weights over a common denominator, when they fit comfortably.
std::optional<std::vector<int64_t>> ScaledWeights(
    const Market& market, std::span<const ContractId> pool) {
  using boost::multiprecision::cpp_int;
  cpp_int lcm = 1;
  for (ContractId x : pool) {
    const cpp_int den = denominator(market.weights()[x]);
    lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
  }
  const cpp_int limit =
      cpp_int(std::numeric_limits<int64_t>::max() / 4) / (pool.size() + 1);
  std::vector<int64_t> out;
  for (ContractId x : pool) {
    const Weight& w = market.weights()[x];
    const cpp_int v = numerator(w) * (lcm / denominator(w));
    if (v > limit) return std::nullopt;
    out.push_back(static_cast<int64_t>(v));
  }
  return out;
}

}  // namespace

std::optional<ContractId> ChStudent(const Market& market, StudentId s,
                                    std::span<const ContractId> pool) {
  std::optional<ContractId> best;
  for (ContractId x : pool) {
    if (market.student_of(x) != s || !market.Acceptable(x)) continue;
    if (!best || market.StudentRank(x) < market.StudentRank(*best)) best = x;
  }
  return best;
}

std::vector<ContractId> ChStudents(const Market& market,
                                   std::span<const ContractId> pool) {
  std::vector<ContractId> best(market.num_students(), kUnmatched);
  for (ContractId x : pool) {
    if (!market.Acceptable(x)) continue;
    ContractId& b = best[market.student_of(x)];
    if (b == kUnmatched || market.StudentRank(x) < market.StudentRank(b)) {
      b = x;
    }
  }
  std::vector<ContractId> out;
  for (ContractId x : best) {
    if (x != kUnmatched) out.push_back(x);
  }
  return Sorted(std::move(out));
}

std::vector<ContractId> ChCollegesGreedy(const Market& market,
                                         std::span<const ContractId> pool,
                                         FeasibilityTracker& tracker) {
  tracker.Reset();
  std::vector<ContractId> chosen;
  for (ContractId x : ByWeight(market, pool)) {
    const CollegeId c = market.college_of(x);
    if (tracker.CanAdd(c)) {
      tracker.Add(c);
      chosen.push_back(x);
    }
  }
  return Sorted(std::move(chosen));
}

CollegeChoice ChCollegesGreedy(const Market& market,
                               std::span<const ContractId> pool,
                               const FeasibilitySpec& spec) {
  FeasibilityTracker tracker(spec);
  CollegeChoice out;
  out.chosen = ChCollegesGreedy(market, pool, tracker);
  out.certified = StructurallyMNatural(spec);
  return out;
}

std::vector<ContractId> ChCollegesBruteforce(const Market& market,
                                             std::span<const ContractId> pool,
                                             const FeasibilitySpec& spec,
                                             int cap) {
  const int k = static_cast<int>(pool.size());
  if (k > cap || k > 30) {
    throw CapExceededError("pool of " + std::to_string(k) +
                           " contracts exceeds the brute-force cap");
  }
  const auto scaled = ScaledWeights(market, pool);
  const int m = spec.dimension();
  uint32_t best_mask = 0;
  bool found = false;
  int64_t best_int = 0;
  Weight best_rat = 0;
  for (uint32_t mask = 0; mask < (uint32_t{1} << k); ++mask) {
    AssignmentVector nu(m);
    for (int b = 0; b < k; ++b) {
      if (mask >> b & 1) ++nu[market.college_of(pool[b])];
    }
    if (!spec.Evaluate(nu)) continue;
    if (scaled) {
      int64_t total = 0;
      for (int b = 0; b < k; ++b) {
        if (mask >> b & 1) total += (*scaled)[b];
      }
      if (!found || total > best_int) {
        best_int = total;
        best_mask = mask;
      }
    } else {
      Weight total = 0;
      for (int b = 0; b < k; ++b) {
        if (mask >> b & 1) total += market.weights()[pool[b]];
      }
      if (!found || total > best_rat) {
        best_rat = total;
        best_mask = mask;
      }
    }
    found = true;
  }
  std::vector<ContractId> out;
  if (!found) return out;
  for (int b = 0; b < k; ++b) {
    if (best_mask >> b & 1) out.push_back(pool[b]);
  }
  return Sorted(std::move(out));
}

RejectionStep SingleRejectionStep(const Market& market,
                                  std::span<const ContractId> z, ContractId x,
                                  const FeasibilitySpec& spec) {
  std::vector<ContractId> pool(z.begin(), z.end());
  pool.push_back(x);
  FeasibilityTracker tracker(spec);
  RejectionStep step;
  step.accepted = ChCollegesGreedy(market, pool, tracker);
  std::vector<ContractId> dropped;
  for (ContractId y : Sorted(pool)) {
    if (!std::binary_search(step.accepted.begin(), step.accepted.end(), y)) {
      dropped.push_back(y);
    }
  }
  if (dropped.size() > 1) {
    throw MultipleRejectionError(
        "adding one contract rejected " + std::to_string(dropped.size()) +
        " contracts; the spec is not M-natural-convex here");
  }
  if (!dropped.empty()) step.rejected = dropped.front();
  return step;
}

}  // namespace distmatch
