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


#include "distmatch/mechanisms.h"

#include <algorithm>
#include <deque>
#include <queue>
#include <string>

#include "distmatch/choice.h"
#include "distmatch/constraint_checks.h"

namespace distmatch {
namespace {

std::vector<StudentId> Participants(
    const Market& market,
    const std::optional<std::vector<StudentId>>& participants) {
  std::vector<StudentId> out;
  if (participants) {
    std::vector<char> seen(market.num_students(), 0);
    for (StudentId s : *participants) {
      if (s < 0 || s >= market.num_students()) {
        throw std::invalid_argument("participant out of range");
      }
      if (seen[s]++) throw std::invalid_argument("duplicate participant");
      out.push_back(s);
    }
  } else {
    for (StudentId s = 0; s < market.num_students(); ++s) out.push_back(s);
  }
  return out;
}

// kYes, kNo or kInconclusive for the spec restricted to |nu| <= k.
Verdict CertifyUpTo(const FeasibilitySpec& spec, int64_t k, int64_t cap) {
  const FeasibilitySpec bounded = Truncate(spec, std::max<int64_t>(k, 1));
  if (StructurallyMNatural(bounded)) return Verdict::kYes;
  if (k <= 1) return Verdict::kYes;
  AssignmentVector box(spec.dimension());
  for (int i = 0; i < box.dimension(); ++i) box[i] = static_cast<int>(k);
  return CheckMNaturalConvex(bounded, box, cap).verdict;
}

std::vector<ContractId> FlagsToList(const std::vector<char>& flags) {
  std::vector<ContractId> out;
  for (size_t x = 0; x < flags.size(); ++x) {
    if (flags[x]) out.push_back(static_cast<ContractId>(x));
  }
  return out;
}

}  // namespace

GdaResult RunGda(const Market& market, const FeasibilitySpec& spec,
                 const GdaOptions& options) {
  if (spec.dimension() != market.num_colleges()) {
    throw DimensionError("spec dimension does not match the market");
  }
  const std::vector<StudentId> students =
      Participants(market, options.participants);
  GdaResult result;
  switch (options.check) {
    case GdaCheck::kRequire: {
      const Verdict v = CertifyUpTo(
          spec, static_cast<int64_t>(students.size()), options.enumeration_cap);
      if (v == Verdict::kNo) {
        throw NotMNaturalConvexError(
            "spec is not M-natural-convex within the market size: " +
            spec.Describe());
      }
      result.certified = v == Verdict::kYes;
      break;
    }
    case GdaCheck::kTrusted:
      result.certified = true;
      break;
    case GdaCheck::kSkip:
      result.certified = false;
      break;
  }

  FeasibilityTracker tracker(spec);
  std::vector<int> next(market.num_students(), 0);
  std::vector<char> offered(market.num_contracts(), 0);
  std::vector<char> rejected(market.num_contracts(), 0);
  std::vector<ContractId> accepted;
  while (true) {
    ++result.rounds;
    std::vector<ContractId> offers;
    for (StudentId s : students) {
      const auto pref = market.StudentPreference(s);
      if (next[s] < static_cast<int>(pref.size())) {
        offers.push_back(pref[next[s]]);
        offered[pref[next[s]]] = 1;
      }
    }
    accepted = ChCollegesGreedy(market, offers, tracker);
    if (accepted.size() == offers.size()) break;
    std::sort(offers.begin(), offers.end());
    for (ContractId x : offers) {
      if (!std::binary_search(accepted.begin(), accepted.end(), x)) {
        rejected[x] = 1;
        ++next[market.student_of(x)];
      }
    }
  }
  result.matching = Matching::FromContracts(market, accepted);
  result.offered = FlagsToList(offered);
  result.rejected = FlagsToList(rejected);
  result.evaluations = tracker.evaluations();
  return result;
}

Matching Gda(const Market& market, const FeasibilitySpec& spec) {
  return RunGda(market, spec).matching;
}

Matching GdaAlt(const Market& market, const FeasibilitySpec& spec,
                StudentId held_out, const GdaOptions& options) {
  std::vector<StudentId> students = Participants(market, options.participants);
  auto it = std::find(students.begin(), students.end(), held_out);
  if (it == students.end()) {
    throw std::invalid_argument("held-out student is not a participant");
  }
  students.erase(it);
  GdaOptions first = options;
  first.participants = students;
  if (options.check == GdaCheck::kRequire) {
    // Certify once for the full participant count.
    const Verdict v =
        CertifyUpTo(spec, static_cast<int64_t>(students.size()) + 1,
                    options.enumeration_cap);
    if (v == Verdict::kNo) {
      throw NotMNaturalConvexError("spec is not M-natural-convex: " +
                                   spec.Describe());
    }
    first.check = GdaCheck::kTrusted;
  }
  const GdaResult base = RunGda(market, spec, first);
  std::vector<ContractId> z = base.matching.Contracts();
  std::vector<char> rejected(market.num_contracts(), 0);
  for (ContractId x : base.rejected) rejected[x] = 1;

  StudentId current = held_out;
  while (true) {
    std::optional<ContractId> offer;
    for (ContractId x : market.StudentPreference(current)) {
      if (!rejected[x]) {
        offer = x;
        break;
      }
    }
    if (!offer) break;
    RejectionStep step = SingleRejectionStep(market, z, *offer, spec);
    z = std::move(step.accepted);
    if (!step.rejected) break;
    rejected[*step.rejected] = 1;
    current = market.student_of(*step.rejected);
  }
  return Matching::FromContracts(market, z);
}

Matching Da(const Market& market, const std::vector<int64_t>& quotas,
            const std::optional<std::vector<StudentId>>& participants) {
  const int m = market.num_colleges();
  if (static_cast<int>(quotas.size()) != m) {
    throw DimensionError("quota vector has the wrong length");
  }
  // Worst held contract on top.
  auto worse = [&](ContractId a, ContractId b) {
    return market.CollegeRank(a) < market.CollegeRank(b);
  };
  using Heap =
      std::priority_queue<ContractId, std::vector<ContractId>, decltype(worse)>;
  std::vector<Heap> held(m, Heap(worse));
  std::vector<int> next(market.num_students(), 0);
  std::deque<StudentId> free;
  for (StudentId s : Participants(market, participants)) free.push_back(s);
  while (!free.empty()) {
    const StudentId s = free.front();
    free.pop_front();
    const auto pref = market.StudentPreference(s);
    while (next[s] < static_cast<int>(pref.size())) {
      const ContractId x = pref[next[s]];
      const CollegeId c = market.college_of(x);
      if (quotas[c] <= 0) {
        ++next[s];
        continue;
      }
      if (static_cast<int64_t>(held[c].size()) < quotas[c]) {
        held[c].push(x);
        break;
      }
      const ContractId worst = held[c].top();
      if (market.CollegeRank(x) < market.CollegeRank(worst)) {
        held[c].pop();
        held[c].push(x);
        const StudentId loser = market.student_of(worst);
        ++next[loser];
        free.push_back(loser);
        break;
      }
      ++next[s];
    }
  }
  Matching out(market.num_students());
  for (auto& h : held) {
    while (!h.empty()) {
      out.Assign(market, h.top());
      h.pop();
    }
  }
  return out;
}

Matching Sd(const Market& market, const MasterList& order,
            const FeasibilitySpec& spec, int64_t* evaluations) {
  if (spec.dimension() != market.num_colleges()) {
    throw DimensionError("spec dimension does not match the market");
  }
  if (order.size() != market.num_students()) {
    throw std::invalid_argument("master list does not cover the students");
  }
  FeasibilityTracker tracker(spec);
  Matching out(market.num_students());
  for (StudentId s : order.order()) {
    for (ContractId x : market.StudentPreference(s)) {
      const CollegeId c = market.college_of(x);
      if (tracker.CanAdd(c)) {
        tracker.Add(c);
        out.Assign(market, x);
        break;
      }
    }
  }
  if (evaluations) *evaluations = tracker.evaluations();
  return out;
}

Matching Acda(const Market& market, const FeasibilitySpec& spec,
              const std::vector<int64_t>& reduced_quotas) {
  if (static_cast<int>(reduced_quotas.size()) != market.num_colleges() ||
      spec.dimension() != market.num_colleges()) {
    throw DimensionError("quota vector has the wrong length");
  }
  AssignmentVector nu(market.num_colleges());
  for (int i = 0; i < nu.dimension(); ++i) {
    if (reduced_quotas[i] < 0) {
      throw InfeasibleQuotaError("reduced quotas must be >= 0");
    }
    nu[i] = static_cast<int>(
        std::min<int64_t>(reduced_quotas[i], market.num_students()));
  }
  if (!spec.Evaluate(nu)) {
    throw InfeasibleQuotaError("reduced quota vector " + nu.ToString() +
                               " is infeasible");
  }
  return Da(market, reduced_quotas);
}

int64_t LargestUniformQuota(const FeasibilitySpec& spec, int64_t bound) {
  auto ok = [&](int64_t k) {
    AssignmentVector v(spec.dimension());
    for (int i = 0; i < v.dimension(); ++i) v[i] = static_cast<int>(k);
    return spec.Evaluate(v);
  };
  if (bound <= 0 || !ok(0)) return 0;
  int64_t lo = 0, hi = bound;
  while (lo < hi) {
    const int64_t mid = lo + (hi - lo + 1) / 2;
    if (ok(mid)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

AdaResult RunAda(const Market& market, const MasterList& order,
                 const FeasibilitySpec& spec) {
  const int n = market.num_students();
  const int m = market.num_colleges();
  if (spec.dimension() != m) {
    throw DimensionError("spec dimension does not match the market");
  }
  if (order.size() != n) {
    throw std::invalid_argument("master list does not cover the students");
  }
  std::vector<int64_t> quota(m);
  for (CollegeId c = 0; c < m; ++c) quota[c] = MaxQuota(spec, c, n);

  AdaResult result;
  result.matching = Matching(n);
  if (n == 0) return result;
  FeasibilityTracker tracker(spec);
  AssignmentVector fixed_nu(m);
  int pos = 0;
  while (true) {
    ++result.stages;
    for (int t = 1;; ++t) {
      std::vector<StudentId> selected(order.order().begin() + pos,
                                      order.order().begin() + pos + t);
      const Matching round = Da(market, quota, selected);
      const std::vector<ContractId> contracts = round.Contracts();
      const AssignmentVector round_nu = NuOf(market, contracts);
      if (pos + t == n) {
        for (ContractId x : contracts) result.matching.Assign(market, x);
        result.evaluations = tracker.evaluations();
        return result;
      }
      tracker.Reset(fixed_nu + round_nu);
      std::vector<char> forbidden(m, 0);
      bool any = false;
      for (CollegeId c = 0; c < m; ++c) {
        if (round_nu[c] < quota[c] && !tracker.CanAdd(c)) {
          forbidden[c] = 1;
          any = true;
        }
      }
      if (!any) continue;
      for (ContractId x : contracts) result.matching.Assign(market, x);
      fixed_nu += round_nu;
      pos += t;
      for (CollegeId c = 0; c < m; ++c) {
        quota[c] = forbidden[c] ? 0 : quota[c] - round_nu[c];
      }
      break;
    }
  }
}

Matching Ada(const Market& market, const MasterList& order,
             const FeasibilitySpec& spec) {
  return RunAda(market, order, spec).matching;
}

}  // namespace distmatch
