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


#include "distmatch/audit.h"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

#include "distmatch/choice.h"

namespace distmatch {
namespace {

// Contracts of s strictly better than what s holds in Y.
std::span<const ContractId> BetterThanHeld(const Market& market,
                                           const Matching& y, StudentId s) {
  const auto pref = market.StudentPreference(s);
  const ContractId held = y.Of(s);
  const size_t k = held == kUnmatched ? pref.size()
                                      : static_cast<size_t>(
                                            market.StudentRank(held));
  return pref.subspan(0, std::min(k, pref.size()));
}

std::vector<std::vector<ContractId>> HeldByCollege(const Market& market,
                                                   const Matching& y) {
  std::vector<std::vector<ContractId>> held(market.num_colleges());
  for (ContractId x : y.Contracts()) held[market.college_of(x)].push_back(x);
  return held;
}

void CheckShape(const Market& market, const Matching& y,
                const FeasibilitySpec& spec) {
  if (spec.dimension() != market.num_colleges()) {
    throw DimensionError("spec dimension does not match the market");
  }
  if (y.num_students() != market.num_students()) {
    throw std::invalid_argument("matching does not fit the market");
  }
}

// Enumerates matchings in which every student is weakly better off than in
// y, calling visit until it returns true.
template <typename Visit>
ParetoCheck EnumerateDominating(const Market& market, const Matching& y,
                                const FeasibilitySpec& spec, int64_t cap,
                                Visit visit) {
  const int n = market.num_students();
  std::vector<std::vector<ContractId>> options(n);
  double total = 1;
  for (StudentId s = 0; s < n; ++s) {
    for (ContractId x : BetterThanHeld(market, y, s)) options[s].push_back(x);
    options[s].push_back(y.Of(s));  // kUnmatched when unmatched
    total *= static_cast<double>(options[s].size());
  }
  ParetoCheck out;
  if (total > static_cast<double>(cap)) return out;
  std::vector<size_t> pick(n, 0);
  const int m = market.num_colleges();
  while (true) {
    ++out.enumerated;
    bool strict = false;
    AssignmentVector nu(m);
    Matching candidate(n);
    for (StudentId s = 0; s < n; ++s) {
      const ContractId x = options[s][pick[s]];
      if (pick[s] + 1 < options[s].size()) strict = true;
      if (x != kUnmatched) {
        candidate.Assign(market, x);
        ++nu[market.college_of(x)];
      }
    }
    if (strict && spec.Evaluate(nu) && visit(candidate)) {
      out.verdict = Verdict::kNo;
      out.witness = candidate;
      return out;
    }
    int s = 0;
    while (s < n && ++pick[s] == options[s].size()) pick[s++] = 0;
    if (s == n) break;
  }
  out.verdict = Verdict::kYes;
  return out;
}

void Permute(std::span<const ContractId> pool, std::vector<char>& used,
             std::vector<ContractId>& current,
             std::vector<std::vector<ContractId>>& out) {
  out.push_back(current);
  for (size_t k = 0; k < pool.size(); ++k) {
    if (used[k]) continue;
    used[k] = 1;
    current.push_back(pool[k]);
    Permute(pool, used, current, out);
    current.pop_back();
    used[k] = 0;
  }
}

}  // namespace

bool IsFeasible(const Market& market, const Matching& y,
                const FeasibilitySpec& spec) {
  CheckShape(market, y, spec);
  for (ContractId x : y.Contracts()) {
    if (!market.Acceptable(x)) return false;
  }
  return spec.Evaluate(NuOf(market, y));
}

std::vector<ContractId> ClaimsEmptySeat(const Market& market,
                                        const Matching& y,
                                        const FeasibilitySpec& spec) {
  CheckShape(market, y, spec);
  const int m = market.num_colleges();
  const AssignmentVector nu = NuOf(market, y);
  // cache[(from + 1) * m + to]: -1 unknown, else feasibility of the move.
  std::vector<int> cache(static_cast<size_t>(m + 1) * m, -1);
  std::vector<ContractId> out;
  for (StudentId s = 0; s < market.num_students(); ++s) {
    const ContractId held = y.Of(s);
    const int from = held == kUnmatched ? -1 : market.college_of(held);
    for (ContractId x : BetterThanHeld(market, y, s)) {
      const CollegeId to = market.college_of(x);
      int& slot = cache[static_cast<size_t>(from + 1) * m + to];
      if (slot < 0) {
        AssignmentVector moved = nu;
        if (from >= 0) --moved[from];
        ++moved[to];
        slot = spec.Evaluate(moved) ? 1 : 0;
      }
      if (slot) out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ContractId> StronglyClaims(const Market& market, const Matching& y,
                                       const FeasibilitySpec& spec) {
  CheckShape(market, y, spec);
  const int m = market.num_colleges();
  const AssignmentVector nu = NuOf(market, y);
  std::vector<char> open(m);
  for (CollegeId c = 0; c < m; ++c) {
    open[c] = spec.Evaluate(nu + AssignmentVector::Unit(m, c)) ? 1 : 0;
  }
  std::vector<ContractId> out;
  for (StudentId s = 0; s < market.num_students(); ++s) {
    for (ContractId x : BetterThanHeld(market, y, s)) {
      if (open[market.college_of(x)]) out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<EnvyTriple> JustifiedEnvy(const Market& market,
                                      const Matching& y) {
  const auto held = HeldByCollege(market, y);
  std::vector<EnvyTriple> out;
  for (StudentId s = 0; s < market.num_students(); ++s) {
    for (ContractId x : BetterThanHeld(market, y, s)) {
      const CollegeId c = market.college_of(x);
      for (ContractId other : held[c]) {
        if (market.CollegeRank(x) < market.CollegeRank(other)) {
          out.push_back({s, market.student_of(other), c});
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<StudentPair> GeneralizedEnvy(const Market& market,
                                         const Matching& y,
                                         const FeasibilitySpec& spec) {
  CheckShape(market, y, spec);
  const int m = market.num_colleges();
  const AssignmentVector nu = NuOf(market, y);
  if (nu.Total() == 0) return {};
  // swap[from * m + to]: Y - e_from + e_to feasible.
  std::vector<char> swap(static_cast<size_t>(m) * m, 0);
  for (CollegeId from = 0; from < m; ++from) {
    if (nu[from] == 0) continue;
    for (CollegeId to = 0; to < m; ++to) {
      AssignmentVector moved = nu;
      --moved[from];
      ++moved[to];
      swap[static_cast<size_t>(from) * m + to] = spec.Evaluate(moved) ? 1 : 0;
    }
  }
  const std::vector<ContractId> contracts = y.Contracts();
  const WeightTable& w = market.weights();
  std::set<StudentPair> pairs;
  for (StudentId s = 0; s < market.num_students(); ++s) {
    for (ContractId x : BetterThanHeld(market, y, s)) {
      const CollegeId to = market.college_of(x);
      for (ContractId other : contracts) {
        const CollegeId from = market.college_of(other);
        if (w.Heavier(x, other) && swap[static_cast<size_t>(from) * m + to]) {
          pairs.emplace(s, market.student_of(other));
        }
      }
    }
  }
  return {pairs.begin(), pairs.end()};
}

std::vector<EnvyTriple> MlFairViolations(const Market& market,
                                         const Matching& y,
                                         const MasterList& order) {
  std::vector<EnvyTriple> out;
  for (const EnvyTriple& t : JustifiedEnvy(market, y)) {
    if (order.Precedes(t.envier, t.envied)) out.push_back(t);
  }
  return out;
}

HmStability CheckHmStable(const Market& market, const Matching& y,
                          const FeasibilitySpec& spec) {
  CheckShape(market, y, spec);
  HmStability out;
  std::vector<ContractId> contracts = y.Contracts();
  for (ContractId x : contracts) {
    if (!market.Acceptable(x)) {
      out.witness = x;
      out.reason = "students reject an unacceptable contract";
      return out;
    }
  }
  FeasibilityTracker tracker(spec);
  const std::vector<ContractId> kept =
      ChCollegesGreedy(market, contracts, tracker);
  if (kept.size() != contracts.size()) {
    for (ContractId x : contracts) {
      if (!std::binary_search(kept.begin(), kept.end(), x)) {
        out.witness = x;
        break;
      }
    }
    out.reason = "colleges drop a contract of the matching";
    return out;
  }
  for (StudentId s = 0; s < market.num_students(); ++s) {
    for (ContractId x : BetterThanHeld(market, y, s)) {
      std::vector<ContractId> pool = contracts;
      pool.push_back(x);
      const auto chosen = ChCollegesGreedy(market, pool, tracker);
      if (std::binary_search(chosen.begin(), chosen.end(), x)) {
        out.witness = x;
        out.reason = "blocking contract";
        return out;
      }
    }
  }
  out.stable = true;
  return out;
}

ParetoCheck CheckParetoFrontier(const Market& market, const Matching& y,
                                const FeasibilitySpec& spec, int64_t cap) {
  CheckShape(market, y, spec);
  const auto base = GeneralizedEnvy(market, y, spec);
  const std::set<StudentPair> allowed(base.begin(), base.end());
  return EnumerateDominating(
      market, y, spec, cap, [&](const Matching& candidate) {
        for (const StudentPair& p : GeneralizedEnvy(market, candidate, spec)) {
          if (!allowed.count(p)) return false;
        }
        return true;
      });
}

ParetoCheck CheckParetoEfficient(const Market& market, const Matching& y,
                                 const FeasibilitySpec& spec, int64_t cap) {
  CheckShape(market, y, spec);
  return EnumerateDominating(market, y, spec, cap,
                             [](const Matching&) { return true; });
}

std::vector<std::vector<ContractId>> AllReports(
    std::span<const ContractId> contracts) {
  std::vector<std::vector<ContractId>> out;
  std::vector<char> used(contracts.size(), 0);
  std::vector<ContractId> current;
  Permute(contracts, used, current, out);
  return out;
}

std::vector<Misreport> StrategyproofnessAudit(const MechanismFn& mechanism,
                                              const Market& market, int cap) {
  for (StudentId s = 0; s < market.num_students(); ++s) {
    if (static_cast<int>(market.ContractsOf(s).size()) > cap) {
      throw CapExceededError("student " + market.student_name(s) +
                             " has too many contracts to enumerate reports");
    }
  }
  const Matching truthful = mechanism(market);
  std::vector<Misreport> out;
  for (StudentId s = 0; s < market.num_students(); ++s) {
    for (auto& report : AllReports(market.ContractsOf(s))) {
      const Market lied = market.WithStudentPreference(s, report);
      const ContractId got = mechanism(lied).Of(s);
      if (market.Prefers(s, got, truthful.Of(s))) {
        out.push_back({s, std::move(report), truthful.Of(s), got});
      }
    }
  }
  return out;
}

BordaScores Borda(const Market& market, const Matching& y) {
  BordaScores out;
  const int m = market.num_colleges();
  int64_t total = 0;
  for (StudentId s = 0; s < market.num_students(); ++s) {
    const ContractId x = y.Of(s);
    const int score = x == kUnmatched ? 0 : m - market.StudentRank(x);
    if (x == kUnmatched) ++out.unmatched;
    out.per_student.push_back(score);
    total += score;
  }
  if (market.num_students() > 0) {
    out.mean = static_cast<double>(total) / market.num_students();
  }
  return out;
}

EnvyRatios ComputeEnvyRatios(const Market& market, const Matching& y) {
  const int n = market.num_students();
  EnvyRatios out;
  if (n == 0) return out;
  const auto held = HeldByCollege(market, y);
  std::vector<char> envies(n, 0);
  std::vector<char> pair(static_cast<size_t>(n) * n, 0);
  int64_t envious = 0, bad_pairs = 0;
  for (StudentId s = 0; s < n; ++s) {
    for (ContractId x : BetterThanHeld(market, y, s)) {
      for (ContractId other : held[market.college_of(x)]) {
        if (market.CollegeRank(x) >= market.CollegeRank(other)) continue;
        if (!envies[s]) {
          envies[s] = 1;
          ++envious;
        }
        const StudentId t = market.student_of(other);
        const size_t key = static_cast<size_t>(std::min(s, t)) * n +
                           std::max(s, t);
        if (!pair[key]) {
          pair[key] = 1;
          ++bad_pairs;
        }
      }
    }
  }
  out.students_without_envy = static_cast<double>(n - envious) / n;
  if (n > 1) {
    const double pairs = static_cast<double>(n) * (n - 1) / 2;
    out.pairs_without_envy = (pairs - static_cast<double>(bad_pairs)) / pairs;
  }
  return out;
}

AuditReport Audit(const Market& market, const Matching& y,
                  const FeasibilitySpec& spec, const AuditOptions& options) {
  AuditReport r;
  r.feasible = IsFeasible(market, y, spec);
  r.claims = ClaimsEmptySeat(market, y, spec);
  r.strong_claims = StronglyClaims(market, y, spec);
  r.envy = JustifiedEnvy(market, y);
  if (options.generalized_envy) r.generalized_envy = GeneralizedEnvy(market, y, spec);
  if (options.order) r.ml_fair_violations = MlFairViolations(market, y, *options.order);
  if (options.hm_stable) r.hm_stable = CheckHmStable(market, y, spec);
  r.borda = Borda(market, y);
  r.ratios = ComputeEnvyRatios(market, y);
  return r;
}

std::string AuditReportToJson(const Market& market, const AuditReport& r) {
  using nlohmann::json;
  auto contract = [&](ContractId x) {
    return json::array({market.student_name(market.student_of(x)),
                        market.college_name(market.college_of(x))});
  };
  auto triples = [&](const std::vector<EnvyTriple>& ts) {
    json a = json::array();
    for (const auto& t : ts) {
      a.push_back({market.student_name(t.envier), market.student_name(t.envied),
                   market.college_name(t.college)});
    }
    return a;
  };
  json j;
  j["feasible"] = r.feasible;
  j["claims"] = json::array();
  for (ContractId x : r.claims) j["claims"].push_back(contract(x));
  j["strong_claims"] = json::array();
  for (ContractId x : r.strong_claims) j["strong_claims"].push_back(contract(x));
  j["nonwasteful"] = r.claims.empty();
  j["weakly_nonwasteful"] = r.strong_claims.empty();
  j["fair"] = r.envy.empty();
  j["envy"] = triples(r.envy);
  j["generalized_envy"] = json::array();
  for (const auto& [s, t] : r.generalized_envy) {
    j["generalized_envy"].push_back(
        {market.student_name(s), market.student_name(t)});
  }
  if (r.ml_fair_violations) {
    j["ml_fair"] = r.ml_fair_violations->empty();
    j["ml_fair_violations"] = triples(*r.ml_fair_violations);
  }
  if (r.hm_stable) {
    j["hm_stable"] = r.hm_stable->stable;
    if (r.hm_stable->witness) {
      j["hm_witness"] = contract(*r.hm_stable->witness);
      j["hm_reason"] = r.hm_stable->reason;
    }
  }
  j["borda_mean"] = r.borda.mean;
  j["borda_unmatched"] = r.borda.unmatched;
  j["students_without_envy"] = r.ratios.students_without_envy;
  j["pairs_without_envy"] = r.ratios.pairs_without_envy;
  return j.dump(2);
}

}  // namespace distmatch
