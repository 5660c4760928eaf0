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


#include "test_support.h"

#include <algorithm>
#include <numeric>

namespace distmatch::testing {

bool CapModel::Feasible(const std::vector<int>& counts) const {
  for (const auto& branch : branches) {
    bool ok = true;
    for (const Cap& cap : branch) {
      int64_t sum = 0;
      for (int i : cap.colleges) sum += counts[i];
      if (sum > cap.limit) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

FeasibilitySpec CapModel::ToSpec() const {
  std::vector<FeasibilitySpec> ors;
  for (const auto& branch : branches) {
    std::vector<FeasibilitySpec> ands;
    for (const Cap& cap : branch) {
      ands.push_back(cap.colleges.size() == 1
                         ? FeasibilitySpec::CollegeCap(m, cap.colleges[0],
                                                       cap.limit)
                         : FeasibilitySpec::LinearCap(m, cap.colleges,
                                                      cap.limit));
    }
    if (ands.empty()) {
      ands.push_back(FeasibilitySpec::UpperBound(std::vector<int64_t>(m, 1000)));
    }
    ors.push_back(ands.size() == 1 ? ands[0] : FeasibilitySpec::And(ands));
  }
  return ors.size() == 1 ? ors[0] : FeasibilitySpec::Or(ors);
}

Market RandomMarket(Rng& rng, int n, int m, const MarketOptions& opts) {
  MarketBuilder b;
  b.AddStudents(n);
  b.AddColleges(m);
  std::vector<std::vector<char>> listed(n, std::vector<char>(m, 0));
  std::vector<std::vector<StudentId>> college_lists(m);
  for (int c = 0; c < m; ++c) {
    std::vector<StudentId> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng.Shuffle(order);
    for (StudentId s : order) {
      if (rng.Unit() < opts.college_keep) {
        college_lists[c].push_back(s);
        listed[s][c] = 1;
      }
    }
    b.SetCollegePreference(c, college_lists[c]);
  }
  for (int s = 0; s < n; ++s) {
    std::vector<CollegeId> order;
    for (int c = 0; c < m; ++c) {
      if (listed[s][c] && rng.Unit() < opts.accept) order.push_back(c);
    }
    rng.Shuffle(order);
    b.SetStudentPreference(s, order);
  }
  if (opts.rational_weights) {
    int total = 0;
    for (const auto& l : college_lists) total += static_cast<int>(l.size());
    std::vector<int> values(total);
    std::iota(values.begin(), values.end(), 1);
    rng.Shuffle(values);
    int k = 0;
    for (int c = 0; c < m; ++c) {
      std::vector<int> mine(values.begin() + k,
                            values.begin() + k + college_lists[c].size());
      k += static_cast<int>(college_lists[c].size());
      std::sort(mine.rbegin(), mine.rend());
      for (size_t r = 0; r < mine.size(); ++r) {
        b.SetWeight(college_lists[c][r], c, Weight(mine[r], 7));
      }
    }
  }
  return b.Build();
}

namespace {

std::vector<int> RandomSubset(Rng& rng, int m, int size) {
  std::vector<int> all(m);
  std::iota(all.begin(), all.end(), 0);
  rng.Shuffle(all);
  all.resize(size);
  std::sort(all.begin(), all.end());
  return all;
}

void Laminar(Rng& rng, std::vector<int> set, int64_t max_limit,
             std::vector<CapModel::Cap>& out) {
  if (set.size() == 1) {
    if (rng.Unit() < 0.7) {
      out.push_back({set, static_cast<int64_t>(rng.Below(max_limit + 1))});
    }
    return;
  }
  if (rng.Unit() < 0.6) {
    out.push_back({set, static_cast<int64_t>(rng.Below(max_limit + 2))});
  }
  rng.Shuffle(set);
  const size_t cut = 1 + rng.Below(set.size() - 1);
  std::vector<int> left(set.begin(), set.begin() + cut);
  std::vector<int> right(set.begin() + cut, set.end());
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  Laminar(rng, left, max_limit, out);
  Laminar(rng, right, max_limit, out);
}

}  // namespace

CapModel RandomLaminarModel(Rng& rng, int m, int64_t max_limit) {
  CapModel model;
  model.m = m;
  std::vector<int> all(m);
  std::iota(all.begin(), all.end(), 0);
  model.branches.emplace_back();
  Laminar(rng, all, max_limit, model.branches[0]);
  return model;
}

CapModel RandomHereditaryModel(Rng& rng, int m, int64_t max_limit) {
  CapModel model;
  model.m = m;
  const int branches = 1 + static_cast<int>(rng.Below(3));
  for (int b = 0; b < branches; ++b) {
    std::vector<CapModel::Cap> caps;
    const int count = 1 + static_cast<int>(rng.Below(4));
    for (int k = 0; k < count; ++k) {
      const int size = 1 + static_cast<int>(rng.Below(m));
      caps.push_back({RandomSubset(rng, m, size),
                      static_cast<int64_t>(rng.Below(max_limit + 2))});
    }
    model.branches.push_back(caps);
  }
  return model;
}

std::vector<ContractId> OracleChoice(const Market& market,
                                     const std::vector<ContractId>& pool,
                                     const CapModel& model) {
  const size_t k = pool.size();
  std::vector<ContractId> best;
  Weight best_weight = -1;
  for (uint64_t mask = 0; mask < (uint64_t{1} << k); ++mask) {
    std::vector<int> counts(model.m, 0);
    Weight w = 0;
    std::vector<ContractId> subset;
    for (size_t b = 0; b < k; ++b) {
      if (mask >> b & 1) {
        ++counts[market.college_of(pool[b])];
        w += market.weights()[pool[b]];
        subset.push_back(pool[b]);
      }
    }
    if (!model.Feasible(counts)) continue;
    if (w > best_weight) {
      best_weight = w;
      best = subset;
    }
  }
  std::sort(best.begin(), best.end());
  return best;
}

std::vector<std::vector<ContractId>> AllMatchings(const Market& market) {
  const int n = market.num_students();
  std::vector<std::vector<ContractId>> out;
  std::vector<ContractId> held(n, kUnmatched);
  auto rec = [&](auto&& self, int s) -> void {
    if (s == n) {
      out.push_back(held);
      return;
    }
    held[s] = kUnmatched;
    self(self, s + 1);
    for (ContractId x : market.StudentPreference(s)) {
      held[s] = x;
      self(self, s + 1);
    }
    held[s] = kUnmatched;
  };
  rec(rec, 0);
  return out;
}

std::vector<int> Counts(const Market& market,
                        const std::vector<ContractId>& held) {
  std::vector<int> counts(market.num_colleges(), 0);
  for (ContractId x : held) {
    if (x != kUnmatched) ++counts[market.college_of(x)];
  }
  return counts;
}

bool OracleFeasible(const Market& market, const std::vector<ContractId>& held,
                    const CapModel& model) {
  return model.Feasible(Counts(market, held));
}

int OracleRank(const Market& market, StudentId s, ContractId x) {
  const auto prefs = market.StudentPreference(s);
  for (size_t r = 0; r < prefs.size(); ++r) {
    if (prefs[r] == x) return static_cast<int>(r);
  }
  return static_cast<int>(prefs.size());
}

bool OracleHmStable(const Market& market, const std::vector<ContractId>& held,
                    const CapModel& model) {
  std::vector<ContractId> y;
  for (ContractId x : held) {
    if (x != kUnmatched) y.push_back(x);
  }
  std::sort(y.begin(), y.end());
  if (OracleChoice(market, y, model) != y) return false;
  for (StudentId s = 0; s < market.num_students(); ++s) {
    for (ContractId x : market.StudentPreference(s)) {
      if (OracleRank(market, s, x) >= OracleRank(market, s, held[s])) break;
      std::vector<ContractId> with = y;
      with.push_back(x);
      std::sort(with.begin(), with.end());
      const auto chosen = OracleChoice(market, with, model);
      if (std::binary_search(chosen.begin(), chosen.end(), x)) return false;
    }
  }
  return true;
}

std::optional<std::vector<ContractId>> OracleStudentOptimalStable(
    const Market& market, const CapModel& model) {
  std::vector<std::vector<ContractId>> stable;
  for (const auto& held : AllMatchings(market)) {
    if (OracleFeasible(market, held, model) &&
        OracleHmStable(market, held, model)) {
      stable.push_back(held);
    }
  }
  for (const auto& a : stable) {
    bool best = true;
    for (const auto& b : stable) {
      for (StudentId s = 0; s < market.num_students() && best; ++s) {
        if (OracleRank(market, s, b[s]) < OracleRank(market, s, a[s])) {
          best = false;
        }
      }
      if (!best) break;
    }
    if (best) return a;
  }
  return std::nullopt;
}

std::set<std::pair<int, int>> OracleGeneralizedEnvy(
    const Market& market, const std::vector<ContractId>& held,
    const CapModel& model) {
  std::set<std::pair<int, int>> out;
  const int n = market.num_students();
  for (StudentId s = 0; s < n; ++s) {
    for (ContractId x : market.StudentPreference(s)) {
      if (OracleRank(market, s, x) >= OracleRank(market, s, held[s])) break;
      for (StudentId t = 0; t < n; ++t) {
        const ContractId z = held[t];
        if (z == kUnmatched) continue;
        if (!(market.weights()[x] > market.weights()[z])) continue;
        std::vector<ContractId> swapped = held;
        swapped[t] = kUnmatched;
        swapped[s] = x;
        if (OracleFeasible(market, swapped, model)) out.emplace(s, t);
      }
    }
  }
  return out;
}

bool OracleOnFrontier(const Market& market, const std::vector<ContractId>& held,
                      const CapModel& model) {
  const auto envy = OracleGeneralizedEnvy(market, held, model);
  for (const auto& other : AllMatchings(market)) {
    if (!OracleFeasible(market, other, model)) continue;
    bool weak = true, strict = false;
    for (StudentId s = 0; s < market.num_students(); ++s) {
      const int a = OracleRank(market, s, other[s]);
      const int b = OracleRank(market, s, held[s]);
      if (a > b) weak = false;
      if (a < b) strict = true;
    }
    if (!weak || !strict) continue;
    const auto other_envy = OracleGeneralizedEnvy(market, other, model);
    if (std::includes(envy.begin(), envy.end(), other_envy.begin(),
                      other_envy.end())) {
      return false;
    }
  }
  return true;
}

std::vector<ContractId> Held(const Matching& y) {
  std::vector<ContractId> out(y.num_students());
  for (StudentId s = 0; s < y.num_students(); ++s) out[s] = y.Of(s);
  return out;
}

std::set<std::pair<int, int>> Pairs(const Market& market, const Matching& y) {
  std::set<std::pair<int, int>> out;
  for (ContractId x : y.Contracts()) {
    out.emplace(market.student_of(x) + 1, market.college_of(x) + 1);
  }
  return out;
}

}  // namespace distmatch::testing
