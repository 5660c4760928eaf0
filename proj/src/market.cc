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

#include "distmatch/market.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace distmatch {

AssignmentVector::AssignmentVector(std::vector<int> counts)
    : counts_(std::move(counts)) {
  for (int c : counts_) {
    if (c < 0) throw std::invalid_argument("assignment counts must be >= 0");
  }
}

AssignmentVector AssignmentVector::Unit(int dimension, CollegeId i) {
  AssignmentVector v(dimension);
  v.counts_.at(i) = 1;
  return v;
}

int64_t AssignmentVector::Total() const {
  return std::accumulate(counts_.begin(), counts_.end(), int64_t{0});
}

AssignmentVector& AssignmentVector::operator+=(const AssignmentVector& other) {
  if (other.dimension() != dimension()) {
    throw std::invalid_argument("assignment vector dimension mismatch");
  }
  for (int i = 0; i < dimension(); ++i) counts_[i] += other.counts_[i];
  return *this;
}

AssignmentVector& AssignmentVector::operator-=(const AssignmentVector& other) {
  if (other.dimension() != dimension()) {
    throw std::invalid_argument("assignment vector dimension mismatch");
  }
  for (int i = 0; i < dimension(); ++i) {
    counts_[i] -= other.counts_[i];
    if (counts_[i] < 0) {
      throw std::invalid_argument("assignment vector would go negative");
    }
  }
  return *this;
}

bool AssignmentVector::Dominated(const AssignmentVector& other) const {
  for (int i = 0; i < dimension(); ++i) {
    if (counts_[i] > other.counts_[i]) return false;
  }
  return true;
}

std::string AssignmentVector::ToString() const {
  std::ostringstream out;
  out << '(';
  for (int i = 0; i < dimension(); ++i) {
    if (i) out << ',';
    out << counts_[i];
  }
  out << ')';
  return out.str();
}

MasterList::MasterList(std::vector<StudentId> order, int num_students)
    : order_(std::move(order)), position_(num_students, -1) {
  if (static_cast<int>(order_.size()) != num_students) {
    throw InvalidMarketError("master list must name every student once");
  }
  for (int p = 0; p < num_students; ++p) {
    StudentId s = order_[p];
    if (s < 0 || s >= num_students || position_[s] != -1) {
      throw InvalidMarketError("master list must name every student once");
    }
    position_[s] = p;
  }
}

MasterList MasterList::Identity(int num_students) {
  std::vector<StudentId> order(num_students);
  std::iota(order.begin(), order.end(), 0);
  return MasterList(std::move(order), num_students);
}

WeightTable::WeightTable(std::vector<Weight> weights)
    : weights_(std::move(weights)), rank_(weights_.size()) {
  std::vector<ContractId> order(weights_.size());
  std::iota(order.begin(), order.end(), 0);
  // Integral weights, the common case, sort on machine integers.
  std::vector<int64_t> integral;
  integral.reserve(weights_.size());
  const Weight lo(std::numeric_limits<int64_t>::min() / 2);
  const Weight hi(std::numeric_limits<int64_t>::max() / 2);
  for (const Weight& w : weights_) {
    if (denominator(w) != 1 || w < lo || w > hi) {
      integral.clear();
      break;
    }
    integral.push_back(static_cast<int64_t>(numerator(w)));
  }
  if (integral.size() == weights_.size()) {
    std::sort(order.begin(), order.end(), [&](ContractId a, ContractId b) {
      return integral[a] > integral[b];
    });
  } else {
    std::sort(order.begin(), order.end(), [this](ContractId a, ContractId b) {
      return weights_[a] > weights_[b];
    });
  }
  const bool fast = integral.size() == weights_.size();
  for (size_t k = 0; k < order.size(); ++k) {
    const ContractId x = order[k];
    if (fast ? integral[x] <= 0 : weights_[x] <= 0) {
      throw InvalidMarketError("contract weights must be strictly positive");
    }
    if (k > 0 && (fast ? integral[x] == integral[order[k - 1]]
                       : weights_[x] == weights_[order[k - 1]])) {
      throw InvalidMarketError("contract weights must be pairwise distinct");
    }
    rank_[order[k]] = static_cast<int>(k);
  }
}

Weight WeightTable::Sum(std::span<const ContractId> contracts) const {
  Weight total = 0;
  for (ContractId x : contracts) total += weights_[x];
  return total;
}

Matching Matching::FromContracts(const Market& market,
                                 std::span<const ContractId> contracts) {
  Matching y(market.num_students());
  for (ContractId x : contracts) {
    StudentId s = market.student_of(x);
    if (y.held_[s] != kUnmatched) {
      throw InvalidMarketError("matching holds two contracts of student " +
                               market.student_name(s));
    }
    y.Assign(market, x);
  }
  return y;
}

void Matching::Assign(const Market& market, ContractId x) {
  if (!market.Acceptable(x)) {
    throw InvalidMarketError("contract unacceptable for student " +
                             market.student_name(market.student_of(x)));
  }
  held_[market.student_of(x)] = x;
}

std::vector<ContractId> Matching::Contracts() const {
  std::vector<ContractId> out;
  for (ContractId x : held_) {
    if (x != kUnmatched) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int Matching::Size() const {
  return static_cast<int>(
      std::count_if(held_.begin(), held_.end(),
                    [](ContractId x) { return x != kUnmatched; }));
}

AssignmentVector NuOf(const Market& market,
                      std::span<const ContractId> contracts) {
  AssignmentVector nu(market.num_colleges());
  for (ContractId x : contracts) ++nu[market.college_of(x)];
  return nu;
}

AssignmentVector NuOf(const Market& market, const Matching& matching) {
  AssignmentVector nu(market.num_colleges());
  for (StudentId s = 0; s < matching.num_students(); ++s) {
    if (matching.IsMatched(s)) ++nu[market.college_of(matching.Of(s))];
  }
  return nu;
}

std::optional<StudentId> Market::FindStudent(const std::string& name) const {
  auto it = std::find(student_names_.begin(), student_names_.end(), name);
  if (it == student_names_.end()) return std::nullopt;
  return static_cast<StudentId>(it - student_names_.begin());
}

std::optional<CollegeId> Market::FindCollege(const std::string& name) const {
  auto it = std::find(college_names_.begin(), college_names_.end(), name);
  if (it == college_names_.end()) return std::nullopt;
  return static_cast<CollegeId>(it - college_names_.begin());
}

std::optional<ContractId> Market::FindContract(StudentId s,
                                               CollegeId c) const {
  if (s < 0 || s >= num_students() || c < 0 || c >= num_colleges()) {
    return std::nullopt;
  }
  ContractId x = contract_index_[static_cast<size_t>(s) * num_colleges() + c];
  if (x == kUnmatched) return std::nullopt;
  return x;
}

bool Market::Prefers(StudentId s, ContractId a, ContractId b) const {
  auto rank = [&](ContractId x) {
    if (x == kUnmatched) return UnmatchedRank(s);
    if (x < 0 || x >= num_contracts() || student_of(x) != s) {
      throw std::invalid_argument("contract does not belong to student " +
                                  student_names_[s]);
    }
    return student_rank_[x];
  };
  return rank(a) < rank(b);
}

Market Market::WithStudentPreference(StudentId s,
                                     std::vector<ContractId> acceptable) const {
  Market copy = *this;
  std::vector<char> listed(contracts_.size(), 0);
  for (ContractId x : acceptable) {
    if (x < 0 || x >= num_contracts() || student_of(x) != s || listed[x]) {
      throw InvalidMarketError("reported order must list distinct contracts of " +
                               student_names_[s]);
    }
    listed[x] = 1;
  }
  std::vector<ContractId> all = acceptable;
  for (ContractId x : student_all_[s]) {
    if (!listed[x]) all.push_back(x);
  }
  for (size_t k = 0; k < all.size(); ++k) {
    copy.student_rank_[all[k]] = static_cast<int>(
        k < acceptable.size() ? k : k + 1);
  }
  copy.student_acceptable_[s] = std::move(acceptable);
  copy.student_all_[s] = std::move(all);
  return copy;
}

StudentId MarketBuilder::AddStudent(std::string name) {
  students_.push_back(std::move(name));
  student_pref_.emplace_back();
  return static_cast<StudentId>(students_.size() - 1);
}

CollegeId MarketBuilder::AddCollege(std::string name) {
  colleges_.push_back(std::move(name));
  college_pref_.emplace_back();
  return static_cast<CollegeId>(colleges_.size() - 1);
}

void MarketBuilder::AddStudents(int count, const std::string& prefix) {
  for (int i = 0; i < count; ++i) {
    AddStudent(prefix + std::to_string(students_.size() + 1));
  }
}

void MarketBuilder::AddColleges(int count, const std::string& prefix) {
  for (int i = 0; i < count; ++i) {
    AddCollege(prefix + std::to_string(colleges_.size() + 1));
  }
}

MarketBuilder& MarketBuilder::SetCollegePreference(
    CollegeId c, std::vector<StudentId> order) {
  college_pref_.at(c) = std::move(order);
  return *this;
}

MarketBuilder& MarketBuilder::SetStudentPreference(
    StudentId s, std::vector<CollegeId> order) {
  student_pref_.at(s) = std::move(order);
  return *this;
}

MarketBuilder& MarketBuilder::SetWeight(StudentId s, CollegeId c, Weight w) {
  weights_.emplace_back(s, c, std::move(w));
  return *this;
}

std::vector<Weight> DefaultWeights(
    int num_students, int num_colleges, int num_contracts,
    const std::vector<std::vector<ContractId>>& college_pref) {
  std::vector<Weight> w(num_contracts);
  const int64_t base = int64_t{num_students} * num_colleges;
  int64_t drawn = 0;
  size_t longest = 0;
  for (const auto& pref : college_pref) longest = std::max(longest, pref.size());
  for (size_t level = 0; level < longest; ++level) {
    for (const auto& pref : college_pref) {
      if (level < pref.size()) w[pref[level]] = Weight(base - drawn++);
    }
  }
  return w;
}

Market MarketBuilder::Build() const {
  const int n = static_cast<int>(students_.size());
  const int m = static_cast<int>(colleges_.size());
  Market market;
  market.student_names_ = students_;
  market.college_names_ = colleges_;
  market.contract_index_.assign(static_cast<size_t>(n) * m, kUnmatched);
  market.college_pref_.resize(m);
  market.student_acceptable_.resize(n);
  market.student_all_.resize(n);

  auto check_names = [](const std::vector<std::string>& names,
                        const char* what) {
    std::vector<std::string> sorted = names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvalidMarketError(std::string("duplicate ") + what + " name");
    }
  };
  check_names(students_, "student");
  check_names(colleges_, "college");

  for (CollegeId c = 0; c < m; ++c) {
    for (StudentId s : college_pref_[c]) {
      if (s < 0 || s >= n) {
        throw InvalidMarketError("college " + colleges_[c] +
                                 " ranks an unknown student");
      }
      size_t slot = static_cast<size_t>(s) * m + c;
      if (market.contract_index_[slot] != kUnmatched) {
        throw InvalidMarketError("college " + colleges_[c] + " ranks " +
                                 students_[s] + " twice");
      }
      ContractId x = static_cast<ContractId>(market.contracts_.size());
      market.contracts_.push_back({s, c});
      market.contract_index_[slot] = x;
      market.college_pref_[c].push_back(x);
    }
  }
  const int num_x = market.num_contracts();
  market.college_rank_.assign(num_x, 0);
  for (CollegeId c = 0; c < m; ++c) {
    for (size_t k = 0; k < market.college_pref_[c].size(); ++k) {
      market.college_rank_[market.college_pref_[c][k]] = static_cast<int>(k);
    }
  }

  market.student_rank_.assign(num_x, 0);
  for (StudentId s = 0; s < n; ++s) {
    std::vector<char> listed(m, 0);
    for (CollegeId c : student_pref_[s]) {
      if (c < 0 || c >= m || listed[c]) {
        throw InvalidMarketError("student " + students_[s] +
                                 " must rank distinct known colleges");
      }
      listed[c] = 1;
      ContractId x = market.contract_index_[static_cast<size_t>(s) * m + c];
      if (x == kUnmatched) {
        throw InvalidMarketError("student " + students_[s] + " ranks " +
                                 colleges_[c] +
                                 ", which does not find the student acceptable");
      }
      market.student_acceptable_[s].push_back(x);
    }
    auto& all = market.student_all_[s];
    all = market.student_acceptable_[s];
    for (CollegeId c = 0; c < m; ++c) {
      ContractId x = market.contract_index_[static_cast<size_t>(s) * m + c];
      if (x != kUnmatched && !listed[c]) all.push_back(x);
    }
    const size_t acc = market.student_acceptable_[s].size();
    for (size_t k = 0; k < all.size(); ++k) {
      market.student_rank_[all[k]] = static_cast<int>(k < acc ? k : k + 1);
    }
  }

  std::vector<Weight> w;
  if (weights_.empty()) {
    w = DefaultWeights(n, m, num_x, market.college_pref_);
  } else {
    w.assign(num_x, Weight(0));
    std::vector<char> seen(num_x, 0);
    for (const auto& [s, c, value] : weights_) {
      auto x = market.FindContract(s, c);
      if (!x) throw InvalidMarketError("weight given for a missing contract");
      if (seen[*x]) throw InvalidMarketError("contract weighted twice");
      seen[*x] = 1;
      w[*x] = value;
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
      throw InvalidMarketError("every contract needs a weight");
    }
  }
  market.weights_ = WeightTable(std::move(w));
  for (CollegeId c = 0; c < m; ++c) {
    const auto& pref = market.college_pref_[c];
    for (size_t k = 1; k < pref.size(); ++k) {
      if (!market.weights_.Heavier(pref[k - 1], pref[k])) {
        throw InvalidMarketError("weights do not respect the preference of " +
                                 colleges_[c]);
      }
    }
  }
  return market;
}

}  // namespace distmatch
