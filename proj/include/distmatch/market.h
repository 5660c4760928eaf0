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

// Domain types of a two-sided matching market: students, colleges, the
// contract set, both preference profiles and contract weights.

#ifndef DISTMATCH_MARKET_H_
#define DISTMATCH_MARKET_H_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace distmatch {

using StudentId = int;
using CollegeId = int;
using ContractId = int;

// Marks the "unmatched" outcome wherever a contract id is expected.
inline constexpr ContractId kUnmatched = -1;

using Weight = boost::multiprecision::cpp_rational;

class InvalidMarketError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Contract {
  StudentId student;
  CollegeId college;

  friend bool operator==(const Contract&, const Contract&) = default;
};

// Per-college student counts, nu(Y) for a contract set Y.
class AssignmentVector {
 public:
  AssignmentVector() = default;
  explicit AssignmentVector(int dimension) : counts_(dimension, 0) {}
  explicit AssignmentVector(std::vector<int> counts);

  static AssignmentVector Zero(int dimension) {
    return AssignmentVector(dimension);
  }
  static AssignmentVector Unit(int dimension, CollegeId i);

  int dimension() const { return static_cast<int>(counts_.size()); }
  int operator[](CollegeId i) const { return counts_[i]; }
  int& operator[](CollegeId i) { return counts_[i]; }
  const std::vector<int>& counts() const { return counts_; }

  // |nu|, the L1 norm.
  int64_t Total() const;

  AssignmentVector& operator+=(const AssignmentVector& other);
  AssignmentVector& operator-=(const AssignmentVector& other);
  friend AssignmentVector operator+(AssignmentVector a,
                                    const AssignmentVector& b) {
    return a += b;
  }
  friend AssignmentVector operator-(AssignmentVector a,
                                    const AssignmentVector& b) {
    return a -= b;
  }
  friend bool operator==(const AssignmentVector&,
                         const AssignmentVector&) = default;

  // Componentwise <=.
  bool Dominated(const AssignmentVector& other) const;
  std::string ToString() const;

 private:
  std::vector<int> counts_;
};

// A common strict order over all students.
class MasterList {
 public:
  MasterList() = default;
  // Throws InvalidMarketError unless `order` is a permutation of 0..n-1.
  MasterList(std::vector<StudentId> order, int num_students);

  static MasterList Identity(int num_students);

  const std::vector<StudentId>& order() const { return order_; }
  int size() const { return static_cast<int>(order_.size()); }
  // Position of s in the list; smaller is higher priority.
  int Position(StudentId s) const { return position_[s]; }
  bool Precedes(StudentId a, StudentId b) const {
    return position_[a] < position_[b];
  }

 private:
  std::vector<StudentId> order_;
  std::vector<int> position_;
};

// Strictly positive, pairwise distinct contract weights that respect every
// college's preference.
class WeightTable {
 public:
  WeightTable() = default;
  explicit WeightTable(std::vector<Weight> weights);

  const Weight& operator[](ContractId x) const { return weights_[x]; }
  int size() const { return static_cast<int>(weights_.size()); }
  // 0 for the heaviest contract, size()-1 for the lightest.
  int Rank(ContractId x) const { return rank_[x]; }
  bool Heavier(ContractId a, ContractId b) const { return rank_[a] < rank_[b]; }
  Weight Sum(std::span<const ContractId> contracts) const;

 private:
  std::vector<Weight> weights_;
  std::vector<int> rank_;
};

class Market;

// A set of contracts with at most one per student, each acceptable for its
// student. Stored as the contract held by each student.
class Matching {
 public:
  Matching() = default;
  explicit Matching(int num_students) : held_(num_students, kUnmatched) {}

  // Throws InvalidMarketError if two contracts share a student or a contract
  // is unacceptable for its student.
  static Matching FromContracts(const Market& market,
                                std::span<const ContractId> contracts);

  int num_students() const { return static_cast<int>(held_.size()); }
  ContractId Of(StudentId s) const { return held_[s]; }
  bool IsMatched(StudentId s) const { return held_[s] != kUnmatched; }
  // Assigns x to its student, replacing whatever the student held.
  void Assign(const Market& market, ContractId x);
  void Unassign(StudentId s) { held_[s] = kUnmatched; }
  // Sorted contract ids.
  std::vector<ContractId> Contracts() const;
  int Size() const;

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  std::vector<ContractId> held_;
};

// nu(Y): number of contracts at each college.
AssignmentVector NuOf(const Market& market,
                      std::span<const ContractId> contracts);
AssignmentVector NuOf(const Market& market, const Matching& matching);

class Market {
 public:
  int num_students() const { return static_cast<int>(student_names_.size()); }
  int num_colleges() const { return static_cast<int>(college_names_.size()); }
  int num_contracts() const { return static_cast<int>(contracts_.size()); }

  const std::string& student_name(StudentId s) const {
    return student_names_[s];
  }
  const std::string& college_name(CollegeId c) const {
    return college_names_[c];
  }
  std::optional<StudentId> FindStudent(const std::string& name) const;
  std::optional<CollegeId> FindCollege(const std::string& name) const;

  const Contract& contract(ContractId x) const { return contracts_[x]; }
  StudentId student_of(ContractId x) const { return contracts_[x].student; }
  CollegeId college_of(ContractId x) const { return contracts_[x].college; }
  std::optional<ContractId> FindContract(StudentId s, CollegeId c) const;

  // Acceptable contracts of s, best first.
  std::span<const ContractId> StudentPreference(StudentId s) const {
    return student_acceptable_[s];
  }
  // All of X_s: the acceptable prefix followed by contracts ranked below
  // the unmatched outcome.
  std::span<const ContractId> ContractsOf(StudentId s) const {
    return student_all_[s];
  }
  // X_c ordered by the college's preference, best first.
  std::span<const ContractId> CollegePreference(CollegeId c) const {
    return college_pref_[c];
  }

  // Position in the student's order; the unmatched outcome sits at
  // StudentPreference(s).size().
  int StudentRank(ContractId x) const { return student_rank_[x]; }
  int UnmatchedRank(StudentId s) const {
    return static_cast<int>(student_acceptable_[s].size());
  }
  int CollegeRank(ContractId x) const { return college_rank_[x]; }
  bool Acceptable(ContractId x) const {
    return student_rank_[x] < UnmatchedRank(student_of(x));
  }

  // True iff a strictly precedes b in s's order. Either side may be
  // kUnmatched. Throws std::invalid_argument for contracts not of s.
  bool Prefers(StudentId s, ContractId a, ContractId b) const;

  const WeightTable& weights() const { return weights_; }

  // Copy of this market in which s reports `acceptable` (best first) and
  // every other contract of s is ranked below the unmatched outcome.
  Market WithStudentPreference(StudentId s,
                               std::vector<ContractId> acceptable) const;

 private:
  friend class MarketBuilder;
  Market() = default;

  std::vector<std::string> student_names_;
  std::vector<std::string> college_names_;
  std::vector<Contract> contracts_;
  std::vector<ContractId> contract_index_;  // n*m, kUnmatched if absent
  std::vector<std::vector<ContractId>> student_acceptable_;
  std::vector<std::vector<ContractId>> student_all_;
  std::vector<std::vector<ContractId>> college_pref_;
  std::vector<int> student_rank_;
  std::vector<int> college_rank_;
  WeightTable weights_;
};

// Builds and validates a Market. The contract set is the union of the
// college preference lists; every student order may only name colleges
// that list the student.
class MarketBuilder {
 public:
  StudentId AddStudent(std::string name);
  CollegeId AddCollege(std::string name);
  void AddStudents(int count, const std::string& prefix = "s");
  void AddColleges(int count, const std::string& prefix = "c");

  // Students acceptable to c, best first.
  MarketBuilder& SetCollegePreference(CollegeId c,
                                      std::vector<StudentId> order);
  // Colleges acceptable to s, best first. Contracts of s not named here are
  // unacceptable to s.
  MarketBuilder& SetStudentPreference(StudentId s,
                                      std::vector<CollegeId> order);
  MarketBuilder& SetWeight(StudentId s, CollegeId c, Weight w);

  // Throws InvalidMarketError on any violated invariant. Contracts without
  // an explicit weight fall back to DefaultWeights when no weight at all was
  // set; mixing explicit and missing weights is an error.
  Market Build() const;

 private:
  std::vector<std::string> students_;
  std::vector<std::string> colleges_;
  std::vector<std::vector<StudentId>> college_pref_;
  std::vector<std::vector<CollegeId>> student_pref_;
  std::vector<std::tuple<StudentId, CollegeId, Weight>> weights_;
};

// Round-robin over colleges in index order, each contributing its next
// most preferred contract; the k-th contract drawn (k from 0) gets weight
// n*m - k. With identical college orders this ranks all contracts of the
// top student above those of the next one.
std::vector<Weight> DefaultWeights(
    int num_students, int num_colleges, int num_contracts,
    const std::vector<std::vector<ContractId>>& college_pref);

}  // namespace distmatch

#endif  // DISTMATCH_MARKET_H_
