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

// Distributional constraints as an immutable expression tree over
// per-college count vectors. Leaves are upper bounds on sums of counts;
// inner nodes combine them by conjunction and disjunction, or rewrite the
// argument (shift by a fixed vector, truncate to a total size).

#ifndef DISTMATCH_CONSTRAINTS_H_
#define DISTMATCH_CONSTRAINTS_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "distmatch/market.h"

namespace distmatch {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SpecNode;

class FeasibilitySpec {
 public:
  enum class Kind {
    kCollegeCap,
    kRegionalCap,
    kLinearCap,
    kUpperBound,
    kAnd,
    kOr,
    kShift,
    kTruncate,
    kBlackBox,
  };

  // nu_i <= q.
  static FeasibilitySpec CollegeCap(int dimension, CollegeId i, int64_t q);
  // Sum of nu over a region <= q. Same semantics as LinearCap; kept apart so
  // descriptions and files keep the author's intent.
  static FeasibilitySpec RegionalCap(int dimension,
                                     std::vector<CollegeId> colleges,
                                     int64_t q);
  static FeasibilitySpec LinearCap(int dimension,
                                   std::vector<CollegeId> colleges, int64_t q);
  // nu <= q componentwise.
  static FeasibilitySpec UpperBound(std::vector<int64_t> q);
  static FeasibilitySpec And(std::vector<FeasibilitySpec> children);
  static FeasibilitySpec Or(std::vector<FeasibilitySpec> children);
  // An arbitrary predicate. Never compiled or structurally certified.
  static FeasibilitySpec BlackBox(
      int dimension, std::string name,
      std::function<bool(const AssignmentVector&)> predicate);

  int dimension() const { return dimension_; }
  Kind kind() const;
  const SpecNode& node() const { return *node_; }

  bool Evaluate(const AssignmentVector& nu) const;
  std::string Describe() const;

 private:
  friend FeasibilitySpec Shift(const FeasibilitySpec&, const AssignmentVector&);
  friend FeasibilitySpec Truncate(const FeasibilitySpec&, int64_t);
  FeasibilitySpec(int dimension, std::shared_ptr<const SpecNode> node)
      : dimension_(dimension), node_(std::move(node)) {}

  int dimension_ = 0;
  std::shared_ptr<const SpecNode> node_;
};

struct SpecNode {
  FeasibilitySpec::Kind kind;
  std::vector<CollegeId> colleges;  // cap leaves
  int64_t limit = 0;                // cap leaves; truncation size
  std::vector<int64_t> bounds;      // kUpperBound
  std::vector<FeasibilitySpec> children;
  std::vector<int> offset;          // kShift
  std::string name;                 // kBlackBox
  std::function<bool(const AssignmentVector&)> predicate;
};

// Throws DimensionError when nu has the wrong length.
bool Evaluate(const FeasibilitySpec& spec, const AssignmentVector& nu);

// nu -> spec(nu + offset). Shifts compose additively.
FeasibilitySpec Shift(const FeasibilitySpec& spec,
                      const AssignmentVector& offset);

// nu -> spec(nu) if |nu| <= d, infeasible otherwise. Throws
// std::invalid_argument for d < 1.
FeasibilitySpec Truncate(const FeasibilitySpec& spec, int64_t d);

// Feasible only at the zero vector.
FeasibilitySpec ZeroOnly(int dimension);

// ---------------------------------------------------------------------------
// Compiled form: a disjunction of branches, each a conjunction of caps
// sum_{i in S} nu_i <= limit on the argument vector. Shifts and truncations
// are folded into the limits. Branches infeasible even at zero are dropped.

struct Cap {
  std::vector<CollegeId> colleges;  // sorted, unique, non-empty
  int64_t limit;

  friend bool operator==(const Cap&, const Cap&) = default;
};

struct CapBranch {
  std::vector<Cap> caps;
};

struct CapSystem {
  int dimension = 0;
  std::vector<CapBranch> branches;

  bool Evaluate(const AssignmentVector& nu) const;
};

// Returns nullopt when the tree contains a black-box node.
std::optional<CapSystem> Compile(const FeasibilitySpec& spec);

// The conjunction of caps as a spec on the same argument.
FeasibilitySpec SpecFromBranch(int dimension, const CapBranch& branch);

// Maintains a count vector and answers "is current + e_i feasible?" in time
// proportional to the caps that touch college i. Falls back to full
// evaluation for black-box specs. Every feasibility query is counted.
class FeasibilityTracker {
 public:
  explicit FeasibilityTracker(const FeasibilitySpec& spec);

  int dimension() const { return counts_.dimension(); }
  const AssignmentVector& counts() const { return counts_; }
  int64_t Total() const { return total_; }

  void Reset();
  void Reset(const AssignmentVector& counts);
  bool CanAdd(CollegeId i) const;
  bool Feasible() const;
  void Add(CollegeId i);
  void Remove(CollegeId i);

  int64_t evaluations() const { return evaluations_; }
  bool compiled() const { return system_.has_value(); }

 private:
  void Recount();

  FeasibilitySpec spec_;
  std::optional<CapSystem> system_;
  // member_[b][i]: indices of caps of branch b that contain college i.
  std::vector<std::vector<std::vector<int>>> member_;
  std::vector<std::vector<int64_t>> sums_;
  std::vector<int> violated_;
  AssignmentVector counts_;
  int64_t total_ = 0;
  mutable int64_t evaluations_ = 0;
};

}  // namespace distmatch

#endif  // DISTMATCH_CONSTRAINTS_H_
