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

#include "distmatch/constraints.h"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

namespace distmatch {
namespace {

std::vector<CollegeId> NormalizeSet(int dimension,
                                    std::vector<CollegeId> colleges) {
  if (colleges.empty()) {
    throw std::invalid_argument("cap needs a non-empty college set");
  }
  std::sort(colleges.begin(), colleges.end());
  colleges.erase(std::unique(colleges.begin(), colleges.end()),
                 colleges.end());
  if (colleges.front() < 0 || colleges.back() >= dimension) {
    throw std::invalid_argument("cap college index out of range");
  }
  return colleges;
}

FeasibilitySpec::Kind KindOf(const SpecNode& node) { return node.kind; }

int64_t SumOver(const std::vector<CollegeId>& colleges,
                const std::vector<int>& v) {
  int64_t s = 0;
  for (CollegeId i : colleges) s += v[i];
  return s;
}

bool EvalNode(const FeasibilitySpec& spec, const std::vector<int>& nu);

bool EvalNode(const FeasibilitySpec& spec, const std::vector<int>& nu) {
  const SpecNode& node = spec.node();
  switch (node.kind) {
    case FeasibilitySpec::Kind::kCollegeCap:
    case FeasibilitySpec::Kind::kRegionalCap:
    case FeasibilitySpec::Kind::kLinearCap:
      return SumOver(node.colleges, nu) <= node.limit;
    case FeasibilitySpec::Kind::kUpperBound:
      for (size_t i = 0; i < nu.size(); ++i) {
        if (nu[i] > node.bounds[i]) return false;
      }
      return true;
    case FeasibilitySpec::Kind::kAnd:
      for (const auto& child : node.children) {
        if (!EvalNode(child, nu)) return false;
      }
      return true;
    case FeasibilitySpec::Kind::kOr:
      for (const auto& child : node.children) {
        if (EvalNode(child, nu)) return true;
      }
      return false;
    case FeasibilitySpec::Kind::kShift: {
      std::vector<int> shifted = nu;
      for (size_t i = 0; i < nu.size(); ++i) shifted[i] += node.offset[i];
      return EvalNode(node.children.front(), shifted);
    }
    case FeasibilitySpec::Kind::kTruncate: {
      int64_t total = 0;
      for (int c : nu) total += c;
      return total <= node.limit && EvalNode(node.children.front(), nu);
    }
    case FeasibilitySpec::Kind::kBlackBox:
      return node.predicate(AssignmentVector(nu));
  }
  return false;
}

std::string SetToString(const std::vector<CollegeId>& colleges) {
  std::ostringstream out;
  out << '{';
  for (size_t k = 0; k < colleges.size(); ++k) {
    if (k) out << ',';
    out << 'c' << colleges[k] + 1;
  }
  out << '}';
  return out.str();
}

void DescribeNode(const FeasibilitySpec& spec, std::ostringstream& out) {
  const SpecNode& node = spec.node();
  switch (node.kind) {
    case FeasibilitySpec::Kind::kCollegeCap:
      out << "cap(c" << node.colleges.front() + 1 << "<=" << node.limit << ")";
      return;
    case FeasibilitySpec::Kind::kRegionalCap:
      out << "regional(" << SetToString(node.colleges) << "<=" << node.limit
          << ")";
      return;
    case FeasibilitySpec::Kind::kLinearCap:
      out << "linear(" << SetToString(node.colleges) << "<=" << node.limit
          << ")";
      return;
    case FeasibilitySpec::Kind::kUpperBound:
      out << "upper_bound(";
      for (size_t i = 0; i < node.bounds.size(); ++i) {
        if (i) out << ',';
        out << node.bounds[i];
      }
      out << ")";
      return;
    case FeasibilitySpec::Kind::kAnd:
    case FeasibilitySpec::Kind::kOr:
      out << (node.kind == FeasibilitySpec::Kind::kAnd ? "and(" : "or(");
      for (size_t k = 0; k < node.children.size(); ++k) {
        if (k) out << ", ";
        DescribeNode(node.children[k], out);
      }
      out << ")";
      return;
    case FeasibilitySpec::Kind::kShift:
      out << "shift(" << AssignmentVector(node.offset).ToString() << ", ";
      DescribeNode(node.children.front(), out);
      out << ")";
      return;
    case FeasibilitySpec::Kind::kTruncate:
      out << "truncate(" << node.limit << ", ";
      DescribeNode(node.children.front(), out);
      out << ")";
      return;
    case FeasibilitySpec::Kind::kBlackBox:
      out << "black_box(" << node.name << ")";
      return;
  }
}

void CheckDimension(int expected, int actual) {
  if (expected != actual) {
    throw DimensionError("expected a vector of dimension " +
                         std::to_string(expected) + ", got " +
                         std::to_string(actual));
  }
}

// Merges caps over identical sets, keeping the tightest limit.
void Canonicalize(CapBranch& branch) {
  std::map<std::vector<CollegeId>, int64_t> tightest;
  for (auto& cap : branch.caps) {
    auto [it, inserted] = tightest.emplace(cap.colleges, cap.limit);
    if (!inserted) it->second = std::min(it->second, cap.limit);
  }
  branch.caps.clear();
  for (auto& [colleges, limit] : tightest) {
    branch.caps.push_back({colleges, limit});
  }
}

bool Dead(const CapBranch& branch) {
  return std::any_of(branch.caps.begin(), branch.caps.end(),
                     [](const Cap& cap) { return cap.limit < 0; });
}

// DNF of `spec` evaluated at nu + offset, expressed on nu.
std::optional<std::vector<CapBranch>> CompileNode(const FeasibilitySpec& spec,
                                                  const std::vector<int>& offset) {
  const SpecNode& node = spec.node();
  using K = FeasibilitySpec::Kind;
  switch (node.kind) {
    case K::kCollegeCap:
    case K::kRegionalCap:
    case K::kLinearCap: {
      CapBranch b;
      b.caps.push_back({node.colleges, node.limit - SumOver(node.colleges, offset)});
      return std::vector<CapBranch>{b};
    }
    case K::kUpperBound: {
      CapBranch b;
      for (size_t i = 0; i < node.bounds.size(); ++i) {
        b.caps.push_back({{static_cast<CollegeId>(i)},
                          node.bounds[i] - offset[i]});
      }
      return std::vector<CapBranch>{b};
    }
    case K::kAnd: {
      std::vector<CapBranch> acc{CapBranch{}};
      for (const auto& child : node.children) {
        auto sub = CompileNode(child, offset);
        if (!sub) return std::nullopt;
        std::vector<CapBranch> next;
        for (const auto& a : acc) {
          for (const auto& b : *sub) {
            if (Dead(b)) continue;
            CapBranch merged = a;
            merged.caps.insert(merged.caps.end(), b.caps.begin(), b.caps.end());
            next.push_back(std::move(merged));
          }
        }
        acc = std::move(next);
      }
      return acc;
    }
    case K::kOr: {
      std::vector<CapBranch> acc;
      for (const auto& child : node.children) {
        auto sub = CompileNode(child, offset);
        if (!sub) return std::nullopt;
        acc.insert(acc.end(), sub->begin(), sub->end());
      }
      return acc;
    }
    case K::kShift: {
      std::vector<int> shifted = offset;
      for (size_t i = 0; i < offset.size(); ++i) shifted[i] += node.offset[i];
      return CompileNode(node.children.front(), shifted);
    }
    case K::kTruncate: {
      auto sub = CompileNode(node.children.front(), offset);
      if (!sub) return std::nullopt;
      std::vector<CollegeId> all(offset.size());
      int64_t shifted_total = 0;
      for (size_t i = 0; i < all.size(); ++i) {
        all[i] = static_cast<CollegeId>(i);
        shifted_total += offset[i];
      }
      for (auto& b : *sub) {
        b.caps.push_back({all, node.limit - shifted_total});
      }
      return sub;
    }
    case K::kBlackBox:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

FeasibilitySpec FeasibilitySpec::CollegeCap(int dimension, CollegeId i,
                                            int64_t q) {
  if (q < 0) throw std::invalid_argument("cap must be >= 0");
  auto node = std::make_shared<SpecNode>();
  node->kind = Kind::kCollegeCap;
  node->colleges = NormalizeSet(dimension, {i});
  node->limit = q;
  return FeasibilitySpec(dimension, std::move(node));
}

FeasibilitySpec FeasibilitySpec::RegionalCap(int dimension,
                                             std::vector<CollegeId> colleges,
                                             int64_t q) {
  if (q < 0) throw std::invalid_argument("cap must be >= 0");
  auto node = std::make_shared<SpecNode>();
  node->kind = Kind::kRegionalCap;
  node->colleges = NormalizeSet(dimension, std::move(colleges));
  node->limit = q;
  return FeasibilitySpec(dimension, std::move(node));
}

FeasibilitySpec FeasibilitySpec::LinearCap(int dimension,
                                           std::vector<CollegeId> colleges,
                                           int64_t q) {
  if (q < 0) throw std::invalid_argument("cap must be >= 0");
  auto node = std::make_shared<SpecNode>();
  node->kind = Kind::kLinearCap;
  node->colleges = NormalizeSet(dimension, std::move(colleges));
  node->limit = q;
  return FeasibilitySpec(dimension, std::move(node));
}

FeasibilitySpec FeasibilitySpec::UpperBound(std::vector<int64_t> q) {
  for (int64_t b : q) {
    if (b < 0) throw std::invalid_argument("cap must be >= 0");
  }
  auto node = std::make_shared<SpecNode>();
  node->kind = Kind::kUpperBound;
  const int dimension = static_cast<int>(q.size());
  node->bounds = std::move(q);
  return FeasibilitySpec(dimension, std::move(node));
}

FeasibilitySpec FeasibilitySpec::And(std::vector<FeasibilitySpec> children) {
  if (children.empty()) throw std::invalid_argument("empty conjunction");
  const int dimension = children.front().dimension();
  for (const auto& c : children) CheckDimension(dimension, c.dimension());
  auto node = std::make_shared<SpecNode>();
  node->kind = Kind::kAnd;
  node->children = std::move(children);
  return FeasibilitySpec(dimension, std::move(node));
}

FeasibilitySpec FeasibilitySpec::Or(std::vector<FeasibilitySpec> children) {
  if (children.empty()) throw std::invalid_argument("empty disjunction");
  const int dimension = children.front().dimension();
  for (const auto& c : children) CheckDimension(dimension, c.dimension());
  auto node = std::make_shared<SpecNode>();
  node->kind = Kind::kOr;
  node->children = std::move(children);
  return FeasibilitySpec(dimension, std::move(node));
}

FeasibilitySpec FeasibilitySpec::BlackBox(
    int dimension, std::string name,
    std::function<bool(const AssignmentVector&)> predicate) {
  auto node = std::make_shared<SpecNode>();
  node->kind = Kind::kBlackBox;
  node->name = std::move(name);
  node->predicate = std::move(predicate);
  return FeasibilitySpec(dimension, std::move(node));
}

FeasibilitySpec::Kind FeasibilitySpec::kind() const { return KindOf(*node_); }

bool FeasibilitySpec::Evaluate(const AssignmentVector& nu) const {
  CheckDimension(dimension_, nu.dimension());
  return EvalNode(*this, nu.counts());
}

std::string FeasibilitySpec::Describe() const {
  std::ostringstream out;
  DescribeNode(*this, out);
  return out.str();
}

bool Evaluate(const FeasibilitySpec& spec, const AssignmentVector& nu) {
  return spec.Evaluate(nu);
}

FeasibilitySpec Shift(const FeasibilitySpec& spec,
                      const AssignmentVector& offset) {
  CheckDimension(spec.dimension(), offset.dimension());
  const SpecNode& inner = spec.node();
  auto node = std::make_shared<SpecNode>();
  node->kind = FeasibilitySpec::Kind::kShift;
  if (inner.kind == FeasibilitySpec::Kind::kShift) {
    node->offset = inner.offset;
    for (int i = 0; i < offset.dimension(); ++i) node->offset[i] += offset[i];
    node->children = inner.children;
  } else {
    node->offset = offset.counts();
    node->children = {spec};
  }
  return FeasibilitySpec(spec.dimension(), std::move(node));
}

FeasibilitySpec Truncate(const FeasibilitySpec& spec, int64_t d) {
  if (d < 1) throw std::invalid_argument("truncation size must be >= 1");
  auto node = std::make_shared<SpecNode>();
  node->kind = FeasibilitySpec::Kind::kTruncate;
  node->limit = d;
  node->children = {spec};
  return FeasibilitySpec(spec.dimension(), std::move(node));
}

FeasibilitySpec ZeroOnly(int dimension) {
  return FeasibilitySpec::UpperBound(std::vector<int64_t>(dimension, 0));
}

bool CapSystem::Evaluate(const AssignmentVector& nu) const {
  CheckDimension(dimension, nu.dimension());
  for (const auto& branch : branches) {
    bool ok = true;
    for (const auto& cap : branch.caps) {
      if (SumOver(cap.colleges, nu.counts()) > cap.limit) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

std::optional<CapSystem> Compile(const FeasibilitySpec& spec) {
  std::vector<int> offset(spec.dimension(), 0);
  auto branches = CompileNode(spec, offset);
  if (!branches) return std::nullopt;
  CapSystem system;
  system.dimension = spec.dimension();
  for (auto& b : *branches) {
    Canonicalize(b);
    if (!Dead(b)) system.branches.push_back(std::move(b));
  }
  return system;
}

FeasibilitySpec SpecFromBranch(int dimension, const CapBranch& branch) {
  std::vector<FeasibilitySpec> caps;
  for (const auto& cap : branch.caps) {
    if (cap.limit < 0) return ZeroOnly(dimension);  // unreachable for live
    caps.push_back(FeasibilitySpec::LinearCap(dimension, cap.colleges, cap.limit));
  }
  if (caps.empty()) {
    // No constraint at all; a cap that can never bind keeps the tree valid.
    std::vector<CollegeId> all(dimension);
    for (int i = 0; i < dimension; ++i) all[i] = i;
    caps.push_back(FeasibilitySpec::LinearCap(
        dimension, all, std::numeric_limits<int64_t>::max() / 4));
  }
  if (caps.size() == 1) return caps.front();
  return FeasibilitySpec::And(std::move(caps));
}

FeasibilityTracker::FeasibilityTracker(const FeasibilitySpec& spec)
    : spec_(spec), system_(Compile(spec)), counts_(spec.dimension()) {
  if (system_) {
    const int m = spec.dimension();
    member_.resize(system_->branches.size(),
                   std::vector<std::vector<int>>(m));
    for (size_t b = 0; b < system_->branches.size(); ++b) {
      const auto& caps = system_->branches[b].caps;
      for (size_t k = 0; k < caps.size(); ++k) {
        for (CollegeId i : caps[k].colleges) {
          member_[b][i].push_back(static_cast<int>(k));
        }
      }
    }
  }
  Reset();
}

void FeasibilityTracker::Reset() { Reset(AssignmentVector(dimension())); }

void FeasibilityTracker::Reset(const AssignmentVector& counts) {
  CheckDimension(dimension(), counts.dimension());
  counts_ = counts;
  total_ = counts.Total();
  Recount();
}

void FeasibilityTracker::Recount() {
  if (!system_) return;
  sums_.assign(system_->branches.size(), {});
  violated_.assign(system_->branches.size(), 0);
  for (size_t b = 0; b < system_->branches.size(); ++b) {
    const auto& caps = system_->branches[b].caps;
    sums_[b].resize(caps.size());
    for (size_t k = 0; k < caps.size(); ++k) {
      sums_[b][k] = SumOver(caps[k].colleges, counts_.counts());
      if (sums_[b][k] > caps[k].limit) ++violated_[b];
    }
  }
}

bool FeasibilityTracker::CanAdd(CollegeId i) const {
  ++evaluations_;
  if (!system_) {
    AssignmentVector next = counts_;
    ++next[i];
    return spec_.Evaluate(next);
  }
  for (size_t b = 0; b < member_.size(); ++b) {
    if (violated_[b]) continue;
    const auto& caps = system_->branches[b].caps;
    bool ok = true;
    for (int k : member_[b][i]) {
      if (sums_[b][k] + 1 > caps[k].limit) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

bool FeasibilityTracker::Feasible() const {
  ++evaluations_;
  if (!system_) return spec_.Evaluate(counts_);
  return std::find(violated_.begin(), violated_.end(), 0) != violated_.end();
}

void FeasibilityTracker::Add(CollegeId i) {
  ++counts_[i];
  ++total_;
  if (!system_) return;
  for (size_t b = 0; b < member_.size(); ++b) {
    const auto& caps = system_->branches[b].caps;
    for (int k : member_[b][i]) {
      if (++sums_[b][k] == caps[k].limit + 1) ++violated_[b];
    }
  }
}

void FeasibilityTracker::Remove(CollegeId i) {
  if (counts_[i] == 0) throw std::logic_error("removing from an empty college");
  --counts_[i];
  --total_;
  if (!system_) return;
  for (size_t b = 0; b < member_.size(); ++b) {
    const auto& caps = system_->branches[b].caps;
    for (int k : member_[b][i]) {
      if (sums_[b][k]-- == caps[k].limit + 1) --violated_[b];
    }
  }
}

}  // namespace distmatch
