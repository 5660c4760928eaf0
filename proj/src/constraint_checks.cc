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

#include "distmatch/constraint_checks.h"

#include <algorithm>
#include <map>

namespace distmatch {
namespace {

// Mixed-radix enumeration of the box 0..box_i.
class BoxIndex {
 public:
  BoxIndex(const AssignmentVector& box, int64_t cap) : box_(box) {
    size_ = 1;
    for (int i = 0; i < box.dimension(); ++i) {
      if (box[i] < 0) throw std::invalid_argument("box entries must be >= 0");
      const int64_t radix = box[i] + 1;
      if (size_ > cap / radix) {
        size_ = -1;
        return;
      }
      size_ *= radix;
    }
    if (size_ > cap) size_ = -1;
  }

  // -1 when the box exceeds the cap.
  int64_t size() const { return size_; }

  AssignmentVector Decode(int64_t index) const {
    AssignmentVector v(box_.dimension());
    for (int i = 0; i < box_.dimension(); ++i) {
      const int64_t radix = box_[i] + 1;
      v[i] = static_cast<int>(index % radix);
      index /= radix;
    }
    return v;
  }

  // -1 when v lies outside the box.
  int64_t Encode(const AssignmentVector& v) const {
    int64_t index = 0;
    int64_t stride = 1;
    for (int i = 0; i < box_.dimension(); ++i) {
      if (v[i] < 0 || v[i] > box_[i]) return -1;
      index += stride * v[i];
      stride *= box_[i] + 1;
    }
    return index;
  }

 private:
  AssignmentVector box_;
  int64_t size_ = 0;
};

std::vector<char> FeasibilityTable(const FeasibilitySpec& spec,
                                   const BoxIndex& index) {
  std::vector<char> table(index.size());
  for (int64_t k = 0; k < index.size(); ++k) {
    table[k] = spec.Evaluate(index.Decode(k)) ? 1 : 0;
  }
  return table;
}

using Bitset = std::vector<uint64_t>;

Bitset ToBits(const std::vector<CollegeId>& set, int dimension) {
  Bitset bits((dimension + 63) / 64, 0);
  for (CollegeId i : set) bits[i / 64] |= uint64_t{1} << (i % 64);
  return bits;
}

// Laminar: disjoint or nested.
bool Compatible(const Bitset& a, const Bitset& b) {
  bool meet = false, a_in_b = true, b_in_a = true;
  for (size_t w = 0; w < a.size(); ++w) {
    if (a[w] & b[w]) meet = true;
    if (a[w] & ~b[w]) a_in_b = false;
    if (b[w] & ~a[w]) b_in_a = false;
  }
  return !meet || a_in_b || b_in_a;
}

}  // namespace

const char* VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kYes:
      return "yes";
    case Verdict::kNo:
      return "no";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "?";
}

HereditaryResult CheckHereditary(const FeasibilitySpec& spec,
                                 const AssignmentVector& box, int64_t cap) {
  if (box.dimension() != spec.dimension()) {
    throw DimensionError("box dimension does not match the spec");
  }
  HereditaryResult result;
  const int m = spec.dimension();
  if (!spec.Evaluate(AssignmentVector(m))) {
    result.verdict = Verdict::kNo;
    result.witness.emplace(AssignmentVector(m), AssignmentVector(m));
    return result;
  }
  BoxIndex index(box, cap);
  if (index.size() < 0) return result;
  const std::vector<char> table = FeasibilityTable(spec, index);
  result.enumerated = index.size();
  for (int64_t k = 0; k < index.size(); ++k) {
    if (!table[k]) continue;
    const AssignmentVector nu = index.Decode(k);
    for (int i = 0; i < m; ++i) {
      if (nu[i] == 0) continue;
      AssignmentVector below = nu;
      --below[i];
      if (!table[index.Encode(below)]) {
        result.verdict = Verdict::kNo;
        result.witness.emplace(nu, below);
        return result;
      }
    }
  }
  result.verdict = Verdict::kYes;
  return result;
}

bool ExchangeHolds(const FeasibilitySpec& spec, const AssignmentVector& nu,
                   const AssignmentVector& nu_prime, CollegeId i) {
  const int m = spec.dimension();
  AssignmentVector a = nu;
  AssignmentVector b = nu_prime;
  --a[i];
  ++b[i];
  if (spec.Evaluate(a) && spec.Evaluate(b)) return true;  // j = 0
  for (int j = 0; j < m; ++j) {
    if (nu[j] >= nu_prime[j]) continue;
    ++a[j];
    --b[j];
    const bool ok = spec.Evaluate(a) && spec.Evaluate(b);
    --a[j];
    ++b[j];
    if (ok) return true;
  }
  return false;
}

ConvexityResult CheckMNaturalConvex(const FeasibilitySpec& spec,
                                    const AssignmentVector& box, int64_t cap) {
  if (box.dimension() != spec.dimension()) {
    throw DimensionError("box dimension does not match the spec");
  }
  ConvexityResult result;
  BoxIndex index(box, cap);
  if (index.size() < 0) return result;
  const std::vector<char> table = FeasibilityTable(spec, index);
  std::vector<int64_t> feasible;
  for (int64_t k = 0; k < index.size(); ++k) {
    if (table[k]) feasible.push_back(k);
  }
  // The pair loop is quadratic; hold it to the square of the cap.
  const double pairs = static_cast<double>(feasible.size()) * feasible.size();
  if (pairs > static_cast<double>(cap) * 250.0) return result;
  result.enumerated = index.size();

  const int m = spec.dimension();
  auto member = [&](const AssignmentVector& v) {
    const int64_t k = index.Encode(v);
    return k >= 0 ? table[k] != 0 : spec.Evaluate(v);
  };
  std::vector<AssignmentVector> vectors;
  vectors.reserve(feasible.size());
  for (int64_t k : feasible) vectors.push_back(index.Decode(k));

  for (const auto& nu : vectors) {
    for (const auto& nu_prime : vectors) {
      for (int i = 0; i < m; ++i) {
        if (nu[i] <= nu_prime[i]) continue;
        AssignmentVector a = nu;
        AssignmentVector b = nu_prime;
        --a[i];
        ++b[i];
        bool ok = member(a) && member(b);
        for (int j = 0; j < m && !ok; ++j) {
          if (nu[j] >= nu_prime[j]) continue;
          ++a[j];
          --b[j];
          ok = member(a) && member(b);
          --a[j];
          ++b[j];
        }
        if (!ok) {
          result.verdict = Verdict::kNo;
          result.witness = ExchangeViolation{nu, nu_prime, i};
          return result;
        }
      }
    }
  }
  result.verdict = Verdict::kYes;
  return result;
}

int64_t MaxQuota(const FeasibilitySpec& spec, CollegeId i, int64_t bound) {
  if (i < 0 || i >= spec.dimension()) {
    throw DimensionError("college index out of range");
  }
  auto feasible_at = [&](int64_t t) {
    AssignmentVector v(spec.dimension());
    v[i] = static_cast<int>(t);
    return spec.Evaluate(v);
  };
  if (bound <= 0 || !feasible_at(0)) return 0;
  int64_t lo = 0, hi = bound;  // feasible_at(lo) holds
  while (lo < hi) {
    const int64_t mid = lo + (hi - lo + 1) / 2;
    if (feasible_at(mid)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

bool IsLaminar(const std::vector<std::vector<CollegeId>>& sets,
               int dimension) {
  std::vector<Bitset> bits;
  for (const auto& s : sets) {
    if (s.size() > 1) bits.push_back(ToBits(s, dimension));
  }
  for (size_t a = 0; a < bits.size(); ++a) {
    for (size_t b = a + 1; b < bits.size(); ++b) {
      if (!Compatible(bits[a], bits[b])) return false;
    }
  }
  return true;
}

int64_t LaminarTruncationBound(const CapBranch& branch, int dimension) {
  int64_t total_limit = kUnbounded;
  std::vector<char> zero(dimension, 0);
  for (const auto& cap : branch.caps) {
    if (static_cast<int>(cap.colleges.size()) == dimension) {
      total_limit = std::min(total_limit, cap.limit);
    }
    if (cap.limit <= 0) {
      for (CollegeId i : cap.colleges) zero[i] = 1;
    }
  }
  // Non-trivial caps that can still bind, grouped by limit.
  std::map<int64_t, std::vector<Bitset>> by_limit;
  for (const auto& cap : branch.caps) {
    if (cap.limit <= 0 || cap.limit >= total_limit) continue;
    std::vector<CollegeId> reduced;
    for (CollegeId i : cap.colleges) {
      if (!zero[i]) reduced.push_back(i);
    }
    if (reduced.size() <= 1) continue;
    by_limit[cap.limit].push_back(ToBits(reduced, dimension));
  }
  std::vector<Bitset> accepted;
  for (auto& [limit, group] : by_limit) {
    for (size_t a = 0; a < group.size(); ++a) {
      for (const auto& other : accepted) {
        if (!Compatible(group[a], other)) return limit;
      }
      for (size_t b = a + 1; b < group.size(); ++b) {
        if (!Compatible(group[a], group[b])) return limit;
      }
    }
    accepted.insert(accepted.end(), group.begin(), group.end());
  }
  return kUnbounded;
}

bool StructurallyMNatural(const FeasibilitySpec& spec) {
  auto system = Compile(spec);
  if (!system || system->branches.size() > 1) return false;
  if (system->branches.empty()) return true;
  return LaminarTruncationBound(system->branches.front(), spec.dimension()) ==
         kUnbounded;
}

}  // namespace distmatch
