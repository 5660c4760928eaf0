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


#include <algorithm>

#include <doctest.h>

#include "distmatch/audit.h"
#include "distmatch/mechanisms.h"
#include "distmatch/msgda.h"
#include "distmatch/toy_example.h"
#include "test_support.h"

namespace distmatch {
namespace {

// Two colleges with base caps 10 and three flexible seats for either one.
FeasibilitySpec Flexible() {
  return FeasibilitySpec::Or({FeasibilitySpec::UpperBound({13, 10}),
                              FeasibilitySpec::UpperBound({10, 13})});
}

TEST_SUITE("msgda") {

TEST_CASE("toy run with the linear-cap rule") {
  const ToyExample toy = MakeToyExample();
  const MsgdaResult r = Msgda(toy.market, toy.order, toy.spec,
                              DStrategy::LinearCapMax());
  const std::set<std::pair<int, int>> expected = {
      {1, 4}, {2, 1}, {3, 1}, {4, 1}, {5, 6}, {6, 6}};
  CHECK(testing::Pairs(toy.market, r.matching) == expected);
  REQUIRE(r.trace.stages.size() == 2);
  CHECK(r.trace.stages[0].d == 4);
  CHECK(r.trace.stages[1].d == 2);
  CHECK(Msgda(toy.market, toy.order, toy.spec).matching == r.matching);
}

TEST_CASE("d = 1 everywhere reproduces SD") {
  const ToyExample toy = MakeToyExample();
  CHECK(Msgda(toy.market, toy.order, toy.spec, DStrategy::AlwaysOne())
            .matching == Sd(toy.market, toy.order, toy.spec));
  Rng rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng.Below(6));
    const int m = 1 + static_cast<int>(rng.Below(4));
    const Market market = testing::RandomMarket(rng, n, m);
    const FeasibilitySpec f =
        testing::RandomHereditaryModel(rng, m, 3).ToSpec();
    std::vector<StudentId> list(n);
    for (int s = 0; s < n; ++s) list[s] = s;
    rng.Shuffle(list);
    const MasterList order(list, n);
    CHECK(Msgda(market, order, f, DStrategy::AlwaysOne()).matching ==
          Sd(market, order, f));
  }
}

TEST_CASE("flexible quotas: slack of the joint caps") {
  const FeasibilitySpec f = Shift(Flexible(), AssignmentVector({6, 4}));
  const DChoice c = ChooseDDisjunctive(f, 100);
  CHECK(c.d == 4);
  CHECK(c.d_star == 4);
  CHECK_FALSE(c.committed);
}

TEST_CASE("flexible quotas: commit once a branch dies") {
  const FeasibilitySpec f = Shift(Flexible(), AssignmentVector({11, 2}));
  const DChoice c = ChooseDDisjunctive(f, 7);
  CHECK(c.committed);
  CHECK(c.d == 7);
  CHECK(c.stage_spec.Evaluate(AssignmentVector({2, 5})));
  CHECK_FALSE(c.stage_spec.Evaluate(AssignmentVector({3, 0})));
}

TEST_CASE("flexible quotas: no slack falls back to one") {
  // Branches (c1 <= 1) or (c2 <= 1) have joint caps with zero slack only
  // once both are tight; start there.
  const FeasibilitySpec f = FeasibilitySpec::Or(
      {FeasibilitySpec::UpperBound({0, 2}), FeasibilitySpec::UpperBound({2, 0})});
  const DChoice c = ChooseDDisjunctive(f, 5);
  CHECK(c.d == 1);
  CHECK(c.d_star == 0);
}

TEST_CASE("fixed d is certified or refused") {
  const ToyExample toy = MakeToyExample();
  CHECK_THROWS_AS(Msgda(toy.market, toy.order, toy.spec, DStrategy::Fixed(6)),
                  UncertifiedDError);
  CHECK(Msgda(toy.market, toy.order, toy.spec, DStrategy::Fixed(1)).matching ==
        Sd(toy.market, toy.order, toy.spec));
  const MsgdaResult r =
      Msgda(toy.market, toy.order, toy.regional_only, DStrategy::Fixed(6));
  CHECK(r.trace.stages.size() == 1);
  CHECK(r.matching == Gda(toy.market, toy.regional_only));
}

TEST_CASE("strategy parsing") {
  CHECK(ParseDStrategy("fixed:3").fixed_d == 3);
  CHECK(ParseDStrategy("fixed:3").kind == DStrategyKind::kFixed);
  CHECK(ParseDStrategy("one").kind == DStrategyKind::kAlwaysOne);
  CHECK(ParseDStrategy("linear").kind == DStrategyKind::kLinearCapMax);
  CHECK(ParseDStrategy("disjunctive").kind ==
        DStrategyKind::kDisjunctiveCommit);
  CHECK(ParseDStrategy("auto").kind == DStrategyKind::kAuto);
  CHECK_THROWS(ParseDStrategy("fixed:0"));
  CHECK_THROWS(ParseDStrategy("bogus"));
}

TEST_CASE("stages partition the master list") {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.Below(7));
    const int m = 1 + static_cast<int>(rng.Below(4));
    const Market market = testing::RandomMarket(rng, n, m);
    const FeasibilitySpec f =
        testing::RandomHereditaryModel(rng, m, 3).ToSpec();
    const MasterList order = MasterList::Identity(n);
    const MsgdaResult r = Msgda(market, order, f);
    std::vector<StudentId> seen;
    std::vector<ContractId> fixed;
    for (const StageRecord& stage : r.trace.stages) {
      CHECK(static_cast<int64_t>(stage.students.size()) <= stage.d);
      seen.insert(seen.end(), stage.students.begin(), stage.students.end());
      fixed.insert(fixed.end(), stage.fixed.begin(), stage.fixed.end());
    }
    CHECK(seen == order.order());
    std::sort(fixed.begin(), fixed.end());
    CHECK(fixed == r.matching.Contracts());
  }
}

TEST_CASE("MS-GDA axioms on small markets") {
  Rng rng(43);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 1 + static_cast<int>(rng.Below(4));
    const int m = 1 + static_cast<int>(rng.Below(3));
    const Market market = testing::RandomMarket(rng, n, m);
    const auto model = testing::RandomHereditaryModel(rng, m, 2);
    const FeasibilitySpec f = model.ToSpec();
    const MasterList order = MasterList::Identity(n);
    const Matching y = Msgda(market, order, f).matching;
    CHECK(IsFeasible(market, y, f));
    CHECK(StronglyClaims(market, y, f).empty());
    CHECK(MlFairViolations(market, y, order).empty());
    CHECK(CheckParetoFrontier(market, y, f).verdict == Verdict::kYes);
    CHECK(testing::OracleOnFrontier(market, testing::Held(y), model));
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace distmatch
