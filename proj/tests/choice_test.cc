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

#include "distmatch/choice.h"
#include "distmatch/toy_example.h"
#include "test_support.h"

namespace distmatch {
namespace {

std::vector<ContractId> RandomPool(Rng& rng, const Market& m, int max_size) {
  std::vector<ContractId> all(m.num_contracts());
  for (ContractId x = 0; x < m.num_contracts(); ++x) all[x] = x;
  rng.Shuffle(all);
  all.resize(std::min<int>(max_size, static_cast<int>(rng.Below(all.size() + 1))));
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<ContractId> Greedy(const Market& m, std::vector<ContractId> pool,
                               const FeasibilitySpec& f) {
  return ChCollegesGreedy(m, pool, f).chosen;
}

bool Contains(const std::vector<ContractId>& v, ContractId x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

std::vector<ContractId> Union(std::vector<ContractId> a,
                              const std::vector<ContractId>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

TEST_SUITE("choice") {

TEST_CASE("toy pool at c1") {
  const ToyExample toy = MakeToyExample();
  std::vector<ContractId> pool;
  for (StudentId s = 0; s < 6; ++s) pool.push_back(*toy.market.FindContract(s, 0));
  const auto chosen = Greedy(toy.market, pool, toy.spec);
  std::vector<ContractId> expected = {*toy.market.FindContract(3, 0),
                                      *toy.market.FindContract(4, 0),
                                      *toy.market.FindContract(5, 0)};
  std::sort(expected.begin(), expected.end());
  CHECK(chosen == expected);
  CHECK(ChCollegesBruteforce(toy.market, pool, toy.spec) == expected);
  CHECK_FALSE(ChCollegesGreedy(toy.market, pool, toy.spec).certified);
  CHECK(ChCollegesGreedy(toy.market, pool, toy.regional_only).certified);
}

TEST_CASE("student choice") {
  const Market m = MakeToyExample().market;
  const std::vector<ContractId> pool = {*m.FindContract(0, 5),
                                        *m.FindContract(0, 3),
                                        *m.FindContract(1, 2)};
  CHECK(ChStudent(m, 0, pool) == *m.FindContract(0, 3));
  CHECK(ChStudent(m, 2, pool) == std::nullopt);
  const auto all = ChStudents(m, pool);
  CHECK(all.size() == 2);
  CHECK(std::is_sorted(all.begin(), all.end()));
}

TEST_CASE("greedy equals the oracle on laminar specs") {
  Rng rng(21);
  for (int trial = 0; trial < 1500; ++trial) {
    const int n = 1 + static_cast<int>(rng.Below(5));
    const int m = 1 + static_cast<int>(rng.Below(4));
    const Market market = testing::RandomMarket(
        rng, n, m, {.accept = 1, .college_keep = 0.8,
                    .rational_weights = trial % 2 == 0});
    const auto model = testing::RandomLaminarModel(rng, m, 3);
    const FeasibilitySpec f = model.ToSpec();
    const auto pool = RandomPool(rng, market, 12);
    const auto expected = testing::OracleChoice(market, pool, model);
    CHECK(Greedy(market, pool, f) == expected);
    CHECK(ChCollegesBruteforce(market, pool, f) == expected);
  }
}

TEST_CASE("brute force equals the oracle on any hereditary spec") {
  Rng rng(22);
  for (int trial = 0; trial < 500; ++trial) {
    const Market market = testing::RandomMarket(rng, 4, 3, {.accept = 1});
    const auto model = testing::RandomHereditaryModel(rng, 3, 3);
    const auto pool = RandomPool(rng, market, 10);
    CHECK(ChCollegesBruteforce(market, pool, model.ToSpec()) ==
          testing::OracleChoice(market, pool, model));
  }
}

TEST_CASE("brute force cap") {
  const Market m = MakeToyExample().market;
  std::vector<ContractId> pool(20);
  for (int k = 0; k < 20; ++k) pool[k] = k;
  CHECK_THROWS_AS(ChCollegesBruteforce(m, pool, MakeToyExample().spec, 16),
                  CapExceededError);
}

TEST_CASE("choice axioms under laminar specs") {
  Rng rng(23);
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = 1 + static_cast<int>(rng.Below(4));
    const Market market = testing::RandomMarket(rng, 5, m, {.accept = 1});
    const FeasibilitySpec f = testing::RandomLaminarModel(rng, m, 3).ToSpec();
    const auto big = RandomPool(rng, market, 12);
    std::vector<ContractId> small;
    for (ContractId x : big) {
      if (rng.Unit() < 0.6) small.push_back(x);
    }
    const auto ch_big = Greedy(market, big, f);
    const auto ch_small = Greedy(market, small, f);
    // Substitutability: rejected from the smaller pool, rejected from the
    // larger one.
    for (ContractId x : small) {
      if (!Contains(ch_small, x)) CHECK_FALSE(Contains(ch_big, x));
    }
    // Law of aggregated demand.
    CHECK(ch_small.size() <= ch_big.size());
    // Idempotence.
    CHECK(Greedy(market, ch_big, f) == ch_big);
    // Order irrelevance of the input.
    std::vector<ContractId> shuffled = big;
    rng.Shuffle(shuffled);
    CHECK(Greedy(market, shuffled, f) == ch_big);
    // Path independence.
    std::vector<ContractId> rest;
    for (ContractId x : big) {
      if (!Contains(small, x)) rest.push_back(x);
    }
    CHECK(Greedy(market, Union(ch_small, rest), f) == ch_big);
  }
}

TEST_CASE("tracker overload leaves the chosen counts") {
  const ToyExample toy = MakeToyExample();
  FeasibilityTracker tracker(toy.regional_only);
  tracker.Add(0);
  std::vector<ContractId> pool;
  for (StudentId s = 0; s < 6; ++s) pool.push_back(*toy.market.FindContract(s, 0));
  const auto chosen = ChCollegesGreedy(toy.market, pool, tracker);
  CHECK(chosen.size() == 3);
  CHECK(tracker.counts()[0] == 3);
}

TEST_CASE("single rejection step") {
  Rng rng(24);
  int rejections = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int m = 1 + static_cast<int>(rng.Below(4));
    const Market market = testing::RandomMarket(rng, 5, m, {.accept = 1});
    const FeasibilitySpec f = testing::RandomLaminarModel(rng, m, 2).ToSpec();
    const auto pool = RandomPool(rng, market, 10);
    const auto z = Greedy(market, pool, f);
    for (ContractId x = 0; x < market.num_contracts(); ++x) {
      if (Contains(z, x)) continue;
      const RejectionStep step = SingleRejectionStep(market, z, x, f);
      std::vector<ContractId> with = z;
      with.push_back(x);
      std::sort(with.begin(), with.end());
      CHECK(step.accepted == Greedy(market, with, f));
      CHECK(step.accepted.size() + (step.rejected ? 1 : 0) == with.size());
      if (step.rejected) {
        ++rejections;
        CHECK_FALSE(Contains(step.accepted, *step.rejected));
      }
    }
  }
  CHECK(rejections > 0);
}

TEST_CASE("several rejections raise") {
  // Either one student at each of c1, c2, or up to two at c3.
  const FeasibilitySpec f = FeasibilitySpec::Or(
      {FeasibilitySpec::UpperBound({1, 1, 0}),
       FeasibilitySpec::UpperBound({0, 0, 2})});
  MarketBuilder b;
  b.AddStudents(3);
  b.AddColleges(3);
  for (int k = 0; k < 3; ++k) b.SetCollegePreference(k, {k});
  b.SetWeight(0, 0, 5);
  b.SetWeight(1, 1, 4);
  b.SetWeight(2, 2, 10);
  const Market m = b.Build();
  const std::vector<ContractId> z = {*m.FindContract(0, 0),
                                     *m.FindContract(1, 1)};
  REQUIRE(Greedy(m, z, f) == z);
  CHECK_THROWS_AS(SingleRejectionStep(m, z, *m.FindContract(2, 2), f),
                  MultipleRejectionError);
}

}  // TEST_SUITE

}  // namespace
}  // namespace distmatch
