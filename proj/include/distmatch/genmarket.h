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


// Random instances: Mallows student preferences around one uniformly drawn
// center, uniform college preferences, and the two regional market
// families used in the experiments.

#ifndef DISTMATCH_GENMARKET_H_
#define DISTMATCH_GENMARKET_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "distmatch/constraints.h"
#include "distmatch/market.h"

namespace distmatch {

uint64_t SplitMix64(uint64_t x);

// Seed of instance `index` under a master seed.
uint64_t InstanceSeed(uint64_t master, uint64_t index);

// mt19937_64 with integer and real draws written out by hand, so streams
// agree across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(SplitMix64(seed)) {}

  uint64_t Next() { return engine_(); }
  // Uniform on [0, bound).
  uint64_t Below(uint64_t bound);
  // Uniform on [0, 1) with 53 random bits.
  double Unit();
  template <typename T>
  void Shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[Below(i)]);
    }
  }
  Rng Split() { return Rng(Next()); }

 private:
  std::mt19937_64 engine_;
};

std::vector<int> UniformPermutation(int size, Rng& rng);

// Number of pairs ordered differently by the two permutations.
int64_t KendallTau(const std::vector<int>& a, const std::vector<int>& b);

// Exact Mallows draw by repeated insertion: the i-th item of the center
// (0-based) goes to position j in [0, i] of the partial order with weight
// exp(-phi * (i - j)).
std::vector<int> MallowsSample(double phi, const std::vector<int>& center,
                               Rng& rng);

struct Market1Config {
  int num_students = 1000;
  int num_regions = 20;
  int colleges_per_region = 5;  // the first one of each region is rural
  int64_t regional_cap = 50;
  int64_t nonrural_cap = 800;
  double phi = 0.7;

  // Caps scaled to n: regional n/20, non-rural 0.8 n.
  static Market1Config Scaled(int n);
};

struct Market2Config {
  int num_students = 1000;
  int num_regions = 20;  // first half East, second half West
  int colleges_per_region = 10;
  int64_t college_cap = 10;
  int64_t regional_cap = 60;
  int64_t base = 450;
  int64_t flex = 100;
  double phi = 0.7;
};

struct GeneratedMarket {
  Market market;
  FeasibilitySpec spec;
  std::vector<std::vector<CollegeId>> regions;
  std::vector<CollegeId> rural;  // Market 1 only
};

FeasibilitySpec Market1Spec(const Market1Config& config);
FeasibilitySpec Market2Spec(const Market2Config& config);

GeneratedMarket BuildMarket1(const Market1Config& config, uint64_t seed);
GeneratedMarket BuildMarket2(const Market2Config& config, uint64_t seed);

// Students rank all colleges by Mallows around one shared uniform center;
// colleges rank all students uniformly.
Market RandomMallowsMarket(int num_students, int num_colleges, double phi,
                           Rng& rng);

}  // namespace distmatch

#endif  // DISTMATCH_GENMARKET_H_
