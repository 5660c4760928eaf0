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


#include "distmatch/genmarket.h"

#include <cmath>
#include <stdexcept>

namespace distmatch {

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t InstanceSeed(uint64_t master, uint64_t index) {
  return SplitMix64(SplitMix64(master) ^ (index * 0xd1b54a32d192ed03ULL));
}

uint64_t Rng::Below(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("empty range");
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % bound;
}

double Rng::Unit() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::vector<int> UniformPermutation(int size, Rng& rng) {
  std::vector<int> v(size);
  for (int i = 0; i < size; ++i) v[i] = i;
  rng.Shuffle(v);
  return v;
}

int64_t KendallTau(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("length mismatch");
  std::vector<int> pos(a.size());
  for (size_t k = 0; k < b.size(); ++k) pos.at(b[k]) = static_cast<int>(k);
  int64_t d = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = i + 1; j < a.size(); ++j) {
      if (pos[a[i]] > pos[a[j]]) ++d;
    }
  }
  return d;
}

std::vector<int> MallowsSample(double phi, const std::vector<int>& center,
                               Rng& rng) {
  if (phi < 0) throw std::invalid_argument("phi must be >= 0");
  std::vector<int> out;
  out.reserve(center.size());
  // decay[k] = exp(-phi * k): weight of displacing an item by k places.
  std::vector<double> decay(center.size() + 1);
  for (size_t k = 0; k < decay.size(); ++k) {
    decay[k] = std::exp(-phi * static_cast<double>(k));
  }
  std::vector<double> cumulative;
  for (size_t i = 0; i < center.size(); ++i) {
    cumulative.assign(i + 1, 0.0);
    double total = 0.0;
    for (size_t j = 0; j <= i; ++j) {
      total += decay[i - j];
      cumulative[j] = total;
    }
    const double u = rng.Unit() * total;
    size_t j = 0;
    while (j < i && cumulative[j] <= u) ++j;
    out.insert(out.begin() + static_cast<std::ptrdiff_t>(j), center[i]);
  }
  return out;
}

Market1Config Market1Config::Scaled(int n) {
  Market1Config c;
  c.num_students = n;
  c.regional_cap = n / 20;
  c.nonrural_cap = (4 * static_cast<int64_t>(n)) / 5;
  return c;
}

Market RandomMallowsMarket(int num_students, int num_colleges, double phi,
                           Rng& rng) {
  MarketBuilder builder;
  builder.AddStudents(num_students);
  builder.AddColleges(num_colleges);
  const std::vector<int> center = UniformPermutation(num_colleges, rng);
  for (StudentId s = 0; s < num_students; ++s) {
    builder.SetStudentPreference(s, MallowsSample(phi, center, rng));
  }
  for (CollegeId c = 0; c < num_colleges; ++c) {
    builder.SetCollegePreference(c, UniformPermutation(num_students, rng));
  }
  return builder.Build();
}

namespace {

std::vector<std::vector<CollegeId>> Regions(int num_regions, int per_region) {
  if (num_regions < 1 || per_region < 1) {
    throw std::invalid_argument("regions must be non-empty");
  }
  std::vector<std::vector<CollegeId>> regions(num_regions);
  for (int r = 0; r < num_regions; ++r) {
    for (int k = 0; k < per_region; ++k) {
      regions[r].push_back(r * per_region + k);
    }
  }
  return regions;
}

}  // namespace

FeasibilitySpec Market1Spec(const Market1Config& config) {
  const auto regions = Regions(config.num_regions, config.colleges_per_region);
  const int m = config.num_regions * config.colleges_per_region;
  std::vector<FeasibilitySpec> parts;
  std::vector<CollegeId> nonrural;
  for (const auto& region : regions) {
    parts.push_back(
        FeasibilitySpec::RegionalCap(m, region, config.regional_cap));
    nonrural.insert(nonrural.end(), region.begin() + 1, region.end());
  }
  if (!nonrural.empty()) {
    parts.push_back(
        FeasibilitySpec::LinearCap(m, nonrural, config.nonrural_cap));
  }
  return FeasibilitySpec::And(std::move(parts));
}

FeasibilitySpec Market2Spec(const Market2Config& config) {
  if (config.num_regions % 2 != 0) {
    throw std::invalid_argument("Market 2 needs an even number of regions");
  }
  const auto regions = Regions(config.num_regions, config.colleges_per_region);
  const int m = config.num_regions * config.colleges_per_region;
  std::vector<FeasibilitySpec> parts;
  parts.push_back(FeasibilitySpec::UpperBound(
      std::vector<int64_t>(m, config.college_cap)));
  for (const auto& region : regions) {
    parts.push_back(
        FeasibilitySpec::RegionalCap(m, region, config.regional_cap));
  }
  std::vector<CollegeId> east, west;
  for (CollegeId c = 0; c < m; ++c) (c < m / 2 ? east : west).push_back(c);
  using FS = FeasibilitySpec;
  const int64_t hi = config.base + config.flex;
  parts.push_back(FS::Or({
      FS::And({FS::RegionalCap(m, east, hi),
               FS::RegionalCap(m, west, config.base)}),
      FS::And({FS::RegionalCap(m, east, config.base),
               FS::RegionalCap(m, west, hi)}),
  }));
  return FS::And(std::move(parts));
}

GeneratedMarket BuildMarket1(const Market1Config& config, uint64_t seed) {
  Rng rng(seed);
  const int m = config.num_regions * config.colleges_per_region;
  GeneratedMarket out{RandomMallowsMarket(config.num_students, m, config.phi,
                                          rng),
                      Market1Spec(config),
                      Regions(config.num_regions, config.colleges_per_region),
                      {}};
  for (const auto& region : out.regions) out.rural.push_back(region.front());
  return out;
}

GeneratedMarket BuildMarket2(const Market2Config& config, uint64_t seed) {
  Rng rng(seed);
  const int m = config.num_regions * config.colleges_per_region;
  return GeneratedMarket{
      RandomMallowsMarket(config.num_students, m, config.phi, rng),
      Market2Spec(config),
      Regions(config.num_regions, config.colleges_per_region),
      {}};
}

}  // namespace distmatch
