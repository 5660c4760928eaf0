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


// JSON reading and writing of markets, constraint trees and matchings.

#ifndef DISTMATCH_MARKET_IO_H_
#define DISTMATCH_MARKET_IO_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "distmatch/constraints.h"
#include "distmatch/market.h"

namespace distmatch {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MarketFile {
  Market market;
  FeasibilitySpec spec;
  MasterList order;
  std::optional<std::vector<int64_t>> reduced_quotas;
};

MarketFile ParseMarket(const nlohmann::json& j);
MarketFile LoadMarketFile(const std::string& path);

FeasibilitySpec ParseSpec(const nlohmann::json& j, const Market& market);
nlohmann::json SpecToJson(const FeasibilitySpec& spec, const Market& market);

// Weights are written as exact rationals ("p/q" or "p").
nlohmann::json MarketToJson(const Market& market, const FeasibilitySpec& spec,
                            const MasterList& order);

nlohmann::json MatchingToJson(const Market& market, const Matching& y);
// Accepts {"matching": [[s, c], ...]} or a bare list of pairs.
Matching ParseMatching(const nlohmann::json& j, const Market& market);

Weight ParseWeight(const nlohmann::json& j);

}  // namespace distmatch

#endif  // DISTMATCH_MARKET_IO_H_
