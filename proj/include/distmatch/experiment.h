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


// Parameter sweeps over generated markets, averaged into CSV rows.

#ifndef DISTMATCH_EXPERIMENT_H_
#define DISTMATCH_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "distmatch/market_io.h"
#include "distmatch/msgda.h"

namespace distmatch {

class ExperimentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class MechanismKind { kSd, kAcda, kAda, kMsgda, kGda };

const char* MechanismName(MechanismKind kind);
// Case-insensitive; accepts "ms-gda" as well.
MechanismKind ParseMechanism(const std::string& text);

struct ExperimentPlan {
  int market = 1;  // 1 or 2
  std::vector<double> phis = {0.7};
  // Market 1: the non-rural cap. Market 2: the baseline regional quota.
  // Empty means the family default.
  std::vector<int64_t> qs;
  // Market 2 only. Zipped with qs; a single value is broadcast.
  std::vector<int64_t> flexes;
  std::vector<MechanismKind> mechanisms = {
      MechanismKind::kSd, MechanismKind::kAcda, MechanismKind::kAda,
      MechanismKind::kMsgda};
  int instances = 100;
  uint64_t seed = 1;
  int jobs = 1;
  int num_students = 1000;
  // Uniform ACDA quota; the largest feasible uniform quota when unset.
  std::optional<int64_t> acda_quota;
  DStrategy strategy = DStrategy::Auto();
  // When false the runtime column is written as 0, so that repeated runs
  // produce identical bytes.
  bool record_runtime = true;

  // Checks the grid and fills in family defaults.
  void Validate();
};

// Fields that are present override the defaults above.
ExperimentPlan PlanFromJson(const nlohmann::json& j);

struct ExperimentRow {
  std::string market;  // "1", "2" or a file label
  bool has_grid = true;  // phi, q and flex are blank for file markets
  double phi = 0.0;
  int64_t q = 0;
  int64_t flex = 0;
  MechanismKind mechanism = MechanismKind::kSd;
  double mean_borda = 0.0;
  double students_no_envy = 0.0;
  double pairs_no_envy = 0.0;
  double mean_runtime_ms = 0.0;
  int64_t mean_evaluations = 0;  // feasibility evaluations, MS-GDA only
  int instances = 0;
};

// One row per grid point and mechanism, grid-major. Every matching is
// audited for feasibility; a failure raises ExperimentError.
std::vector<ExperimentRow> RunExperiment(ExperimentPlan plan);

// One row per mechanism on a single market read from a file.
std::vector<ExperimentRow> RunFileExperiment(
    const MarketFile& file, const std::string& label,
    const std::vector<MechanismKind>& mechanisms, const DStrategy& strategy,
    bool record_runtime);

void WriteCsvHeader(std::ostream& out);
void WriteCsvRow(std::ostream& out, const ExperimentRow& row);

}  // namespace distmatch

#endif  // DISTMATCH_EXPERIMENT_H_
