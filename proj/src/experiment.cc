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


#include "distmatch/experiment.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "distmatch/audit.h"
#include "distmatch/constraint_checks.h"
#include "distmatch/genmarket.h"
#include "distmatch/mechanisms.h"

namespace distmatch {
namespace {

struct Sample {
  double borda = 0.0;
  double students = 0.0;
  double pairs = 0.0;
  double ms = 0.0;
  int64_t evaluations = 0;
};

struct GridPoint {
  double phi;
  int64_t q;
  int64_t flex;
};

GeneratedMarket Build(const ExperimentPlan& plan, const GridPoint& point,
                      uint64_t seed) {
  if (plan.market == 1) {
    Market1Config config = plan.num_students == 1000
                               ? Market1Config{}
                               : Market1Config::Scaled(plan.num_students);
    config.phi = point.phi;
    config.nonrural_cap = point.q;
    return BuildMarket1(config, seed);
  }
  Market2Config config;
  config.num_students = plan.num_students;
  config.phi = point.phi;
  config.base = point.q;
  config.flex = point.flex;
  return BuildMarket2(config, seed);
}

Sample RunOne(MechanismKind kind, const DStrategy& strategy,
              bool record_runtime, const GeneratedMarket& g,
              const MasterList& order, const std::vector<int64_t>& acda_quotas,
              uint64_t instance) {
  const auto start = std::chrono::steady_clock::now();
  Sample sample;
  Matching y;
  switch (kind) {
    case MechanismKind::kSd:
      y = Sd(g.market, order, g.spec, &sample.evaluations);
      break;
    case MechanismKind::kAcda:
      y = Acda(g.market, g.spec, acda_quotas);
      break;
    case MechanismKind::kAda: {
      AdaResult r = RunAda(g.market, order, g.spec);
      sample.evaluations = r.evaluations;
      y = std::move(r.matching);
      break;
    }
    case MechanismKind::kMsgda: {
      MsgdaResult r = Msgda(g.market, order, g.spec, strategy);
      sample.evaluations = r.trace.evaluations;
      y = std::move(r.matching);
      break;
    }
    case MechanismKind::kGda: {
      GdaOptions options;
      options.check = GdaCheck::kTrusted;
      GdaResult r = RunGda(g.market, g.spec, options);
      sample.evaluations = r.evaluations;
      y = std::move(r.matching);
      break;
    }
  }
  const auto stop = std::chrono::steady_clock::now();
  if (record_runtime) {
    sample.ms =
        std::chrono::duration<double, std::milli>(stop - start).count();
  }
  if (!IsFeasible(g.market, y, g.spec)) {
    throw ExperimentError(std::string(MechanismName(kind)) +
                          " produced an infeasible matching on instance " +
                          std::to_string(instance) + ": counts " +
                          NuOf(g.market, y).ToString());
  }
  const EnvyRatios ratios = ComputeEnvyRatios(g.market, y);
  sample.borda = Borda(g.market, y).mean;
  sample.students = ratios.students_without_envy;
  sample.pairs = ratios.pairs_without_envy;
  return sample;
}

std::string Lower(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::tolower(ch));
  return s;
}

}  // namespace

const char* MechanismName(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kSd:
      return "SD";
    case MechanismKind::kAcda:
      return "ACDA";
    case MechanismKind::kAda:
      return "ADA";
    case MechanismKind::kMsgda:
      return "MSGDA";
    case MechanismKind::kGda:
      return "GDA";
  }
  return "?";
}

MechanismKind ParseMechanism(const std::string& text) {
  const std::string t = Lower(text);
  if (t == "sd") return MechanismKind::kSd;
  if (t == "acda") return MechanismKind::kAcda;
  if (t == "ada") return MechanismKind::kAda;
  if (t == "msgda" || t == "ms-gda") return MechanismKind::kMsgda;
  if (t == "gda") return MechanismKind::kGda;
  throw ExperimentError("unknown mechanism " + text);
}

void ExperimentPlan::Validate() {
  if (market != 1 && market != 2) {
    throw ExperimentError("market family must be 1 or 2");
  }
  if (phis.empty()) throw ExperimentError("no phi values");
  for (double phi : phis) {
    if (!(phi >= 0.0)) throw ExperimentError("phi must be >= 0");
  }
  if (mechanisms.empty()) throw ExperimentError("no mechanisms");
  if (instances < 1) throw ExperimentError("instances must be >= 1");
  if (jobs < 1) throw ExperimentError("jobs must be >= 1");
  if (num_students < 1) throw ExperimentError("num_students must be >= 1");
  if (qs.empty()) {
    qs.push_back(market == 1 ? Market1Config::Scaled(num_students).nonrural_cap
                             : Market2Config{}.base);
  }
  if (market == 1) {
    flexes.assign(qs.size(), 0);
  } else {
    if (flexes.empty()) flexes.push_back(Market2Config{}.flex);
    if (flexes.size() == 1) flexes.resize(qs.size(), flexes.front());
    if (qs.size() == 1 && flexes.size() > 1) qs.resize(flexes.size(), qs[0]);
    if (flexes.size() != qs.size()) {
      throw ExperimentError("q and flex lists must have equal length");
    }
  }
  for (size_t k = 0; k < qs.size(); ++k) {
    if (qs[k] < 0 || flexes[k] < 0) {
      throw ExperimentError("q and flex must be >= 0");
    }
  }
  if (acda_quota && *acda_quota < 0) {
    throw ExperimentError("ACDA quota must be >= 0");
  }
}

ExperimentPlan PlanFromJson(const nlohmann::json& j) {
  ExperimentPlan plan;
  try {
    if (j.contains("market")) plan.market = j.at("market").get<int>();
    if (j.contains("phi")) plan.phis = j.at("phi").get<std::vector<double>>();
    if (j.contains("q")) plan.qs = j.at("q").get<std::vector<int64_t>>();
    if (j.contains("flex")) {
      plan.flexes = j.at("flex").get<std::vector<int64_t>>();
    }
    if (j.contains("mechanisms")) {
      plan.mechanisms.clear();
      for (const auto& m : j.at("mechanisms")) {
        plan.mechanisms.push_back(ParseMechanism(m.get<std::string>()));
      }
    }
    if (j.contains("instances")) plan.instances = j.at("instances").get<int>();
    if (j.contains("seed")) plan.seed = j.at("seed").get<uint64_t>();
    if (j.contains("jobs")) plan.jobs = j.at("jobs").get<int>();
    if (j.contains("students")) plan.num_students = j.at("students").get<int>();
    if (j.contains("acda_quota")) {
      plan.acda_quota = j.at("acda_quota").get<int64_t>();
    }
    if (j.contains("strategy")) {
      plan.strategy = ParseDStrategy(j.at("strategy").get<std::string>());
    }
    if (j.contains("record_runtime")) {
      plan.record_runtime = j.at("record_runtime").get<bool>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ExperimentError(std::string("bad plan: ") + e.what());
  }
  return plan;
}

std::vector<ExperimentRow> RunExperiment(ExperimentPlan plan) {
  plan.Validate();
  std::vector<GridPoint> grid;
  for (double phi : plan.phis) {
    for (size_t k = 0; k < plan.qs.size(); ++k) {
      grid.push_back({phi, plan.qs[k], plan.flexes[k]});
    }
  }
  const size_t mechs = plan.mechanisms.size();
  std::vector<ExperimentRow> rows;
  for (const GridPoint& point : grid) {
    // samples[instance * mechs + mechanism]
    std::vector<Sample> samples(static_cast<size_t>(plan.instances) * mechs);
    std::atomic<int> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= plan.instances) return;
        try {
          const GeneratedMarket g =
              Build(plan, point, InstanceSeed(plan.seed, i));
          const MasterList order =
              MasterList::Identity(g.market.num_students());
          std::vector<int64_t> quotas;
          for (size_t k = 0; k < mechs; ++k) {
            const MechanismKind kind = plan.mechanisms[k];
            if (kind == MechanismKind::kAcda) {
              quotas.assign(
                  g.market.num_colleges(),
                  plan.acda_quota ? *plan.acda_quota
                                  : LargestUniformQuota(
                                        g.spec, g.market.num_students()));
            }
            if (kind == MechanismKind::kGda && !StructurallyMNatural(g.spec)) {
              throw ExperimentError(
                  "GDA needs a certified M-natural-convex spec");
            }
            samples[i * mechs + k] = RunOne(kind, plan.strategy,
                                            plan.record_runtime, g, order,
                                            quotas, i);
          }
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          next.store(plan.instances);
          return;
        }
      }
    };
    const int threads = std::min(plan.jobs, plan.instances);
    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);

    for (size_t k = 0; k < mechs; ++k) {
      ExperimentRow row;
      row.market = std::to_string(plan.market);
      row.phi = point.phi;
      row.q = point.q;
      row.flex = point.flex;
      row.mechanism = plan.mechanisms[k];
      row.instances = plan.instances;
      int64_t evaluations = 0;
      for (int i = 0; i < plan.instances; ++i) {
        const Sample& s = samples[i * mechs + k];
        row.mean_borda += s.borda;
        row.students_no_envy += s.students;
        row.pairs_no_envy += s.pairs;
        row.mean_runtime_ms += s.ms;
        evaluations += s.evaluations;
      }
      row.mean_borda /= plan.instances;
      row.students_no_envy /= plan.instances;
      row.pairs_no_envy /= plan.instances;
      row.mean_runtime_ms /= plan.instances;
      row.mean_evaluations = evaluations / plan.instances;
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<ExperimentRow> RunFileExperiment(
    const MarketFile& file, const std::string& label,
    const std::vector<MechanismKind>& mechanisms, const DStrategy& strategy,
    bool record_runtime) {
  const GeneratedMarket g{file.market, file.spec, {}, {}};
  const int n = g.market.num_students();
  const std::vector<int64_t> quotas =
      file.reduced_quotas
          ? *file.reduced_quotas
          : std::vector<int64_t>(g.market.num_colleges(),
                                 LargestUniformQuota(g.spec, n));
  std::vector<ExperimentRow> rows;
  for (MechanismKind kind : mechanisms) {
    if (kind == MechanismKind::kGda && !StructurallyMNatural(g.spec)) {
      throw ExperimentError("GDA needs a certified M-natural-convex spec");
    }
    const Sample s =
        RunOne(kind, strategy, record_runtime, g, file.order, quotas, 0);
    ExperimentRow row;
    row.market = label;
    row.has_grid = false;
    row.mechanism = kind;
    row.mean_borda = s.borda;
    row.students_no_envy = s.students;
    row.pairs_no_envy = s.pairs;
    row.mean_runtime_ms = s.ms;
    row.mean_evaluations = s.evaluations;
    row.instances = 1;
    rows.push_back(row);
  }
  return rows;
}

void WriteCsvHeader(std::ostream& out) {
  out << "market,phi,q,flex,mechanism,meanBorda,studentsNoEnvyRatio,"
         "pairsNoEnvyRatio,meanRuntimeMs,instances\n";
}

void WriteCsvRow(std::ostream& out, const ExperimentRow& row) {
  char grid[96] = ",,";
  if (row.has_grid) {
    std::snprintf(grid, sizeof(grid), "%.2f,%lld,%lld", row.phi,
                  static_cast<long long>(row.q),
                  static_cast<long long>(row.flex));
  }
  char metrics[160];
  std::snprintf(metrics, sizeof(metrics), "%.6f,%.6f,%.6f,%.3f,%d",
                row.mean_borda, row.students_no_envy, row.pairs_no_envy,
                row.mean_runtime_ms, row.instances);
  std::string label = row.market;
  if (label.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char ch : label) {
      if (ch == '"') quoted += '"';
      quoted += ch;
    }
    label = quoted + "\"";
  }
  out << label << ',' << grid << ',' << MechanismName(row.mechanism) << ','
      << metrics << '\n';
}

}  // namespace distmatch
