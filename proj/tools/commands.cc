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


#include "commands.h"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "distmatch/audit.h"
#include "distmatch/constraint_checks.h"
#include "distmatch/genmarket.h"
#include "distmatch/market_io.h"
#include "distmatch/mechanisms.h"
#include "distmatch/msgda.h"
#include "distmatch/toy_example.h"

namespace distmatch::tools {
namespace {

using nlohmann::json;

std::string Join(const std::vector<int>& v) {
  std::string s = "(";
  for (size_t k = 0; k < v.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(v[k]);
  }
  return s + ")";
}

std::string Vec(const AssignmentVector& v) {
  std::vector<int> raw(v.dimension());
  for (int i = 0; i < v.dimension(); ++i) raw[i] = v[i];
  return Join(raw);
}

// Writes to `path`, or to `out` when the path is empty.
bool Emit(const std::string& path, const std::string& text, std::ostream& out,
          std::ostream& err) {
  if (path.empty()) {
    out << text;
    return true;
  }
  std::ofstream file(path, std::ios::binary);
  file << text;
  if (!file) {
    err << "error: cannot write " << path << "\n";
    return false;
  }
  return true;
}

json StagesJson(const Market& market, const MechanismTrace& trace) {
  json stages = json::array();
  for (const StageRecord& r : trace.stages) {
    json students = json::array();
    for (StudentId s : r.students) students.push_back(market.student_name(s));
    stages.push_back({{"stage", r.stage},
                      {"d", r.d},
                      {"students", students},
                      {"committed", r.committed},
                      {"spec", r.spec}});
  }
  return stages;
}

template <typename F>
int Guard(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const NotMNaturalConvexError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const InfeasibleQuotaError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ExperimentError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace

int CmdRun(const RunArgs& args, std::ostream& out, std::ostream& err) {
  return Guard(err, [&] {
    const MarketFile file = LoadMarketFile(args.market);
    const Market& market = file.market;
    const MechanismKind kind = ParseMechanism(args.mechanism);
    json result;
    Matching y;
    switch (kind) {
      case MechanismKind::kSd:
        y = Sd(market, file.order, file.spec);
        break;
      case MechanismKind::kAcda: {
        const auto quotas =
            file.reduced_quotas
                ? *file.reduced_quotas
                : std::vector<int64_t>(
                      market.num_colleges(),
                      LargestUniformQuota(file.spec, market.num_students()));
        y = Acda(market, file.spec, quotas);
        break;
      }
      case MechanismKind::kAda:
        y = Ada(market, file.order, file.spec);
        break;
      case MechanismKind::kMsgda: {
        MsgdaResult r =
            Msgda(market, file.order, file.spec, ParseDStrategy(args.strategy));
        y = std::move(r.matching);
        if (args.trace) {
          result["stages"] = StagesJson(market, r.trace);
          result["events"] = r.trace.events;
        }
        break;
      }
      case MechanismKind::kGda:
        y = Gda(market, file.spec);
        break;
    }
    if (!IsFeasible(market, y, file.spec)) {
      err << "error: " << MechanismName(kind)
          << " produced an infeasible matching, counts "
          << NuOf(market, y).ToString() << "\n";
      return 3;
    }
    json matching = MatchingToJson(market, y);
    matching["mechanism"] = MechanismName(kind);
    AuditOptions options;
    options.order = &file.order;
    const AuditReport report = Audit(market, y, file.spec, options);
    json audit = json::parse(AuditReportToJson(market, report));
    if (args.out.empty()) {
      result["matching"] = matching["matching"];
      result["mechanism"] = MechanismName(kind);
      result["audit"] = audit;
      out << result.dump(2) << "\n";
      return 0;
    }
    for (auto it = result.begin(); it != result.end(); ++it) {
      matching[it.key()] = it.value();
    }
    if (!Emit(args.out, matching.dump(2) + "\n", out, err)) return 2;
    out << audit.dump(2) << "\n";
    return 0;
  });
}

int CmdAudit(const AuditArgs& args, std::ostream& out, std::ostream& err) {
  return Guard(err, [&] {
    const MarketFile file = LoadMarketFile(args.market);
    std::ifstream in(args.matching);
    if (!in) throw ParseError("cannot open " + args.matching);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw ParseError(args.matching + ": " + e.what());
    }
    const Matching y = ParseMatching(j, file.market);
    AuditOptions options;
    options.order = &file.order;
    const AuditReport report = Audit(file.market, y, file.spec, options);
    out << json::parse(AuditReportToJson(file.market, report)).dump(2) << "\n";
    return report.feasible ? 0 : 1;
  });
}

int CmdGen(const GenArgs& args, std::ostream& out, std::ostream& err) {
  return Guard(err, [&] {
    json j;
    if (args.family == "toy" || args.family == "toy-regional") {
      const ToyExample toy = MakeToyExample();
      j = MarketToJson(toy.market,
                       args.family == "toy" ? toy.spec : toy.regional_only,
                       toy.order);
      j["reduced_quotas"] = std::vector<int64_t>(6, 1);
    } else if (args.family == "1") {
      Market1Config config = args.students == 1000
                                 ? Market1Config{}
                                 : Market1Config::Scaled(args.students);
      config.phi = args.phi;
      if (args.q) config.nonrural_cap = *args.q;
      const GeneratedMarket g = BuildMarket1(config, args.seed);
      j = MarketToJson(g.market, g.spec,
                       MasterList::Identity(g.market.num_students()));
    } else if (args.family == "2") {
      Market2Config config;
      config.num_students = args.students;
      config.phi = args.phi;
      if (args.q) config.base = *args.q;
      if (args.flex) config.flex = *args.flex;
      const GeneratedMarket g = BuildMarket2(config, args.seed);
      j = MarketToJson(g.market, g.spec,
                       MasterList::Identity(g.market.num_students()));
    } else {
      err << "error: unknown market family " << args.family << "\n";
      return 2;
    }
    return Emit(args.out, j.dump(1) + "\n", out, err) ? 0 : 2;
  });
}

int CmdConvexity(const ConvexityArgs& args, std::ostream& out,
                 std::ostream& err) {
  return Guard(err, [&] {
    const MarketFile file = LoadMarketFile(args.market);
    const int m = file.market.num_colleges();
    std::vector<int> raw = args.box;
    if (raw.empty()) raw.push_back(3);
    if (raw.size() == 1) raw.resize(m, raw.front());
    if (static_cast<int>(raw.size()) != m) {
      err << "error: box needs 1 or " << m << " entries\n";
      return 2;
    }
    const AssignmentVector box(raw);
    const HereditaryResult h = CheckHereditary(file.spec, box, args.cap);
    const ConvexityResult c = CheckMNaturalConvex(file.spec, box, args.cap);
    out << "box: " << Join(raw) << "\n";
    out << "hereditary: " << VerdictName(h.verdict);
    if (h.witness) {
      out << " (feasible " << Vec(h.witness->first) << ", infeasible "
          << Vec(h.witness->second) << ")";
    }
    out << "\n";
    out << "M♮-convex: " << VerdictName(c.verdict);
    if (c.witness) {
      out << " (nu=" << Vec(c.witness->nu) << ", nu'="
          << Vec(c.witness->nu_prime) << ", i=" << c.witness->i + 1 << ")";
    }
    out << "\n";
    if (!args.nu.empty() || !args.nu_prime.empty() || args.college) {
      if (static_cast<int>(args.nu.size()) != m ||
          static_cast<int>(args.nu_prime.size()) != m || !args.college ||
          *args.college < 0 || *args.college >= m) {
        err << "error: --nu, --nu-prime and --college must all be given\n";
        return 2;
      }
      const AssignmentVector nu(args.nu), nu_prime(args.nu_prime);
      const int i = *args.college;
      if (!file.spec.Evaluate(nu) || !file.spec.Evaluate(nu_prime) ||
          nu[i] <= nu_prime[i]) {
        err << "error: the pair must be feasible with nu_i > nu'_i\n";
        return 2;
      }
      out << "exchange at i=" << i + 1 << " for " << Join(args.nu) << " / "
          << Join(args.nu_prime) << ": "
          << (ExchangeHolds(file.spec, nu, nu_prime, i) ? "holds" : "fails")
          << "\n";
    }
    return 0;
  });
}

int CmdExperiment(const ExperimentArgs& args, std::ostream& out,
                  std::ostream& err) {
  return Guard(err, [&] {
    std::vector<MechanismKind> mechanisms;
    for (const auto& m : args.mechanisms) {
      mechanisms.push_back(ParseMechanism(m));
    }
    std::vector<ExperimentRow> rows;
    if (!args.market.empty() && args.market != "1" && args.market != "2") {
      const MarketFile file = LoadMarketFile(args.market);
      if (mechanisms.empty()) mechanisms = ExperimentPlan{}.mechanisms;
      const DStrategy strategy = args.strategy.empty()
                                     ? DStrategy::Auto()
                                     : ParseDStrategy(args.strategy);
      rows = RunFileExperiment(file, args.market, mechanisms, strategy,
                               !args.no_runtime);
    } else {
      ExperimentPlan plan;
      if (!args.config.empty()) {
        std::ifstream in(args.config);
        if (!in) throw ParseError("cannot open " + args.config);
        json j;
        try {
          in >> j;
        } catch (const json::exception& e) {
          throw ParseError(args.config + ": " + e.what());
        }
        plan = PlanFromJson(j);
      }
      if (!args.market.empty()) plan.market = args.market == "1" ? 1 : 2;
      if (!args.phis.empty()) plan.phis = args.phis;
      if (!args.qs.empty()) plan.qs = args.qs;
      if (!args.flexes.empty()) plan.flexes = args.flexes;
      if (!mechanisms.empty()) plan.mechanisms = mechanisms;
      if (args.instances) plan.instances = *args.instances;
      if (args.seed) plan.seed = *args.seed;
      if (args.jobs) plan.jobs = *args.jobs;
      if (args.students) plan.num_students = *args.students;
      if (args.acda_quota) plan.acda_quota = args.acda_quota;
      if (!args.strategy.empty()) plan.strategy = ParseDStrategy(args.strategy);
      if (args.no_runtime) plan.record_runtime = false;
      rows = RunExperiment(plan);
    }
    std::ostringstream csv;
    WriteCsvHeader(csv);
    for (const auto& row : rows) WriteCsvRow(csv, row);
    return Emit(args.out, csv.str(), out, err) ? 0 : 2;
  });
}

}  // namespace distmatch::tools
