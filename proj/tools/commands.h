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


// Subcommand bodies of the distmatch tool, separated from flag parsing.

#ifndef DISTMATCH_TOOLS_COMMANDS_H_
#define DISTMATCH_TOOLS_COMMANDS_H_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "distmatch/experiment.h"

namespace distmatch::tools {

struct RunArgs {
  std::string market;  // path
  std::string mechanism = "msgda";
  std::string strategy = "auto";
  std::string out;  // matching file; stdout when empty
  bool trace = false;
};

struct AuditArgs {
  std::string market;
  std::string matching;
};

struct GenArgs {
  std::string family = "1";  // 1, 2, toy, toy-regional
  double phi = 0.7;
  std::optional<int64_t> q;
  std::optional<int64_t> flex;
  int students = 1000;
  uint64_t seed = 1;
  std::string out;
};

struct ConvexityArgs {
  std::string market;
  std::vector<int> box;  // one entry is broadcast; empty means 3 per college
  int64_t cap = 2'000'000;
  // Optional exchange check of a given pair: nu, nu', i (0-based).
  std::vector<int> nu;
  std::vector<int> nu_prime;
  std::optional<int> college;
};

struct ExperimentArgs {
  std::string market;  // 1, 2 or a market file; the plan decides when empty
  std::string config;        // JSON plan; flags override it
  std::vector<double> phis;
  std::vector<int64_t> qs;
  std::vector<int64_t> flexes;
  std::vector<std::string> mechanisms;
  std::optional<int> instances;
  std::optional<uint64_t> seed;
  std::optional<int> jobs;
  std::optional<int> students;
  std::optional<int64_t> acda_quota;
  std::string strategy;
  bool no_runtime = false;
  std::string out;
};

// Each returns the process exit code; diagnostics go to `err`.
int CmdRun(const RunArgs& args, std::ostream& out, std::ostream& err);
int CmdAudit(const AuditArgs& args, std::ostream& out, std::ostream& err);
int CmdGen(const GenArgs& args, std::ostream& out, std::ostream& err);
int CmdConvexity(const ConvexityArgs& args, std::ostream& out,
                 std::ostream& err);
int CmdExperiment(const ExperimentArgs& args, std::ostream& out,
                  std::ostream& err);

}  // namespace distmatch::tools

#endif  // DISTMATCH_TOOLS_COMMANDS_H_
