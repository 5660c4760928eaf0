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


#include <iostream>

#include <CLI11.hpp>

#include "commands.h"

int main(int argc, char** argv) {
  namespace t = distmatch::tools;
  CLI::App app{"Matching under distributional constraints"};
  app.require_subcommand(1);

  t::RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run a mechanism on a market file");
  run_cmd->add_option("--market", run.market, "Market JSON file")->required();
  run_cmd->add_option("--mechanism", run.mechanism,
                      "sd, acda, ada, msgda or gda");
  run_cmd->add_option("--strategy", run.strategy,
                      "MS-GDA d rule: auto, one, linear, disjunctive, fixed:<d>");
  run_cmd->add_option("--out", run.out, "Matching output file");
  run_cmd->add_flag("--trace", run.trace, "Include the MS-GDA stage trace");

  t::AuditArgs audit;
  auto* audit_cmd = app.add_subcommand("audit", "Audit a matching");
  audit_cmd->add_option("--market", audit.market, "Market JSON file")
      ->required();
  audit_cmd->add_option("--matching", audit.matching, "Matching JSON file")
      ->required();

  t::GenArgs gen;
  std::int64_t gen_q = -1, gen_flex = -1;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a market file");
  gen_cmd->add_option("--market", gen.family, "1, 2, toy or toy-regional");
  gen_cmd->add_option("--phi", gen.phi, "Mallows dispersion");
  gen_cmd->add_option("--q", gen_q, "Non-rural cap (1) or baseline quota (2)");
  gen_cmd->add_option("--flex", gen_flex, "Flexible amount (2)");
  gen_cmd->add_option("--students", gen.students, "Number of students");
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--out", gen.out, "Output file");

  t::ConvexityArgs conv;
  int conv_college = -1;
  auto* conv_cmd =
      app.add_subcommand("convexity", "Check heredity and M-natural convexity");
  conv_cmd->add_option("--market", conv.market, "Market JSON file")->required();
  conv_cmd->add_option("--box", conv.box, "Per-college bound, or one for all")
      ->delimiter(',');
  conv_cmd->add_option("--cap", conv.cap, "Enumeration cap");
  conv_cmd->add_option("--nu", conv.nu, "Exchange check: nu")->delimiter(',');
  conv_cmd->add_option("--nu-prime", conv.nu_prime, "Exchange check: nu'")
      ->delimiter(',');
  conv_cmd->add_option("--college", conv_college,
                       "Exchange check: college index, 1-based");

  t::ExperimentArgs exp;
  int exp_instances = 0, exp_jobs = 0, exp_students = 0;
  std::uint64_t exp_seed = 0;
  std::int64_t exp_acda = -1;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a parameter sweep");
  exp_cmd->add_option("--market", exp.market, "1, 2 or a market file");
  exp_cmd->add_option("--config", exp.config, "JSON plan; flags override");
  exp_cmd->add_option("--phi", exp.phis, "Mallows dispersions")->delimiter(',');
  exp_cmd->add_option("--q", exp.qs, "q values")->delimiter(',');
  exp_cmd->add_option("--flex", exp.flexes, "Flexible amounts, zipped with q")
      ->delimiter(',');
  exp_cmd->add_option("--mechanism", exp.mechanisms, "Mechanisms")
      ->delimiter(',');
  auto* inst_opt = exp_cmd->add_option("--instances", exp_instances,
                                       "Instances per grid point");
  auto* seed_opt = exp_cmd->add_option("--seed", exp_seed, "Master seed");
  auto* jobs_opt = exp_cmd->add_option("--jobs", exp_jobs, "Worker threads");
  auto* students_opt =
      exp_cmd->add_option("--students", exp_students, "Number of students");
  auto* acda_opt =
      exp_cmd->add_option("--acda-quota", exp_acda, "Uniform ACDA quota");
  exp_cmd->add_option("--strategy", exp.strategy, "MS-GDA d rule");
  exp_cmd->add_flag("--no-runtime", exp.no_runtime,
                    "Write 0 in the runtime column");
  exp_cmd->add_option("--out", exp.out, "CSV output file");

  CLI11_PARSE(app, argc, argv);

  if (*run_cmd) return t::CmdRun(run, std::cout, std::cerr);
  if (*audit_cmd) return t::CmdAudit(audit, std::cout, std::cerr);
  if (*gen_cmd) {
    if (gen_q >= 0) gen.q = gen_q;
    if (gen_flex >= 0) gen.flex = gen_flex;
    return t::CmdGen(gen, std::cout, std::cerr);
  }
  if (*conv_cmd) {
    if (conv_college >= 0) conv.college = conv_college - 1;
    return t::CmdConvexity(conv, std::cout, std::cerr);
  }
  if (*inst_opt) exp.instances = exp_instances;
  if (*seed_opt) exp.seed = exp_seed;
  if (*jobs_opt) exp.jobs = exp_jobs;
  if (*students_opt) exp.students = exp_students;
  if (*acda_opt) exp.acda_quota = exp_acda;
  return t::CmdExperiment(exp, std::cout, std::cerr);
}
