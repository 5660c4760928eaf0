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


#include <cstdio>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "commands.h"
#include "distmatch/experiment.h"
#include "distmatch/market_io.h"
#include "distmatch/mechanisms.h"
#include "distmatch/toy_example.h"
#include "test_support.h"

namespace distmatch {
namespace {

using nlohmann::json;

std::string TempPath(const std::string& name) {
  return std::string(DISTMATCH_TEST_TMP) + "/" + name;
}

std::string WriteToy(const std::string& name, bool regional = false) {
  const ToyExample toy = MakeToyExample();
  json j = MarketToJson(toy.market, regional ? toy.regional_only : toy.spec,
                        toy.order);
  j["reduced_quotas"] = std::vector<int>(6, 1);
  const std::string path = TempPath(name);
  std::ofstream(path) << j.dump();
  return path;
}

std::set<std::pair<std::string, std::string>> NamePairs(const json& j) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& p : j) out.emplace(p[0], p[1]);
  return out;
}

TEST_SUITE("io") {

TEST_CASE("round trip of the toy market") {
  const ToyExample toy = MakeToyExample();
  const json j = MarketToJson(toy.market, toy.spec, toy.order);
  const MarketFile back = ParseMarket(json::parse(j.dump()));
  CHECK(back.market.num_contracts() == 36);
  for (ContractId x = 0; x < 36; ++x) {
    CHECK(back.market.weights()[x] == toy.market.weights()[x]);
  }
  Rng rng(61);
  for (int k = 0; k < 200; ++k) {
    AssignmentVector v(6);
    for (int i = 0; i < 6; ++i) v[i] = static_cast<int>(rng.Below(4));
    CHECK(back.spec.Evaluate(v) == toy.spec.Evaluate(v));
  }
  CHECK(Sd(back.market, back.order, back.spec) ==
        Sd(toy.market, toy.order, toy.spec));
}

TEST_CASE("all node types parse") {
  const json j = json::parse(R"({
    "students": 2, "colleges": ["a", "b"],
    "college_prefs": {"a": ["s1", "s2"], "b": ["s2"]},
    "student_prefs": [["a"], ["b", "a"]],
    "weights": {"s1": {"a": "7/2"}, "s2": {"a": 3, "b": "1/3"}},
    "master_list": ["s2", "s1"],
    "contracts": [["s1", "a"], ["s2", "a"], ["s2", "b"]],
    "constraints": {"type": "or", "children": [
      {"type": "and", "children": [
        {"type": "cap", "college": "a", "limit": 1},
        {"type": "regional", "colleges": ["a", "b"], "limit": 2},
        {"type": "linear", "colleges": ["b"], "limit": 1}]},
      {"type": "truncate", "d": 2, "child":
        {"type": "shift", "offset": [1, 0], "child":
          {"type": "upper_bound", "limits": {"a": 3, "b": 0}}}}]},
    "reduced_quotas": [1, 0]})");
  const MarketFile f = ParseMarket(j);
  CHECK(f.market.num_students() == 2);
  CHECK(f.order.order() == std::vector<StudentId>{1, 0});
  CHECK(f.market.weights()[*f.market.FindContract(0, 0)] == Weight(7, 2));
  CHECK(f.reduced_quotas == std::vector<int64_t>{1, 0});
  CHECK(f.spec.Evaluate(AssignmentVector({1, 1})));
  CHECK(f.spec.Evaluate(AssignmentVector({2, 0})));
  CHECK_FALSE(f.spec.Evaluate(AssignmentVector({3, 0})));
  const json again = SpecToJson(f.spec, f.market);
  CHECK(ParseSpec(again, f.market).Describe() == f.spec.Describe());
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(ParseMarket(json::parse("[]")), ParseError);
  CHECK_THROWS_AS(ParseMarket(json::parse(R"({"students": 1})")), ParseError);
  CHECK_THROWS_AS(ParseMarket(json::parse(R"({
    "students": 1, "colleges": 1, "college_prefs": [["s9"]],
    "student_prefs": [[]]})")), ParseError);
  CHECK_THROWS_AS(ParseMarket(json::parse(R"({
    "students": 1, "colleges": 1, "college_prefs": [["s1"]],
    "student_prefs": [["c1"]], "contracts": []})")), ParseError);
  CHECK_THROWS_AS(ParseMarket(json::parse(R"({
    "students": 1, "colleges": 1, "college_prefs": [["s1"]],
    "student_prefs": [["c1"]], "constraints": {"type": "nope"}})")),
                  ParseError);
  CHECK_THROWS_AS(ParseMarket(json::parse(R"({
    "students": 1, "colleges": 1, "college_prefs": [["s1"]],
    "student_prefs": [["c1"]], "weights": [["s1", "c1", "x/y"]]})")),
                  ParseError);
  CHECK_THROWS_AS(LoadMarketFile(TempPath("missing.json")), ParseError);
}

TEST_CASE("matching files") {
  const ToyExample toy = MakeToyExample();
  const Matching y = Sd(toy.market, toy.order, toy.spec);
  CHECK(ParseMatching(MatchingToJson(toy.market, y), toy.market) == y);
  CHECK_THROWS_AS(ParseMatching(json::parse(R"([["s1", "c1"], ["s1", "c2"]])"),
                                toy.market),
                  ParseError);
}

TEST_CASE("run command on the toy file") {
  const std::string path = WriteToy("toy_run.json");
  std::ostringstream out, err;
  tools::RunArgs args;
  args.market = path;
  args.mechanism = "msgda";
  args.trace = true;
  REQUIRE(tools::CmdRun(args, out, err) == 0);
  json j = json::parse(out.str());
  CHECK(NamePairs(j["matching"]) ==
        std::set<std::pair<std::string, std::string>>{
            {"s1", "c4"}, {"s2", "c1"}, {"s3", "c1"}, {"s4", "c1"},
            {"s5", "c6"}, {"s6", "c6"}});
  CHECK(j["stages"].size() == 2);
  CHECK(j["audit"]["feasible"].get<bool>());

  out.str("");
  args.mechanism = "sd";
  args.trace = false;
  REQUIRE(tools::CmdRun(args, out, err) == 0);
  j = json::parse(out.str());
  CHECK(NamePairs(j["matching"]) ==
        std::set<std::pair<std::string, std::string>>{
            {"s1", "c1"}, {"s2", "c1"}, {"s3", "c1"}, {"s4", "c4"},
            {"s5", "c6"}, {"s6", "c6"}});

  out.str("");
  args.mechanism = "gda";
  CHECK(tools::CmdRun(args, out, err) == 2);
  CHECK(err.str().find("M-natural") != std::string::npos);
}

TEST_CASE("run writes a matching that audit accepts") {
  const std::string path = WriteToy("toy_audit.json");
  tools::RunArgs run;
  run.market = path;
  run.mechanism = "acda";
  run.out = TempPath("toy_matching.json");
  std::ostringstream out, err;
  REQUIRE(tools::CmdRun(run, out, err) == 0);
  tools::AuditArgs audit{path, run.out};
  out.str("");
  CHECK(tools::CmdAudit(audit, out, err) == 0);
  const json j = json::parse(out.str());
  CHECK(j["students_without_envy"].get<double>() == 1.0);
}

TEST_CASE("run on an empty market") {
  const std::string path = TempPath("empty.json");
  std::ofstream(path) << R"({"students": 0, "colleges": 0,
      "college_prefs": [], "student_prefs": []})";
  std::ostringstream out, err;
  tools::RunArgs args;
  args.market = path;
  REQUIRE(tools::CmdRun(args, out, err) == 0);
  CHECK(json::parse(out.str())["matching"].empty());
}

TEST_CASE("convexity command") {
  std::ostringstream out, err;
  tools::ConvexityArgs args;
  args.market = WriteToy("toy_conv.json");
  args.nu = {3, 0, 0, 1, 0, 2};
  args.nu_prime = {2, 0, 1, 2, 0, 1};
  args.college = 0;
  REQUIRE(tools::CmdConvexity(args, out, err) == 0);
  CHECK(out.str().find("hereditary: yes") != std::string::npos);
  CHECK(out.str().find("M♮-convex: no") != std::string::npos);
  CHECK(out.str().find("(3,0,0,1,0,2) / (2,0,1,2,0,1): fails") !=
        std::string::npos);

  out.str("");
  tools::ConvexityArgs regional;
  regional.market = WriteToy("toy_conv_regional.json", true);
  REQUIRE(tools::CmdConvexity(regional, out, err) == 0);
  CHECK(out.str().find("M♮-convex: yes") != std::string::npos);

  out.str("");
  const std::string single = TempPath("single.json");
  std::ofstream(single) << R"({"students": 2, "colleges": 1,
      "college_prefs": [["s1", "s2"]], "student_prefs": [["c1"], ["c1"]],
      "constraints": {"type": "cap", "college": "c1", "limit": 1}})";
  tools::ConvexityArgs one;
  one.market = single;
  REQUIRE(tools::CmdConvexity(one, out, err) == 0);
  CHECK(out.str().find("hereditary: yes") != std::string::npos);
  CHECK(out.str().find("M♮-convex: yes") != std::string::npos);

  out.str("");
  one.box = {100};
  one.cap = 10;
  REQUIRE(tools::CmdConvexity(one, out, err) == 0);
  CHECK(out.str().find("inconclusive") != std::string::npos);
}

TEST_CASE("experiment rows") {
  ExperimentPlan plan;
  plan.instances = 1;
  plan.num_students = 200;
  plan.mechanisms = {MechanismKind::kSd};
  CHECK(RunExperiment(plan).size() == 1);

  plan.phis = {0.7, 0.8, 0.9};
  plan.mechanisms = {MechanismKind::kSd, MechanismKind::kAcda,
                     MechanismKind::kAda, MechanismKind::kMsgda};
  CHECK(RunExperiment(plan).size() == 12);

  plan.phis = {0.7};
  plan.qs = {140, 160, 180};
  const auto rows = RunExperiment(plan);
  REQUIRE(rows.size() == 12);
  CHECK(rows[0].q == 140);
  CHECK(rows[11].q == 180);

  ExperimentPlan two;
  two.market = 2;
  two.instances = 1;
  two.num_students = 300;
  two.qs = {120, 135, 150};
  two.flexes = {40, 25, 10};
  two.mechanisms = {MechanismKind::kMsgda};
  const auto rows2 = RunExperiment(two);
  REQUIRE(rows2.size() == 3);
  CHECK(rows2[1].flex == 25);

  ExperimentPlan bad;
  bad.phis = {};
  CHECK_THROWS_AS(RunExperiment(bad), ExperimentError);
  bad = ExperimentPlan{};
  bad.market = 2;
  bad.qs = {1, 2};
  bad.flexes = {1, 2, 3};
  CHECK_THROWS_AS(RunExperiment(bad), ExperimentError);
  bad = ExperimentPlan{};
  bad.instances = 1;
  bad.num_students = 100;
  bad.mechanisms = {MechanismKind::kGda};
  CHECK_THROWS_AS(RunExperiment(bad), ExperimentError);
}

TEST_CASE("experiment CSV is reproducible") {
  tools::ExperimentArgs args;
  args.market = "1";
  args.instances = 3;
  args.students = 200;
  args.seed = 17;
  args.no_runtime = true;
  std::ostringstream a, b, err;
  args.jobs = 1;
  REQUIRE(tools::CmdExperiment(args, a, err) == 0);
  args.jobs = 3;
  REQUIRE(tools::CmdExperiment(args, b, err) == 0);
  CHECK(a.str() == b.str());
  std::istringstream lines(a.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header ==
        "market,phi,q,flex,mechanism,meanBorda,studentsNoEnvyRatio,"
        "pairsNoEnvyRatio,meanRuntimeMs,instances");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) {
    ++rows;
    CHECK(line.find(",0.000,3") != std::string::npos);
  }
  CHECK(rows == 4);
}

TEST_CASE("experiment plan file with overrides") {
  const std::string path = TempPath("plan.json");
  std::ofstream(path) << R"({"market": 2, "phi": [0.7], "q": [150],
      "flex": [30], "mechanisms": ["ms-gda", "SD"], "instances": 1,
      "students": 300, "seed": 5, "record_runtime": false})";
  tools::ExperimentArgs args;
  args.config = path;
  args.mechanisms = {"ada"};
  std::ostringstream out, err;
  REQUIRE(tools::CmdExperiment(args, out, err) == 0);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  CHECK(line.rfind("2,0.70,150,30,ADA,", 0) == 0);
  CHECK_FALSE(std::getline(lines, line));
}

}  // TEST_SUITE

}  // namespace
}  // namespace distmatch
