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


#include "distmatch/market_io.h"

#include <fstream>
#include <set>
#include <sstream>

namespace distmatch {
namespace {

using nlohmann::json;

std::vector<std::string> Names(const json& j, const char* field,
                               const char* prefix) {
  if (!j.contains(field)) throw ParseError(std::string("missing ") + field);
  const json& v = j.at(field);
  std::vector<std::string> out;
  if (v.is_number_integer()) {
    const int64_t count = v.get<int64_t>();
    if (count < 0) throw ParseError(std::string(field) + " must be >= 0");
    for (int64_t k = 1; k <= count; ++k) {
      out.push_back(prefix + std::to_string(k));
    }
    return out;
  }
  if (!v.is_array()) throw ParseError(std::string(field) + " must be a list");
  for (const json& name : v) {
    if (!name.is_string()) throw ParseError("names must be strings");
    out.push_back(name.get<std::string>());
  }
  return out;
}

int Lookup(const std::vector<std::string>& names, const json& key,
           const char* what) {
  if (key.is_number_integer()) {
    const int64_t k = key.get<int64_t>();
    if (k < 0 || k >= static_cast<int64_t>(names.size())) {
      throw ParseError(std::string(what) + " index out of range");
    }
    return static_cast<int>(k);
  }
  if (!key.is_string()) throw ParseError(std::string("bad ") + what);
  const std::string name = key.get<std::string>();
  for (size_t k = 0; k < names.size(); ++k) {
    if (names[k] == name) return static_cast<int>(k);
  }
  throw ParseError(std::string("unknown ") + what + " " + name);
}

// Per-owner lists, given either as an object keyed by owner name or as a
// list aligned with the owners.
std::vector<std::vector<int>> OrderLists(
    const json& j, const std::vector<std::string>& owners,
    const std::vector<std::string>& items, const char* what) {
  std::vector<std::vector<int>> out(owners.size());
  auto fill = [&](int owner, const json& list) {
    if (!list.is_array()) throw ParseError(std::string(what) + " must be lists");
    for (const json& item : list) out[owner].push_back(Lookup(items, item, what));
  };
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      fill(Lookup(owners, json(it.key()), "owner"), it.value());
    }
  } else if (j.is_array()) {
    if (j.size() != owners.size()) {
      throw ParseError(std::string(what) + " list has the wrong length");
    }
    for (size_t k = 0; k < j.size(); ++k) fill(static_cast<int>(k), j[k]);
  } else {
    throw ParseError(std::string("bad ") + what);
  }
  return out;
}

std::vector<CollegeId> CollegeSet(const json& j, const Market& market) {
  std::vector<std::string> names;
  for (CollegeId c = 0; c < market.num_colleges(); ++c) {
    names.push_back(market.college_name(c));
  }
  std::vector<CollegeId> out;
  for (const json& c : j) out.push_back(Lookup(names, c, "college"));
  return out;
}

std::vector<int64_t> PerCollege(const json& j, const Market& market,
                                const char* what) {
  const int m = market.num_colleges();
  std::vector<int64_t> out(m, 0);
  if (j.is_array()) {
    if (static_cast<int>(j.size()) != m) {
      throw ParseError(std::string(what) + " has the wrong length");
    }
    for (int i = 0; i < m; ++i) out[i] = j[i].get<int64_t>();
  } else if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const auto c = market.FindCollege(it.key());
      if (!c) throw ParseError("unknown college " + it.key());
      out[*c] = it.value().get<int64_t>();
    }
  } else {
    throw ParseError(std::string("bad ") + what);
  }
  return out;
}

json CollegeNames(const std::vector<CollegeId>& set, const Market& market) {
  json a = json::array();
  for (CollegeId c : set) a.push_back(market.college_name(c));
  return a;
}

std::string WeightText(const Weight& w) {
  std::ostringstream out;
  out << numerator(w);
  if (denominator(w) != 1) out << '/' << denominator(w);
  return out.str();
}

}  // namespace

Weight ParseWeight(const json& j) {
  if (j.is_number_integer()) return Weight(j.get<int64_t>());
  if (!j.is_string()) throw ParseError("weights must be integers or strings");
  const std::string text = j.get<std::string>();
  try {
    const auto slash = text.find('/');
    using boost::multiprecision::cpp_int;
    if (slash == std::string::npos) return Weight(cpp_int(text));
    return Weight(cpp_int(text.substr(0, slash)),
                  cpp_int(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw ParseError("bad weight " + text);
  }
}

FeasibilitySpec ParseSpec(const json& j, const Market& market) {
  const int m = market.num_colleges();
  if (!j.is_object() || !j.contains("type")) {
    throw ParseError("constraint nodes need a type");
  }
  const std::string type = j.at("type").get<std::string>();
  try {
    if (type == "cap") {
      const CollegeId c = CollegeSet(json::array({j.at("college")}), market)[0];
      return FeasibilitySpec::CollegeCap(m, c, j.at("limit").get<int64_t>());
    }
    if (type == "regional") {
      return FeasibilitySpec::RegionalCap(m, CollegeSet(j.at("colleges"), market),
                                          j.at("limit").get<int64_t>());
    }
    if (type == "linear") {
      return FeasibilitySpec::LinearCap(m, CollegeSet(j.at("colleges"), market),
                                        j.at("limit").get<int64_t>());
    }
    if (type == "upper_bound") {
      return FeasibilitySpec::UpperBound(PerCollege(j.at("limits"), market,
                                                    "upper_bound limits"));
    }
    if (type == "and" || type == "or") {
      std::vector<FeasibilitySpec> children;
      for (const json& c : j.at("children")) {
        children.push_back(ParseSpec(c, market));
      }
      return type == "and" ? FeasibilitySpec::And(std::move(children))
                           : FeasibilitySpec::Or(std::move(children));
    }
    if (type == "shift") {
      std::vector<int> offset;
      for (int64_t v : PerCollege(j.at("offset"), market, "shift offset")) {
        offset.push_back(static_cast<int>(v));
      }
      return Shift(ParseSpec(j.at("child"), market),
                   AssignmentVector(std::move(offset)));
    }
    if (type == "truncate") {
      return Truncate(ParseSpec(j.at("child"), market),
                      j.at("d").get<int64_t>());
    }
  } catch (const json::exception& e) {
    throw ParseError("bad " + type + " node: " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError("bad " + type + " node: " + e.what());
  }
  throw ParseError("unknown constraint type " + type);
}

json SpecToJson(const FeasibilitySpec& spec, const Market& market) {
  const SpecNode& node = spec.node();
  using K = FeasibilitySpec::Kind;
  json j;
  switch (node.kind) {
    case K::kCollegeCap:
      j = {{"type", "cap"},
           {"college", market.college_name(node.colleges.front())},
           {"limit", node.limit}};
      break;
    case K::kRegionalCap:
    case K::kLinearCap:
      j = {{"type", node.kind == K::kRegionalCap ? "regional" : "linear"},
           {"colleges", CollegeNames(node.colleges, market)},
           {"limit", node.limit}};
      break;
    case K::kUpperBound:
      j = {{"type", "upper_bound"}, {"limits", node.bounds}};
      break;
    case K::kAnd:
    case K::kOr: {
      json children = json::array();
      for (const auto& c : node.children) children.push_back(SpecToJson(c, market));
      j = {{"type", node.kind == K::kAnd ? "and" : "or"},
           {"children", children}};
      break;
    }
    case K::kShift:
      j = {{"type", "shift"},
           {"offset", node.offset},
           {"child", SpecToJson(node.children.front(), market)}};
      break;
    case K::kTruncate:
      j = {{"type", "truncate"},
           {"d", node.limit},
           {"child", SpecToJson(node.children.front(), market)}};
      break;
    case K::kBlackBox:
      throw std::invalid_argument("black-box constraints cannot be written");
  }
  return j;
}

MarketFile ParseMarket(const json& j) {
  if (!j.is_object()) throw ParseError("market file must be a JSON object");
  const auto students = Names(j, "students", "s");
  const auto colleges = Names(j, "colleges", "c");
  MarketBuilder builder;
  for (const auto& s : students) builder.AddStudent(s);
  for (const auto& c : colleges) builder.AddCollege(c);
  if (!j.contains("college_prefs") || !j.contains("student_prefs")) {
    throw ParseError("market needs student_prefs and college_prefs");
  }
  const auto college_prefs =
      OrderLists(j.at("college_prefs"), colleges, students, "student");
  const auto student_prefs =
      OrderLists(j.at("student_prefs"), students, colleges, "college");
  for (size_t c = 0; c < colleges.size(); ++c) {
    builder.SetCollegePreference(static_cast<CollegeId>(c), college_prefs[c]);
  }
  for (size_t s = 0; s < students.size(); ++s) {
    builder.SetStudentPreference(static_cast<StudentId>(s), student_prefs[s]);
  }
  if (j.contains("weights")) {
    const json& w = j.at("weights");
    if (w.is_object()) {
      for (auto it = w.begin(); it != w.end(); ++it) {
        const StudentId s = Lookup(students, json(it.key()), "student");
        for (auto jt = it.value().begin(); jt != it.value().end(); ++jt) {
          builder.SetWeight(s, Lookup(colleges, json(jt.key()), "college"),
                            ParseWeight(jt.value()));
        }
      }
    } else if (w.is_array()) {
      for (const json& triple : w) {
        if (!triple.is_array() || triple.size() != 3) {
          throw ParseError("weights must be [student, college, weight]");
        }
        builder.SetWeight(Lookup(students, triple[0], "student"),
                          Lookup(colleges, triple[1], "college"),
                          ParseWeight(triple[2]));
      }
    } else {
      throw ParseError("bad weights");
    }
  }
  Market market = [&] {
    try {
      return builder.Build();
    } catch (const InvalidMarketError& e) {
      throw ParseError(std::string("invalid market: ") + e.what());
    }
  }();
  if (j.contains("contracts")) {
    std::set<std::pair<int, int>> listed;
    for (const json& pair : j.at("contracts")) {
      if (!pair.is_array() || pair.size() != 2) {
        throw ParseError("contracts must be [student, college] pairs");
      }
      listed.emplace(Lookup(students, pair[0], "student"),
                     Lookup(colleges, pair[1], "college"));
    }
    std::set<std::pair<int, int>> actual;
    for (ContractId x = 0; x < market.num_contracts(); ++x) {
      actual.emplace(market.student_of(x), market.college_of(x));
    }
    if (listed != actual) {
      throw ParseError("contracts disagree with the college preferences");
    }
  }
  const int n = market.num_students();
  const int m = market.num_colleges();
  FeasibilitySpec spec =
      j.contains("constraints")
          ? ParseSpec(j.at("constraints"), market)
          : FeasibilitySpec::UpperBound(std::vector<int64_t>(m, n));
  MasterList order = MasterList::Identity(n);
  if (j.contains("master_list")) {
    std::vector<StudentId> list;
    for (const json& s : j.at("master_list")) {
      list.push_back(Lookup(students, s, "student"));
    }
    try {
      order = MasterList(std::move(list), n);
    } catch (const InvalidMarketError& e) {
      throw ParseError(e.what());
    }
  }
  std::optional<std::vector<int64_t>> reduced;
  if (j.contains("reduced_quotas")) {
    reduced = PerCollege(j.at("reduced_quotas"), market, "reduced_quotas");
  }
  return MarketFile{std::move(market), std::move(spec), std::move(order),
                    std::move(reduced)};
}

MarketFile LoadMarketFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return ParseMarket(j);
}

json MarketToJson(const Market& market, const FeasibilitySpec& spec,
                  const MasterList& order) {
  json j;
  json students = json::array(), colleges = json::array();
  for (StudentId s = 0; s < market.num_students(); ++s) {
    students.push_back(market.student_name(s));
  }
  for (CollegeId c = 0; c < market.num_colleges(); ++c) {
    colleges.push_back(market.college_name(c));
  }
  j["students"] = students;
  j["colleges"] = colleges;
  json sp = json::object(), cp = json::object(), w = json::array();
  for (StudentId s = 0; s < market.num_students(); ++s) {
    json list = json::array();
    for (ContractId x : market.StudentPreference(s)) {
      list.push_back(market.college_name(market.college_of(x)));
    }
    sp[market.student_name(s)] = list;
  }
  for (CollegeId c = 0; c < market.num_colleges(); ++c) {
    json list = json::array();
    for (ContractId x : market.CollegePreference(c)) {
      list.push_back(market.student_name(market.student_of(x)));
      w.push_back({market.student_name(market.student_of(x)),
                   market.college_name(c), WeightText(market.weights()[x])});
    }
    cp[market.college_name(c)] = list;
  }
  j["student_prefs"] = sp;
  j["college_prefs"] = cp;
  j["weights"] = w;
  json ml = json::array();
  for (StudentId s : order.order()) ml.push_back(market.student_name(s));
  j["master_list"] = ml;
  j["constraints"] = SpecToJson(spec, market);
  return j;
}

json MatchingToJson(const Market& market, const Matching& y) {
  json pairs = json::array();
  for (ContractId x : y.Contracts()) {
    pairs.push_back({market.student_name(market.student_of(x)),
                     market.college_name(market.college_of(x))});
  }
  return json{{"matching", pairs}};
}

Matching ParseMatching(const json& j, const Market& market) {
  const json& pairs = j.is_object() ? j.at("matching") : j;
  std::vector<std::string> students, colleges;
  for (StudentId s = 0; s < market.num_students(); ++s) {
    students.push_back(market.student_name(s));
  }
  for (CollegeId c = 0; c < market.num_colleges(); ++c) {
    colleges.push_back(market.college_name(c));
  }
  std::vector<ContractId> contracts;
  for (const json& pair : pairs) {
    if (!pair.is_array() || pair.size() != 2) {
      throw ParseError("matching entries must be [student, college]");
    }
    const auto x = market.FindContract(Lookup(students, pair[0], "student"),
                                       Lookup(colleges, pair[1], "college"));
    if (!x) throw ParseError("matching names a missing contract");
    contracts.push_back(*x);
  }
  try {
    return Matching::FromContracts(market, contracts);
  } catch (const InvalidMarketError& e) {
    throw ParseError(e.what());
  }
}

}  // namespace distmatch
