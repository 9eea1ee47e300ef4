// Copyright 2026 The hms Authors
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

#include "hms/io.hpp"

#include <set>

#include <nlohmann/json.hpp>

namespace hms {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

void expect_object(const json& j, const std::string& path,
                   const std::set<std::string>& required,
                   const std::set<std::string>& optional = {}) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [key, _] : j.items())
    if (!required.count(key) && !optional.count(key)) fail(path + "." + key, "unknown field");
  for (const std::string& key : required)
    if (!j.contains(key)) fail(path + "." + key, "missing field");
}

const json& field(const json& j, const std::string& path, const std::string& key) {
  if (!j.contains(key)) fail(path + "." + key, "missing field");
  return j.at(key);
}

long get_count(const json& j, const std::string& path) {
  if (j.is_number_unsigned() || j.is_number_integer()) return j.get<long>();
  fail(path, "expected an integer");
}

Int get_int(const json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return parse_int(j.get<std::string>());
    } catch (const std::exception& e) {
      fail(path, e.what());
    }
  }
  if (j.is_number_unsigned() || j.is_number_integer()) return Int(j.get<long>());
  fail(path, "expected an integer or a decimal string");
}

Rat get_rat(const json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return parse_rat(j.get<std::string>());
    } catch (const std::exception& e) {
      fail(path, e.what());
    }
  }
  if (j.is_number_unsigned() || j.is_number_integer()) return Rat(j.get<long>());
  fail(path, "expected a rational \"p/q\" string or an integer");
}

IntVec get_int_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  IntVec out;
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(get_int(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<Rat> get_rat_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  std::vector<Rat> out;
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(get_rat(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

IntMatrix get_matrix(const json& j, const std::string& path) {
  expect_object(j, path, {"rows", "cols", "entries"});
  long rows = get_count(field(j, path, "rows"), path + ".rows");
  long cols = get_count(field(j, path, "cols"), path + ".cols");
  if (rows < 0 || cols < 0) fail(path, "negative matrix shape");
  const json& entries = field(j, path, "entries");
  if (!entries.is_array() || entries.size() != static_cast<size_t>(rows))
    fail(path + ".entries", "expected " + std::to_string(rows) + " rows");
  IntMatrix m(rows, cols);
  for (long r = 0; r < rows; ++r) {
    const std::string row_path = path + ".entries[" + std::to_string(r) + "]";
    IntVec row = get_int_array(entries[r], row_path);
    if (row.size() != static_cast<size_t>(cols))
      fail(row_path, "expected " + std::to_string(cols) + " columns");
    for (long c = 0; c < cols; ++c) m.at(r, c) = row[c];
  }
  return m;
}

SchedulingInstance parse_scheduling(const json& j, ProblemTag tag) {
  expect_object(j, "$", {"problem", "kinds", "machines", "job_types"});
  SchedulingInstance inst;
  inst.tag = tag;
  long kinds = get_count(field(j, "$", "kinds"), "$.kinds");
  if (kinds < 1 || kinds > 1'000'000) fail("$.kinds", "kind count out of range");
  inst.kinds = static_cast<int>(kinds);

  const json& machines = field(j, "$", "machines");
  if (!machines.is_array()) fail("$.machines", "expected an array");
  for (size_t i = 0; i < machines.size(); ++i) {
    const std::string path = "$.machines[" + std::to_string(i) + "]";
    expect_object(machines[i], path, {}, {"kind", "speed"});
    Machine mc;
    if (machines[i].contains("kind"))
      mc.kind = static_cast<int>(get_count(machines[i].at("kind"), path + ".kind"));
    if (machines[i].contains("speed")) mc.speed = get_int(machines[i].at("speed"), path + ".speed");
    inst.machines.push_back(std::move(mc));
  }

  const json& types = field(j, "$", "job_types");
  if (!types.is_array()) fail("$.job_types", "expected an array");
  for (size_t i = 0; i < types.size(); ++i) {
    const std::string path = "$.job_types[" + std::to_string(i) + "]";
    expect_object(types[i], path, {"processing", "multiplicity"}, {"weight"});
    JobType jt;
    const json& proc = types[i].at("processing");
    if (!proc.is_array()) fail(path + ".processing", "expected an array");
    for (size_t k = 0; k < proc.size(); ++k) {
      const std::string ppath = path + ".processing[" + std::to_string(k) + "]";
      if (proc[k].is_string() && proc[k].get<std::string>() == "forbidden")
        jt.processing.push_back(std::nullopt);
      else
        jt.processing.push_back(get_int(proc[k], ppath));
    }
    if (types[i].contains("weight")) jt.weight = get_int(types[i].at("weight"), path + ".weight");
    jt.multiplicity = get_int(types[i].at("multiplicity"), path + ".multiplicity");
    inst.job_types.push_back(std::move(jt));
  }
  try {
    inst.validate();
  } catch (const std::invalid_argument& e) {
    fail("$", e.what());
  }
  return inst;
}

NFoldInstance parse_nfold(const json& j) {
  expect_object(j, "$", {"problem", "A1", "A2", "n", "b", "l", "u", "objective"});
  NFoldInstance inst;
  inst.A1 = get_matrix(j.at("A1"), "$.A1");
  inst.A2 = get_matrix(j.at("A2"), "$.A2");
  inst.n = get_count(j.at("n"), "$.n");
  inst.b = get_int_array(j.at("b"), "$.b");
  inst.l = get_int_array(j.at("l"), "$.l");
  inst.u = get_int_array(j.at("u"), "$.u");
  const json& obj = j.at("objective");
  expect_object(obj, "$.objective", {"q", "c"});
  inst.objective.quad = get_rat_array(obj.at("q"), "$.objective.q");
  inst.objective.linear = get_rat_array(obj.at("c"), "$.objective.c");
  try {
    inst.validate();
  } catch (const std::invalid_argument& e) {
    fail("$", e.what());
  }
  return inst;
}

BinPackingInstance parse_binpacking(const json& j) {
  expect_object(j, "$", {"problem", "bins", "capacity", "items"});
  BinPackingInstance bp;
  bp.bins = get_count(j.at("bins"), "$.bins");
  bp.capacity = get_int(j.at("capacity"), "$.capacity");
  bp.items = get_int_array(j.at("items"), "$.items");
  if (bp.bins < 0) fail("$.bins", "negative bin count");
  if (bp.capacity < 0) fail("$.capacity", "negative capacity");
  for (size_t i = 0; i < bp.items.size(); ++i)
    if (bp.items[i] < 1) fail("$.items[" + std::to_string(i) + "]", "item sizes must be positive");
  return bp;
}

json int_to_json(const Int& v) { return v.get_str(); }
json rat_to_json(const Rat& v) { return rat_to_string(v); }

json int_array(const IntVec& v) {
  json out = json::array();
  for (const Int& e : v) out.push_back(int_to_json(e));
  return out;
}

json rat_array(const std::vector<Rat>& v) {
  json out = json::array();
  for (const Rat& e : v) out.push_back(rat_to_json(e));
  return out;
}

json matrix_to_json(const IntMatrix& m) {
  json entries = json::array();
  for (long r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (long c = 0; c < m.cols(); ++c) row.push_back(int_to_json(m.at(r, c)));
    entries.push_back(std::move(row));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

}  // namespace

InstanceDocument parse_instance(const json& doc) {
  if (!doc.is_object()) fail("$", "expected an object");
  const json& tag = field(doc, "$", "problem");
  if (!tag.is_string()) fail("$.problem", "expected a string");
  const std::string problem = tag.get<std::string>();
  if (problem == "q-cmax") return parse_scheduling(doc, ProblemTag::kQCmax);
  if (problem == "r-cmax") return parse_scheduling(doc, ProblemTag::kRCmax);
  if (problem == "r-wc") return parse_scheduling(doc, ProblemTag::kRWeightedCompletion);
  if (problem == "nfold") return parse_nfold(doc);
  if (problem == "binpacking") return parse_binpacking(doc);
  fail("$.problem", "unknown problem kind \"" + problem + "\"");
}

InstanceDocument parse_instance_text(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) fail("$", "malformed json");
  return parse_instance(doc);
}

json serialize_instance(const InstanceDocument& doc) {
  if (const auto* inst = std::get_if<SchedulingInstance>(&doc)) {
    json out;
    switch (inst->tag) {
      case ProblemTag::kQCmax: out["problem"] = "q-cmax"; break;
      case ProblemTag::kRCmax: out["problem"] = "r-cmax"; break;
      case ProblemTag::kRWeightedCompletion: out["problem"] = "r-wc"; break;
    }
    out["kinds"] = inst->kinds;
    json machines = json::array();
    for (const Machine& mc : inst->machines)
      machines.push_back(json{{"kind", mc.kind}, {"speed", int_to_json(mc.speed)}});
    out["machines"] = std::move(machines);
    json types = json::array();
    for (const JobType& jt : inst->job_types) {
      json proc = json::array();
      for (const auto& p : jt.processing)
        proc.push_back(p ? json(int_to_json(*p)) : json("forbidden"));
      types.push_back(json{{"processing", std::move(proc)},
                           {"weight", int_to_json(jt.weight)},
                           {"multiplicity", int_to_json(jt.multiplicity)}});
    }
    out["job_types"] = std::move(types);
    return out;
  }
  if (const auto* prog = std::get_if<NFoldInstance>(&doc)) {
    return json{{"problem", "nfold"},
                {"A1", matrix_to_json(prog->A1)},
                {"A2", matrix_to_json(prog->A2)},
                {"n", prog->n},
                {"b", int_array(prog->b)},
                {"l", int_array(prog->l)},
                {"u", int_array(prog->u)},
                {"objective",
                 json{{"q", rat_array(prog->objective.quad)},
                      {"c", rat_array(prog->objective.linear)}}}};
  }
  const auto& bp = std::get<BinPackingInstance>(doc);
  return json{{"problem", "binpacking"},
              {"bins", bp.bins},
              {"capacity", int_to_json(bp.capacity)},
              {"items", int_array(bp.items)}};
}

AssignmentDocument parse_assignment(const json& doc) {
  expect_object(doc, "$", {"objective", "counts"});
  AssignmentDocument out;
  out.objective = get_rat(doc.at("objective"), "$.objective");
  const json& counts = doc.at("counts");
  if (!counts.is_array()) fail("$.counts", "expected an array");
  for (size_t j = 0; j < counts.size(); ++j) {
    out.counts.push_back(get_int_array(counts[j], "$.counts[" + std::to_string(j) + "]"));
    if (j > 0 && out.counts[j].size() != out.counts[0].size())
      fail("$.counts[" + std::to_string(j) + "]", "ragged count rows");
  }
  return out;
}

AssignmentDocument parse_assignment_text(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) fail("$", "malformed json");
  return parse_assignment(doc);
}

json serialize_assignment(const AssignmentDocument& doc) {
  json counts = json::array();
  for (const IntVec& row : doc.counts) counts.push_back(int_array(row));
  return json{{"objective", rat_to_json(doc.objective)}, {"counts", std::move(counts)}};
}

}  // namespace hms
