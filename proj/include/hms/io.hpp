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

#pragma once

#include <string>
#include <variant>

#include <nlohmann/json_fwd.hpp>

#include "hms/nfold.hpp"
#include "hms/scheduling.hpp"

namespace hms {

// Instance files are JSON with a top-level "problem" discriminator in
// {"q-cmax","r-cmax","r-wc","nfold","binpacking"}. Every big integer is
// a decimal string, rationals are "p/q". Unknown fields are rejected;
// errors carry the offending field path.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

using InstanceDocument = std::variant<SchedulingInstance, NFoldInstance, BinPackingInstance>;

InstanceDocument parse_instance(const nlohmann::json& doc);
InstanceDocument parse_instance_text(const std::string& text);
nlohmann::json serialize_instance(const InstanceDocument& doc);

struct AssignmentDocument {
  Rat objective;
  std::vector<IntVec> counts;  // [type][machine]
};

AssignmentDocument parse_assignment(const nlohmann::json& doc);
AssignmentDocument parse_assignment_text(const std::string& text);
nlohmann::json serialize_assignment(const AssignmentDocument& doc);

}  // namespace hms
