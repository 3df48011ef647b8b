// Copyright 2026 The Datadesc Authors
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

#ifndef DATADESC_MODEL_JSON_HPP_
#define DATADESC_MODEL_JSON_HPP_

#include <string>

#include <json.hpp>

#include "datadesc/model.hpp"

namespace datadesc {

/// Canonical JSON form: snake_case keys, absent optionals omitted, named
/// lists (instances, attributes, rules, processes, sources, issues) sorted
/// by name, rule expressions stored as printed text.
nlohmann::json to_json(const DatasetDescription& model);

/// `to_json(model).dump(indent)`.
std::string to_json_string(const DatasetDescription& model, int indent = 2);

}  // namespace datadesc

#endif  // DATADESC_MODEL_JSON_HPP_
