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

#ifndef DATADESC_PRINTER_HPP_
#define DATADESC_PRINTER_HPP_

#include <string>
#include <string_view>

#include "datadesc/model.hpp"

namespace datadesc {

/// Canonical `.ddesc` text for a well-formed model. Sections are written in
/// the order Metadata, Composition, Data Provenance, Social Concerns; absent
/// or empty parts are omitted.
std::string pretty_print(const DatasetDescription& model);

/// Double-quoted literal with `\"`, `\\`, `\n` and `\t` escapes.
std::string quote_string(std::string_view text);

}  // namespace datadesc

#endif  // DATADESC_PRINTER_HPP_
