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

#ifndef DATADESC_DOCGEN_HPP_
#define DATADESC_DOCGEN_HPP_

#include <string>
#include <string_view>

#include "datadesc/model.hpp"

namespace datadesc {

/// CommonMark document: one H1 (the title), one H2 per present part in
/// DSL order, tables for attributes and statistics.
std::string to_markdown(const DatasetDescription& model);

/// Standalone HTML5 document with the same content as to_markdown.
std::string to_html(const DatasetDescription& model);

std::string html_escape(std::string_view text);
std::string markdown_escape(std::string_view text);

}  // namespace datadesc

#endif  // DATADESC_DOCGEN_HPP_
