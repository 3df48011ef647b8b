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

#include "datadesc/diagnostic.hpp"

#include <algorithm>
#include <tuple>
#include <utility>

namespace datadesc {

bool SourceSpan::contains(int line, int col) const {
  auto pos = std::make_pair(line, col);
  return std::make_pair(start_line, start_col) <= pos &&
         pos <= std::make_pair(end_line, end_col);
}

Diagnostic make_diagnostic(std::string code, std::string message,
                           SourceSpan span) {
  Severity severity =
      (!code.empty() && code[0] == 'W') ? Severity::Warning : Severity::Error;
  return Diagnostic{std::move(code), severity, std::move(message), span};
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return count_errors(diagnostics) > 0;
}

int count_errors(const std::vector<Diagnostic>& diagnostics) {
  return static_cast<int>(
      std::count_if(diagnostics.begin(), diagnostics.end(), [](const auto& d) {
        return d.severity == Severity::Error;
      }));
}

std::string_view severity_name(Severity severity) {
  return severity == Severity::Error ? "error" : "warning";
}

std::string format_diagnostic(std::string_view file, const Diagnostic& d) {
  std::string out(file);
  out += ':' + std::to_string(d.span.start_line) + ':' +
         std::to_string(d.span.start_col) + ": " + d.code + ' ';
  out += severity_name(d.severity);
  out += ": " + d.message;
  return out;
}

nlohmann::json span_to_json(const SourceSpan& span) {
  return {{"start_line", span.start_line},
          {"start_col", span.start_col},
          {"end_line", span.end_line},
          {"end_col", span.end_col}};
}

nlohmann::json diagnostic_to_json(const Diagnostic& d) {
  return {{"code", d.code},
          {"severity", std::string(severity_name(d.severity))},
          {"message", d.message},
          {"span", span_to_json(d.span)}};
}

nlohmann::json diagnostics_to_json(const std::vector<Diagnostic>& ds) {
  auto out = nlohmann::json::array();
  for (const auto& d : ds) out.push_back(diagnostic_to_json(d));
  return out;
}

void sort_diagnostics(std::vector<Diagnostic>& ds) {
  std::stable_sort(ds.begin(), ds.end(), [](const auto& a, const auto& b) {
    return std::tie(a.span.start_line, a.span.start_col, a.code) <
           std::tie(b.span.start_line, b.span.start_col, b.code);
  });
}

}  // namespace datadesc
