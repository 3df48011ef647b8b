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

#ifndef DATADESC_DIAGNOSTIC_HPP_
#define DATADESC_DIAGNOSTIC_HPP_

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace datadesc {

/// A region of source text. Lines and columns are 1-based; columns count
/// Unicode code points. The end position is exclusive.
struct SourceSpan {
  int start_line = 1;
  int start_col = 1;
  int end_line = 1;
  int end_col = 1;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;

  bool contains(int line, int col) const;
  static SourceSpan point(int line, int col) { return {line, col, line, col}; }
  static SourceSpan cover(const SourceSpan& a, const SourceSpan& b) {
    return {a.start_line, a.start_col, b.end_line, b.end_col};
  }
};

enum class Severity { Error, Warning };

struct Diagnostic {
  std::string code;  // [EW][0-9]{3}
  Severity severity = Severity::Error;
  std::string message;
  SourceSpan span;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Builds a diagnostic whose severity follows the code prefix.
Diagnostic make_diagnostic(std::string code, std::string message,
                           SourceSpan span);

bool has_errors(const std::vector<Diagnostic>& diagnostics);
int count_errors(const std::vector<Diagnostic>& diagnostics);

std::string_view severity_name(Severity severity);

/// `FILE:LINE:COL: CODE severity: message`
std::string format_diagnostic(std::string_view file, const Diagnostic& d);

nlohmann::json span_to_json(const SourceSpan& span);
nlohmann::json diagnostic_to_json(const Diagnostic& d);
nlohmann::json diagnostics_to_json(const std::vector<Diagnostic>& ds);

/// Orders diagnostics by position, then code.
void sort_diagnostics(std::vector<Diagnostic>& ds);

}  // namespace datadesc

#endif  // DATADESC_DIAGNOSTIC_HPP_
