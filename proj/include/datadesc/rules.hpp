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

#ifndef DATADESC_RULES_HPP_
#define DATADESC_RULES_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include "datadesc/diagnostic.hpp"
#include "datadesc/ingest.hpp"
#include "datadesc/model.hpp"

namespace datadesc {

enum class ValueType { Unknown, Number, String, Boolean };

std::string_view to_string(ValueType type);

/// Static type of an attribute: Categorical is String, Numerical is Number.
ValueType value_type_of(AttributeType type);

/// E030 for attributes the instance does not declare, E031 for operand
/// mismatches and non-boolean rules. Empty iff the rule is well typed.
std::vector<Diagnostic> typecheck_rule(const ConsistencyRule& rule, const DataInstance& instance,
                                       const SourceSpan& span = {});

struct RuleVerdict {
  bool holds = true;
  std::vector<size_t> violating_rows;  // ascending, 0-based
  size_t rows_checked = 0;

  friend bool operator==(const RuleVerdict&, const RuleVerdict&) = default;
};

/// A referenced attribute has no column in the table.
class SchemaMismatch : public std::runtime_error {
 public:
  SchemaMismatch(const std::string& column, const std::string& what)
      : std::runtime_error(what), column_(column) {}
  const std::string& column() const { return column_; }

 private:
  std::string column_;
};

/// The rule is ill typed against the table's inferred column types.
class RuleTypeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluates the rule over every row, column at a time. Column types are
/// inferred from the data (numeric when every present cell is a number).
/// A row is violating when the expression is false, a referenced cell is
/// missing, or a division by zero occurs anywhere in the expression.
RuleVerdict evaluate_rule(const ConsistencyRule& rule, const Table& table);

}  // namespace datadesc

#endif  // DATADESC_RULES_HPP_
