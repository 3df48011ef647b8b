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

#ifndef DATADESC_RULE_EXPR_HPP_
#define DATADESC_RULE_EXPR_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "datadesc/diagnostic.hpp"

namespace datadesc {

enum class RuleKind {
  AttributeRef,
  NumberLit,
  StringLit,
  BoolLit,
  Compare,
  Arith,
  Logic,
  Not,
};

enum class RuleOp {
  None,
  Eq,
  Neq,
  Lt,
  Le,
  Gt,
  Ge,
  Add,
  Sub,
  Mul,
  Div,
  And,
  Or,
  Implies,
};

/// Expression tree of the consistency-rule language: comparisons,
/// arithmetic and boolean connectives over the attributes of one instance.
struct RuleExpr {
  RuleKind kind = RuleKind::BoolLit;
  RuleOp op = RuleOp::None;
  std::string text;  // attribute name or string literal
  double number = 0;
  bool boolean = false;
  std::vector<RuleExpr> operands;

  friend bool operator==(const RuleExpr&, const RuleExpr&) = default;

  static RuleExpr attribute(std::string name);
  static RuleExpr number_lit(double value);
  static RuleExpr string_lit(std::string value);
  static RuleExpr bool_lit(bool value);
  static RuleExpr binary(RuleOp op, RuleExpr lhs, RuleExpr rhs);
  static RuleExpr negate(RuleExpr operand);
};

RuleKind kind_of(RuleOp op);
std::string_view op_symbol(RuleOp op);

struct RuleParseResult {
  std::optional<RuleExpr> expr;
  std::vector<Diagnostic> diagnostics;
};

/// Parses rule text. `line`/`col` give the position of the first character
/// in the enclosing document.
RuleParseResult parse_rule_expression(std::string_view text, int line = 1,
                                      int col = 1);

/// Canonical text with the minimum parentheses needed to parse back to the
/// same tree.
std::string print_rule_expression(const RuleExpr& expr);

/// Distinct attribute names in first-occurrence order.
std::vector<std::string> referenced_attributes(const RuleExpr& expr);

/// Shortest decimal text that reads back as the same double.
std::string format_number(double value);

}  // namespace datadesc

#endif  // DATADESC_RULE_EXPR_HPP_
