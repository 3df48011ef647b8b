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

#include "datadesc/rules.hpp"

#include <functional>
#include <string_view>

namespace datadesc {

std::string_view to_string(ValueType type) {
  switch (type) {
    case ValueType::Number: return "number";
    case ValueType::String: return "string";
    case ValueType::Boolean: return "boolean";
    case ValueType::Unknown: break;
  }
  return "unknown";
}

ValueType value_type_of(AttributeType type) {
  return type == AttributeType::Numerical ? ValueType::Number : ValueType::String;
}

namespace {

// Shared type rules; `lookup` maps an attribute to its type or nullopt.
class TypeChecker {
 public:
  using Lookup = std::function<std::optional<ValueType>(const std::string&)>;
  using Report = std::function<void(const std::string& code, const std::string& message)>;

  TypeChecker(Lookup lookup, Report report) : lookup_(std::move(lookup)), report_(std::move(report)) {}

  ValueType check(const RuleExpr& e) {
    switch (e.kind) {
      case RuleKind::AttributeRef: {
        auto t = lookup_(e.text);
        if (!t) {
          report_("E030", "unknown attribute '" + e.text + "'");
          return ValueType::Unknown;
        }
        return *t;
      }
      case RuleKind::NumberLit: return ValueType::Number;
      case RuleKind::StringLit: return ValueType::String;
      case RuleKind::BoolLit: return ValueType::Boolean;
      case RuleKind::Compare: {
        ValueType l = check(e.operands[0]), r = check(e.operands[1]);
        if (known(l) && known(r) && l != r) {
          report_("E031", "cannot compare " + describe(e.operands[0], l) + " with " +
                              describe(e.operands[1], r));
        }
        return ValueType::Boolean;
      }
      case RuleKind::Arith: {
        for (const auto& o : e.operands) {
          ValueType t = check(o);
          if (known(t) && t != ValueType::Number) {
            report_("E031", "arithmetic '" + std::string(op_symbol(e.op)) + "' needs numbers, got " +
                                describe(o, t));
          }
        }
        return ValueType::Number;
      }
      case RuleKind::Logic:
      case RuleKind::Not: {
        for (const auto& o : e.operands) {
          ValueType t = check(o);
          if (known(t) && t != ValueType::Boolean) {
            report_("E031", "'" + std::string(e.kind == RuleKind::Not ? "not" : op_symbol(e.op)) +
                                "' needs booleans, got " + describe(o, t));
          }
        }
        return ValueType::Boolean;
      }
    }
    return ValueType::Unknown;
  }

  void check_root(const RuleExpr& e) {
    ValueType t = check(e);
    if (known(t) && t != ValueType::Boolean)
      report_("E031", "rule must be a boolean expression, got " + describe(e, t));
  }

 private:
  static bool known(ValueType t) { return t != ValueType::Unknown; }
  static std::string describe(const RuleExpr& e, ValueType t) {
    std::string s(to_string(t));
    if (e.kind == RuleKind::AttributeRef) s += " attribute '" + e.text + "'";
    else s += " '" + print_rule_expression(e) + "'";
    return s;
  }

  Lookup lookup_;
  Report report_;
};

// Column-at-a-time values with a validity mask.
struct Vec {
  ValueType type = ValueType::Unknown;
  std::vector<double> num;
  std::vector<std::string_view> str;
  std::vector<char> boolean;
  std::vector<char> valid;
};

class Evaluator {
 public:
  explicit Evaluator(const Table& table) : table_(table), n_(table.rows()) {}

  Vec eval(const RuleExpr& e) {
    switch (e.kind) {
      case RuleKind::AttributeRef: return column(e.text);
      case RuleKind::NumberLit: {
        Vec v = blank(ValueType::Number);
        v.num.assign(n_, e.number);
        return v;
      }
      case RuleKind::StringLit: {
        Vec v = blank(ValueType::String);
        v.str.assign(n_, std::string_view(e.text));
        return v;
      }
      case RuleKind::BoolLit: {
        Vec v = blank(ValueType::Boolean);
        v.boolean.assign(n_, e.boolean);
        return v;
      }
      case RuleKind::Not: {
        Vec v = eval(e.operands[0]);
        for (auto& b : v.boolean) b = !b;
        return v;
      }
      case RuleKind::Logic: return logic(e.op, eval(e.operands[0]), eval(e.operands[1]));
      case RuleKind::Arith: return arith(e.op, eval(e.operands[0]), eval(e.operands[1]));
      case RuleKind::Compare: return compare(e.op, eval(e.operands[0]), eval(e.operands[1]));
    }
    return blank(ValueType::Unknown);
  }

 private:
  Vec blank(ValueType t) const {
    Vec v;
    v.type = t;
    v.valid.assign(n_, 1);
    return v;
  }

  Vec column(const std::string& name) {
    const Column* c = table_.find(name);
    Vec v = blank(c->is_numeric() ? ValueType::Number : ValueType::String);
    for (size_t i = 0; i < n_; ++i) {
      const Cell& cell = c->cells[i];
      v.valid[i] = !cell.is_missing();
      if (v.type == ValueType::Number) v.num.push_back(cell.number);
      else v.str.emplace_back(cell.text);
    }
    return v;
  }

  static void merge_valid(Vec& out, const Vec& a, const Vec& b) {
    for (size_t i = 0; i < out.valid.size(); ++i) out.valid[i] = a.valid[i] && b.valid[i];
  }

  Vec logic(RuleOp op, const Vec& a, const Vec& b) {
    Vec v = blank(ValueType::Boolean);
    merge_valid(v, a, b);
    v.boolean.resize(n_);
    for (size_t i = 0; i < n_; ++i) {
      bool x = a.boolean[i], y = b.boolean[i];
      v.boolean[i] = op == RuleOp::And ? (x && y) : op == RuleOp::Or ? (x || y) : (!x || y);
    }
    return v;
  }

  Vec arith(RuleOp op, const Vec& a, const Vec& b) {
    Vec v = blank(ValueType::Number);
    merge_valid(v, a, b);
    v.num.resize(n_);
    for (size_t i = 0; i < n_; ++i) {
      double x = a.num[i], y = b.num[i];
      switch (op) {
        case RuleOp::Add: v.num[i] = x + y; break;
        case RuleOp::Sub: v.num[i] = x - y; break;
        case RuleOp::Mul: v.num[i] = x * y; break;
        default:
          if (y == 0) {
            v.valid[i] = 0;
            v.num[i] = 0;
          } else {
            v.num[i] = x / y;
          }
      }
    }
    return v;
  }

  template <typename T>
  static bool apply(RuleOp op, const T& x, const T& y) {
    switch (op) {
      case RuleOp::Eq: return x == y;
      case RuleOp::Neq: return x != y;
      case RuleOp::Lt: return x < y;
      case RuleOp::Le: return x <= y;
      case RuleOp::Gt: return x > y;
      default: return x >= y;
    }
  }

  Vec compare(RuleOp op, const Vec& a, const Vec& b) {
    Vec v = blank(ValueType::Boolean);
    merge_valid(v, a, b);
    v.boolean.resize(n_);
    for (size_t i = 0; i < n_; ++i) {
      switch (a.type) {
        case ValueType::Number: v.boolean[i] = apply(op, a.num[i], b.num[i]); break;
        case ValueType::String: v.boolean[i] = apply(op, a.str[i], b.str[i]); break;
        default: v.boolean[i] = apply(op, a.boolean[i], b.boolean[i]);
      }
    }
    return v;
  }

  const Table& table_;
  size_t n_;
};

}  // namespace

std::vector<Diagnostic> typecheck_rule(const ConsistencyRule& rule, const DataInstance& instance,
                                       const SourceSpan& span) {
  std::vector<Diagnostic> out;
  TypeChecker checker(
      [&](const std::string& name) -> std::optional<ValueType> {
        if (const Attribute* a = instance.find_attribute(name)) return value_type_of(a->attr_type);
        return std::nullopt;
      },
      [&](const std::string& code, const std::string& message) {
        std::string where = code == "E030" ? " of instance '" + instance.name + "'" : "";
        out.push_back(make_diagnostic(code, "rule '" + rule.name + "': " + message + where, span));
      });
  checker.check_root(rule.expr);
  return out;
}

RuleVerdict evaluate_rule(const ConsistencyRule& rule, const Table& table) {
  for (const auto& name : referenced_attributes(rule.expr)) {
    if (!table.find(name))
      throw SchemaMismatch(name, "rule '" + rule.name + "' references column '" + name +
                                     "' which the table does not have");
  }
  std::string problem;
  TypeChecker checker(
      [&](const std::string& name) -> std::optional<ValueType> {
        return table.find(name)->is_numeric() ? ValueType::Number : ValueType::String;
      },
      [&](const std::string&, const std::string& message) {
        if (problem.empty()) problem = message;
      });
  checker.check_root(rule.expr);
  if (!problem.empty()) throw RuleTypeError("rule '" + rule.name + "': " + problem);

  RuleVerdict verdict;
  verdict.rows_checked = table.rows();
  Vec result = Evaluator(table).eval(rule.expr);
  for (size_t i = 0; i < verdict.rows_checked; ++i)
    if (!result.valid[i] || !result.boolean[i]) verdict.violating_rows.push_back(i);
  verdict.holds = verdict.violating_rows.empty();
  return verdict;
}

}  // namespace datadesc
