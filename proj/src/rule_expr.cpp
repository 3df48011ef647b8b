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

#include "datadesc/rule_expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <system_error>
#include <utility>

namespace datadesc {

RuleExpr RuleExpr::attribute(std::string name) {
  RuleExpr e;
  e.kind = RuleKind::AttributeRef;
  e.text = std::move(name);
  return e;
}

RuleExpr RuleExpr::number_lit(double value) {
  RuleExpr e;
  e.kind = RuleKind::NumberLit;
  e.number = value;
  return e;
}

RuleExpr RuleExpr::string_lit(std::string value) {
  RuleExpr e;
  e.kind = RuleKind::StringLit;
  e.text = std::move(value);
  return e;
}

RuleExpr RuleExpr::bool_lit(bool value) {
  RuleExpr e;
  e.kind = RuleKind::BoolLit;
  e.boolean = value;
  return e;
}

RuleExpr RuleExpr::binary(RuleOp op, RuleExpr lhs, RuleExpr rhs) {
  RuleExpr e;
  e.kind = kind_of(op);
  e.op = op;
  e.operands.push_back(std::move(lhs));
  e.operands.push_back(std::move(rhs));
  return e;
}

RuleExpr RuleExpr::negate(RuleExpr operand) {
  RuleExpr e;
  e.kind = RuleKind::Not;
  e.operands.push_back(std::move(operand));
  return e;
}

RuleKind kind_of(RuleOp op) {
  switch (op) {
    case RuleOp::Eq:
    case RuleOp::Neq:
    case RuleOp::Lt:
    case RuleOp::Le:
    case RuleOp::Gt:
    case RuleOp::Ge:
      return RuleKind::Compare;
    case RuleOp::Add:
    case RuleOp::Sub:
    case RuleOp::Mul:
    case RuleOp::Div:
      return RuleKind::Arith;
    case RuleOp::And:
    case RuleOp::Or:
    case RuleOp::Implies:
      return RuleKind::Logic;
    case RuleOp::None:
      break;
  }
  return RuleKind::Not;
}

std::string_view op_symbol(RuleOp op) {
  switch (op) {
    case RuleOp::Eq: return "=";
    case RuleOp::Neq: return "<>";
    case RuleOp::Lt: return "<";
    case RuleOp::Le: return "<=";
    case RuleOp::Gt: return ">";
    case RuleOp::Ge: return ">=";
    case RuleOp::Add: return "+";
    case RuleOp::Sub: return "-";
    case RuleOp::Mul: return "*";
    case RuleOp::Div: return "/";
    case RuleOp::And: return "and";
    case RuleOp::Or: return "or";
    case RuleOp::Implies: return "implies";
    case RuleOp::None: break;
  }
  return "";
}

std::string format_number(double value) {
  if (value == 0) return "0";  // folds -0
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) return "0";
  return std::string(buf, end);
}

namespace {

enum class Tok { Ident, Number, String, Op, LParen, RParen, End, Bad };

struct Token {
  Tok type = Tok::End;
  std::string text;
  double number = 0;
  SourceSpan span;
};

class Lexer {
 public:
  Lexer(std::string_view text, int line, int col)
      : text_(text), line_(line), col_(col) {}

  std::vector<Token> run(std::vector<Diagnostic>& diags) {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t;
      int sl = line_, sc = col_;
      if (pos_ >= text_.size()) {
        t.type = Tok::End;
        t.span = SourceSpan::point(sl, sc);
        out.push_back(t);
        return out;
      }
      char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t b = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_'))
          advance();
        t.type = Tok::Ident;
        t.text = std::string(text_.substr(b, pos_ - b));
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '.' && pos_ + 1 < text_.size() &&
                  std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
        size_t b = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '.'))
          advance();
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
          size_t save = pos_;
          int save_col = col_;
          advance();
          if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-'))
            advance();
          if (pos_ < text_.size() &&
              std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_])))
              advance();
          } else {
            pos_ = save;
            col_ = save_col;
          }
        }
        t.text = std::string(text_.substr(b, pos_ - b));
        auto [ptr, ec] = std::from_chars(t.text.data(),
                                         t.text.data() + t.text.size(),
                                         t.number);
        t.type = (ec == std::errc{} && ptr == t.text.data() + t.text.size())
                     ? Tok::Number
                     : Tok::Bad;
        if (t.type == Tok::Bad) {
          diags.push_back(make_diagnostic(
              "E003", "malformed number literal '" + t.text + "'",
              {sl, sc, line_, col_}));
        }
      } else if (c == '"' || c == '\'') {
        char quote = c;
        advance();
        std::string value;
        bool closed = false;
        while (pos_ < text_.size()) {
          char d = text_[pos_];
          if (d == '\n') break;
          if (d == quote) {
            advance();
            closed = true;
            break;
          }
          if (d == '\\' && pos_ + 1 < text_.size()) {
            char e = text_[pos_ + 1];
            advance();
            advance();
            switch (e) {
              case 'n': value += '\n'; break;
              case 't': value += '\t'; break;
              case '"': case '\\': case '\'': value += e; break;
              default: value += '\\'; value += e; break;
            }
            continue;
          }
          value += d;
          advance();
        }
        if (!closed) {
          diags.push_back(make_diagnostic("E002", "unterminated string literal",
                                          {sl, sc, line_, col_}));
          t.type = Tok::Bad;
        } else {
          t.type = Tok::String;
        }
        t.text = std::move(value);
      } else if (c == '(') {
        advance();
        t.type = Tok::LParen;
        t.text = "(";
      } else if (c == ')') {
        advance();
        t.type = Tok::RParen;
        t.text = ")";
      } else {
        static constexpr std::string_view kTwo[] = {"<=", ">=", "<>", "!="};
        t.type = Tok::Op;
        for (auto op : kTwo) {
          if (text_.substr(pos_, 2) == op) {
            t.text = std::string(op);
            advance();
            advance();
            break;
          }
        }
        if (t.text.empty()) {
          if (std::string_view("=<>+-*/").find(c) != std::string_view::npos) {
            t.text = std::string(1, c);
            advance();
          } else {
            advance_codepoint();
            t.type = Tok::Bad;
            diags.push_back(make_diagnostic(
                "E001", "unexpected character in rule expression",
                {sl, sc, line_, col_}));
          }
        }
      }
      t.span = {sl, sc, line_, col_};
      out.push_back(std::move(t));
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
      ++col_;
    }
    ++pos_;
  }
  void advance_codepoint() {
    advance();
    while (pos_ < text_.size() &&
           (static_cast<unsigned char>(text_[pos_]) & 0xC0) == 0x80)
      ++pos_;
  }
  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      advance();
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_;
  int col_;
};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

bool is_word(const Token& t, std::string_view w) {
  return t.type == Tok::Ident && iequals(t.text, w);
}

bool is_reserved(std::string_view w) {
  for (auto r : {"and", "or", "implies", "not", "true", "false"})
    if (iequals(w, r)) return true;
  return false;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, std::vector<Diagnostic>& diags)
      : toks_(std::move(toks)), diags_(diags) {}

  std::optional<RuleExpr> parse() {
    auto e = implies();
    if (e && peek().type != Tok::End) {
      error("unexpected '" + peek().text + "' in rule expression");
      return std::nullopt;
    }
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  void error(std::string msg) {
    if (!failed_) diags_.push_back(make_diagnostic("E001", msg, peek().span));
    failed_ = true;
  }

  std::optional<RuleExpr> implies() {
    auto lhs = disjunction();
    while (lhs && is_word(peek(), "implies")) {
      next();
      auto rhs = disjunction();
      if (!rhs) return std::nullopt;
      lhs = RuleExpr::binary(RuleOp::Implies, std::move(*lhs), std::move(*rhs));
    }
    return lhs;
  }

  std::optional<RuleExpr> disjunction() {
    auto lhs = conjunction();
    while (lhs && is_word(peek(), "or")) {
      next();
      auto rhs = conjunction();
      if (!rhs) return std::nullopt;
      lhs = RuleExpr::binary(RuleOp::Or, std::move(*lhs), std::move(*rhs));
    }
    return lhs;
  }

  std::optional<RuleExpr> conjunction() {
    auto lhs = comparison();
    while (lhs && is_word(peek(), "and")) {
      next();
      auto rhs = comparison();
      if (!rhs) return std::nullopt;
      lhs = RuleExpr::binary(RuleOp::And, std::move(*lhs), std::move(*rhs));
    }
    return lhs;
  }

  static std::optional<RuleOp> compare_op(const Token& t) {
    if (t.type != Tok::Op) return std::nullopt;
    if (t.text == "=") return RuleOp::Eq;
    if (t.text == "<>" || t.text == "!=") return RuleOp::Neq;
    if (t.text == "<") return RuleOp::Lt;
    if (t.text == "<=") return RuleOp::Le;
    if (t.text == ">") return RuleOp::Gt;
    if (t.text == ">=") return RuleOp::Ge;
    return std::nullopt;
  }

  std::optional<RuleExpr> comparison() {
    auto lhs = additive();
    if (!lhs) return std::nullopt;
    if (auto op = compare_op(peek())) {
      next();
      auto rhs = additive();
      if (!rhs) return std::nullopt;
      if (compare_op(peek())) {
        error("comparisons cannot be chained; add parentheses");
        return std::nullopt;
      }
      return RuleExpr::binary(*op, std::move(*lhs), std::move(*rhs));
    }
    return lhs;
  }

  std::optional<RuleExpr> additive() {
    auto lhs = multiplicative();
    while (lhs && peek().type == Tok::Op &&
           (peek().text == "+" || peek().text == "-")) {
      RuleOp op = next().text == "+" ? RuleOp::Add : RuleOp::Sub;
      auto rhs = multiplicative();
      if (!rhs) return std::nullopt;
      lhs = RuleExpr::binary(op, std::move(*lhs), std::move(*rhs));
    }
    return lhs;
  }

  std::optional<RuleExpr> multiplicative() {
    auto lhs = unary();
    while (lhs && peek().type == Tok::Op &&
           (peek().text == "*" || peek().text == "/")) {
      RuleOp op = next().text == "*" ? RuleOp::Mul : RuleOp::Div;
      auto rhs = unary();
      if (!rhs) return std::nullopt;
      lhs = RuleExpr::binary(op, std::move(*lhs), std::move(*rhs));
    }
    return lhs;
  }

  std::optional<RuleExpr> unary() {
    if (is_word(peek(), "not")) {
      next();
      auto operand = unary();
      if (!operand) return std::nullopt;
      return RuleExpr::negate(std::move(*operand));
    }
    if (peek().type == Tok::Op && peek().text == "-") {
      next();
      if (peek().type == Tok::Number) return RuleExpr::number_lit(-next().number);
      auto operand = unary();
      if (!operand) return std::nullopt;
      return RuleExpr::binary(RuleOp::Sub, RuleExpr::number_lit(0),
                              std::move(*operand));
    }
    return primary();
  }

  std::optional<RuleExpr> primary() {
    const Token& t = peek();
    switch (t.type) {
      case Tok::Number:
        return RuleExpr::number_lit(next().number);
      case Tok::String:
        return RuleExpr::string_lit(next().text);
      case Tok::Ident:
        if (iequals(t.text, "true") || iequals(t.text, "false")) {
          return RuleExpr::bool_lit(iequals(next().text, "true"));
        }
        if (is_reserved(t.text)) {
          error("unexpected '" + t.text + "' in rule expression");
          return std::nullopt;
        }
        return RuleExpr::attribute(next().text);
      case Tok::LParen: {
        next();
        auto inner = implies();
        if (!inner) return std::nullopt;
        if (peek().type != Tok::RParen) {
          error("expected ')' in rule expression");
          return std::nullopt;
        }
        next();
        return inner;
      }
      case Tok::End:
        error("unexpected end of rule expression");
        return std::nullopt;
      case Tok::Bad:
        failed_ = true;  // already reported by the lexer
        return std::nullopt;
      default:
        error("unexpected '" + t.text + "' in rule expression");
        return std::nullopt;
    }
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::vector<Diagnostic>& diags_;
  bool failed_ = false;
};

int precedence(const RuleExpr& e) {
  switch (e.kind) {
    case RuleKind::Logic:
      return e.op == RuleOp::Implies ? 1 : e.op == RuleOp::Or ? 2 : 3;
    case RuleKind::Compare:
      return 4;
    case RuleKind::Arith:
      return (e.op == RuleOp::Add || e.op == RuleOp::Sub) ? 5 : 6;
    case RuleKind::Not:
      return 7;
    default:
      return 8;
  }
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + '"';
}

void print_to(const RuleExpr& e, std::string& out);

void print_operand(const RuleExpr& e, bool parens, std::string& out) {
  if (parens) out += '(';
  print_to(e, out);
  if (parens) out += ')';
}

void print_to(const RuleExpr& e, std::string& out) {
  switch (e.kind) {
    case RuleKind::AttributeRef:
      out += e.text;
      return;
    case RuleKind::NumberLit:
      out += format_number(e.number);
      return;
    case RuleKind::StringLit:
      out += quote(e.text);
      return;
    case RuleKind::BoolLit:
      out += e.boolean ? "true" : "false";
      return;
    case RuleKind::Not:
      out += "not ";
      print_operand(e.operands[0], precedence(e.operands[0]) < 7, out);
      return;
    default:
      break;
  }
  int p = precedence(e);
  const RuleExpr& lhs = e.operands[0];
  const RuleExpr& rhs = e.operands[1];
  bool chain_free = e.kind == RuleKind::Compare;
  print_operand(lhs, chain_free ? precedence(lhs) <= p : precedence(lhs) < p,
                out);
  out += ' ';
  out += op_symbol(e.op);
  out += ' ';
  print_operand(rhs, precedence(rhs) <= p, out);
}

void collect(const RuleExpr& e, std::vector<std::string>& out) {
  if (e.kind == RuleKind::AttributeRef &&
      std::find(out.begin(), out.end(), e.text) == out.end()) {
    out.push_back(e.text);
  }
  for (const auto& o : e.operands) collect(o, out);
}

}  // namespace

RuleParseResult parse_rule_expression(std::string_view text, int line,
                                      int col) {
  RuleParseResult result;
  auto tokens = Lexer(text, line, col).run(result.diagnostics);
  if (has_errors(result.diagnostics)) return result;
  auto expr = Parser(std::move(tokens), result.diagnostics).parse();
  if (!has_errors(result.diagnostics)) result.expr = std::move(expr);
  return result;
}

std::string print_rule_expression(const RuleExpr& expr) {
  std::string out;
  print_to(expr, out);
  return out;
}

std::vector<std::string> referenced_attributes(const RuleExpr& expr) {
  std::vector<std::string> out;
  collect(expr, out);
  return out;
}

}  // namespace datadesc
