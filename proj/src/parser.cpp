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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <regex>
#include <utility>

#include "datadesc/model.hpp"
#include "datadesc/rule_expr.hpp"
#include "datadesc/syntax.hpp"

namespace datadesc {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Interior: return "Interior";
    case NodeKind::Keyword: return "Keyword";
    case NodeKind::Identifier: return "Identifier";
    case NodeKind::QualifiedName: return "QualifiedName";
    case NodeKind::String: return "String";
    case NodeKind::Phrase: return "Phrase";
    case NodeKind::Number: return "Number";
    case NodeKind::Percentage: return "Percentage";
    case NodeKind::Date: return "Date";
    case NodeKind::Token: return "Token";
    case NodeKind::Expression: return "Expression";
    case NodeKind::Punct: return "Punct";
    case NodeKind::Elision: return "Elision";
  }
  return "";
}

const SyntaxNode* SyntaxNode::child(std::string_view child_tag) const {
  for (const auto& c : children)
    if (!c.is_leaf() && c.tag == child_tag) return &c;
  return nullptr;
}

std::vector<const SyntaxNode*> SyntaxNode::children_tagged(
    std::string_view child_tag) const {
  std::vector<const SyntaxNode*> out;
  for (const auto& c : children)
    if (!c.is_leaf() && c.tag == child_tag) out.push_back(&c);
  return out;
}

const SyntaxNode* SyntaxNode::leaf(NodeKind leaf_kind) const {
  for (const auto& c : children)
    if (c.kind == leaf_kind) return &c;
  return nullptr;
}

const std::vector<std::string_view>& section_keywords() {
  static const std::vector<std::string_view> kSections = {
      "Metadata:", "Composition:", "Data Provenance:", "Social Concerns:"};
  return kSections;
}

namespace {

struct ParseAbort {};

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

bool valid_date(std::string_view s, Date& out) {
  static const std::regex kDate(R"(\d{2}-\d{2}-\d{4})");
  if (!std::regex_match(s.begin(), s.end(), kDate)) return false;
  int d = std::stoi(std::string(s.substr(0, 2)));
  int m = std::stoi(std::string(s.substr(3, 2)));
  int y = std::stoi(std::string(s.substr(6, 4)));
  if (m < 1 || m > 12 || d < 1) return false;
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30,
                                  31, 31, 30, 31, 30, 31};
  bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  int max_day = kDays[m - 1] + ((m == 2 && leap) ? 1 : 0);
  if (d > max_day) return false;
  out = Date{d, m, y};
  return true;
}

bool parse_decimal(std::string_view s, double& out) {
  static const std::regex kNumber(
      R"([+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?)");
  if (!std::regex_match(s.begin(), s.end(), kNumber)) return false;
  std::string_view body = s;
  if (!body.empty() && body[0] == '+') body.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), out);
  return ec == std::errc{} && ptr == body.data() + body.size();
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  ParseResult run() {
    ParseResult result;
    SyntaxNode& root = result.partial.root;
    root.tag = "Document";
    document(root);
    fix_spans(root);
    if (root.children.empty()) root.span = SourceSpan::point(1, 1);
    result.diagnostics = std::move(diags_);
    sort_diagnostics(result.diagnostics);
    if (!has_errors(result.diagnostics)) result.tree = result.partial;
    return result;
  }

 private:
  struct Mark {
    size_t pos;
    int line;
    int col;
  };

  // ---- cursor ---------------------------------------------------------

  bool eof() const { return pos_ >= src_.size(); }
  char cur() const { return eof() ? '\0' : src_[pos_]; }
  char at(size_t off) const {
    return pos_ + off < src_.size() ? src_[pos_ + off] : '\0';
  }
  Mark mark() const { return {pos_, line_, col_}; }
  void reset(Mark m) {
    pos_ = m.pos;
    line_ = m.line;
    col_ = m.col;
  }
  void advance() {
    if (eof()) return;
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(src_[pos_]) & 0xC0) != 0x80) {
      ++col_;
    }
    ++pos_;
  }
  SourceSpan span_from(Mark m) const { return {m.line, m.col, line_, col_}; }
  std::string_view slice_from(Mark m) const {
    return src_.substr(m.pos, pos_ - m.pos);
  }

  void skip_blank() {
    while (!eof() && is_blank(cur())) advance();
  }

  bool at_eol() {
    skip_blank();
    return eof() || cur() == '\n';
  }

  // Whitespace, newlines and whole-line `//` comments.
  void skip_trivia() {
    while (!eof()) {
      if (is_blank(cur()) || cur() == '\n') {
        advance();
      } else if (cur() == '/' && at(1) == '/' && line_only_blank_before()) {
        while (!eof() && cur() != '\n') advance();
      } else {
        break;
      }
    }
  }

  bool line_only_blank_before() const {
    size_t i = pos_;
    while (i > 0) {
      char c = src_[i - 1];
      if (c == '\n') return true;
      if (!is_blank(c)) return false;
      --i;
    }
    return true;
  }

  // ---- diagnostics ------------------------------------------------------

  void error(std::string code, std::string msg, SourceSpan span) {
    diags_.push_back(make_diagnostic(std::move(code), std::move(msg), span));
  }
  [[noreturn]] void fail(std::string code, std::string msg, SourceSpan span) {
    error(std::move(code), std::move(msg), span);
    throw ParseAbort{};
  }
  SourceSpan here_span() {
    // Span of the next word, for "unexpected token" messages.
    Mark m = mark();
    if (eof()) return SourceSpan::point(line_, col_);
    if (cur() == '\n') return SourceSpan::point(line_, col_);
    while (!eof() && !std::isspace(static_cast<unsigned char>(cur()))) advance();
    SourceSpan s = span_from(m);
    reset(m);
    return s;
  }
  std::string here_text() {
    Mark m = mark();
    while (!eof() && !std::isspace(static_cast<unsigned char>(cur()))) advance();
    std::string s(slice_from(m));
    reset(m);
    if (s.size() > 40) s = s.substr(0, 40) + "...";
    return s;
  }
  [[noreturn]] void unexpected(std::string_view expected) {
    skip_blank();
    if (eof()) {
      fail("E001", "unexpected end of input; expected " + std::string(expected),
           SourceSpan::point(line_, col_));
    }
    if (cur() == '\n') {
      fail("E001", "unexpected end of line; expected " + std::string(expected),
           SourceSpan::point(line_, col_));
    }
    auto span = here_span();
    fail("E001",
         "unexpected token '" + here_text() + "'; expected " +
             std::string(expected),
         span);
  }

  // ---- leaves -----------------------------------------------------------

  SyntaxNode make_leaf(NodeKind kind, Mark m, std::string value) {
    SyntaxNode n;
    n.kind = kind;
    n.span = span_from(m);
    n.text = std::string(slice_from(m));
    n.value = std::move(value);
    return n;
  }

  // Matches a keyword phrase. Words are separated by blanks in the input.
  // A trailing ':' in the pattern is mandatory; otherwise a colon is
  // optional and the keyword must end on a word boundary.
  std::optional<SyntaxNode> try_keyword(std::string_view pattern) {
    Mark m = mark();
    bool needs_colon = !pattern.empty() && pattern.back() == ':';
    std::string_view words = needs_colon ? pattern.substr(0, pattern.size() - 1)
                                         : pattern;
    size_t i = 0;
    while (i < words.size()) {
      if (words[i] == ' ') {
        if (eof() || !is_blank(cur()) || cur() == '\r') {
          reset(m);
          return std::nullopt;
        }
        skip_blank();
        ++i;
        continue;
      }
      if (eof() || std::tolower(static_cast<unsigned char>(cur())) !=
                       std::tolower(static_cast<unsigned char>(words[i]))) {
        reset(m);
        return std::nullopt;
      }
      advance();
      ++i;
    }
    if (needs_colon) {
      skip_blank();
      if (cur() != ':') {
        reset(m);
        return std::nullopt;
      }
      advance();
    } else {
      if (is_ident_char(cur()) || cur() == '-') {
        reset(m);
        return std::nullopt;
      }
      Mark before_colon = mark();
      skip_blank();
      if (cur() == ':') {
        advance();
      } else {
        reset(before_colon);
      }
    }
    SyntaxNode k = make_leaf(NodeKind::Keyword, m, std::string(pattern));
    k.tag = std::string(pattern);
    return k;
  }

  bool peek_keyword(std::string_view pattern) {
    Mark m = mark();
    bool ok = try_keyword(pattern).has_value();
    reset(m);
    return ok;
  }

  bool at_section_keyword() {
    for (auto kw : section_keywords())
      if (peek_keyword(kw)) return true;
    return false;
  }

  SyntaxNode read_string() {
    Mark m = mark();
    advance();  // opening quote
    std::string value;
    while (true) {
      if (eof() || cur() == '\n') {
        fail("E002", "unterminated string literal", span_from(m));
      }
      char c = cur();
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\') {
        char e = at(1);
        if (e == '"' || e == '\\') {
          value += e;
        } else if (e == 'n') {
          value += '\n';
        } else if (e == 't') {
          value += '\t';
        } else {
          value += '\\';
          if (e != '\n' && e != '\0') value += e;
        }
        advance();
        if (e != '\n' && e != '\0') advance();
        continue;
      }
      value += c;
      advance();
    }
    return make_leaf(NodeKind::String, m, std::move(value));
  }

  std::string_view trim_right(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
      s.remove_suffix(1);
    return s;
  }

  // Quoted string, or the rest of the line.
  SyntaxNode read_text(std::string_view what) {
    skip_blank();
    if (cur() == '"') return read_string();
    if (at_eol()) unexpected(what);
    Mark m = mark();
    Mark last = m;
    while (!eof() && cur() != '\n') {
      advance();
      if (!is_blank(src_[pos_ - 1])) last = mark();
    }
    reset(last);
    return make_leaf(NodeKind::Phrase, m, std::string(slice_from(m)));
  }

  // Comma-separated items on one line; each a quoted string or bare phrase.
  void read_list(SyntaxNode& field, std::string_view what) {
    if (at_eol()) return;
    while (true) {
      skip_blank();
      if (cur() == '"') {
        field.children.push_back(read_string());
      } else {
        Mark m = mark();
        Mark last = m;
        while (!eof() && cur() != '\n' && cur() != ',') {
          advance();
          if (!is_blank(src_[pos_ - 1])) last = mark();
        }
        reset(last);
        if (last.pos == m.pos) unexpected(what);
        field.children.push_back(
            make_leaf(NodeKind::Phrase, m, std::string(slice_from(m))));
      }
      skip_blank();
      if (cur() == ',') {
        Mark m = mark();
        advance();
        field.children.push_back(make_leaf(NodeKind::Punct, m, ","));
        continue;
      }
      if (at_eol()) return;
      unexpected("',' or end of line");
    }
  }

  SyntaxNode read_identifier(std::string_view what) {
    skip_blank();
    if (!is_ident_start(cur())) unexpected(what);
    Mark m = mark();
    while (is_ident_char(cur())) advance();
    auto n = make_leaf(NodeKind::Identifier, m, "");
    n.value = n.text;
    return n;
  }

  SyntaxNode read_reference(std::string_view what) {
    skip_blank();
    if (!is_ident_start(cur())) unexpected(what);
    Mark m = mark();
    bool qualified = false;
    while (true) {
      while (is_ident_char(cur())) advance();
      if (cur() == '.' && is_ident_start(at(1))) {
        qualified = true;
        advance();
        continue;
      }
      break;
    }
    auto n = make_leaf(qualified ? NodeKind::QualifiedName : NodeKind::Identifier,
                       m, "");
    n.value = n.text;
    return n;
  }

  void read_reference_list(SyntaxNode& field, std::string_view what) {
    if (at_eol()) return;
    while (true) {
      field.children.push_back(read_reference(what));
      skip_blank();
      if (cur() == ',') {
        Mark m = mark();
        advance();
        field.children.push_back(make_leaf(NodeKind::Punct, m, ","));
        continue;
      }
      if (at_eol()) return;
      unexpected("',' or end of line");
    }
  }

  // A run of non-blank characters other than ','.
  SyntaxNode read_word(NodeKind kind, std::string_view what) {
    skip_blank();
    if (at_eol()) unexpected(what);
    Mark m = mark();
    while (!eof() && !std::isspace(static_cast<unsigned char>(cur())) &&
           cur() != ',')
      advance();
    if (pos_ == m.pos) unexpected(what);
    auto n = make_leaf(kind, m, "");
    n.value = n.text;
    return n;
  }

  SyntaxNode read_integer() {
    auto n = read_word(NodeKind::Number, "an integer");
    if (n.text.empty() || !std::all_of(n.text.begin(), n.text.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c));
        })) {
      error("E003", "malformed integer literal '" + n.text + "'", n.span);
    }
    return n;
  }

  SyntaxNode read_number() {
    auto n = read_word(NodeKind::Number, "a number");
    double v;
    if (!parse_decimal(n.text, v)) {
      error("E003", "malformed number literal '" + n.text + "'", n.span);
    }
    return n;
  }

  SyntaxNode read_percentage() {
    auto n = read_word(NodeKind::Percentage, "a percentage");
    std::string_view body = n.text;
    if (!body.empty() && body.back() == '%') body.remove_suffix(1);
    double v;
    if (!parse_decimal(body, v)) {
      error("E003", "malformed percentage literal '" + n.text + "'", n.span);
    }
    n.value = std::string(body);
    return n;
  }

  SyntaxNode read_date() {
    auto n = read_word(NodeKind::Date, "a date (DD-MM-YYYY)");
    Date d;
    if (!valid_date(n.text, d)) {
      error("E003", "malformed date literal '" + n.text + "'; expected DD-MM-YYYY",
            n.span);
    }
    return n;
  }

  SyntaxNode read_token_or_string(std::string_view what) {
    skip_blank();
    if (cur() == '"') return read_string();
    return read_word(NodeKind::Token, what);
  }

  // Rule text up to the end of the line; continues across lines while
  // parentheses are open.
  SyntaxNode read_expression() {
    skip_blank();
    if (at_eol()) unexpected("a rule expression");
    Mark m = mark();
    Mark last = m;
    int depth = 0;
    while (!eof()) {
      char c = cur();
      if (c == '\n' && depth <= 0) break;
      if (c == '"' || c == '\'') {
        char q = c;
        advance();
        while (!eof() && cur() != q && cur() != '\n') {
          if (cur() == '\\') advance();
          advance();
        }
        if (cur() == q) advance();
        last = mark();
        continue;
      }
      if (c == '(') ++depth;
      if (c == ')') --depth;
      advance();
      if (!std::isspace(static_cast<unsigned char>(c))) last = mark();
    }
    reset(last);
    auto n = make_leaf(NodeKind::Expression, m, "");
    n.value = n.text;
    auto parsed = parse_rule_expression(n.text, m.line, m.col);
    for (auto& d : parsed.diagnostics) diags_.push_back(std::move(d));
    return n;
  }

  bool try_elision(SyntaxNode& parent) {
    if (src_.substr(pos_, 5) != "[...]") return false;
    Mark m = mark();
    for (int i = 0; i < 5; ++i) advance();
    parent.children.push_back(make_leaf(NodeKind::Elision, m, ""));
    return true;
  }

  // ---- blocks -----------------------------------------------------------

  struct Item {
    std::string tag;
    std::vector<std::string_view> keywords;
    std::function<void(SyntaxNode&)> body;
    bool repeatable = false;
    std::function<bool()> guard = nullptr;
  };

  // Parses keyword-introduced items until none applies. Non-repeatable items
  // are accepted once; a second occurrence falls through to the enclosing
  // block.
  void block(SyntaxNode& parent, const std::vector<Item>& items) {
    std::vector<bool> seen(items.size(), false);
    while (true) {
      skip_trivia();
      if (eof()) return;
      if (try_elision(parent)) continue;
      bool matched = false;
      for (size_t i = 0; i < items.size() && !matched; ++i) {
        if (seen[i] && !items[i].repeatable) continue;
        if (items[i].guard && !items[i].guard()) continue;
        for (auto kw : items[i].keywords) {
          auto k = try_keyword(kw);
          if (!k) continue;
          SyntaxNode field;
          field.tag = items[i].tag;
          field.children.push_back(std::move(*k));
          parent.children.push_back(std::move(field));
          seen[i] = true;
          matched = true;
          items[i].body(parent.children.back());
          break;
        }
      }
      if (!matched) return;
    }
  }

  void require(const SyntaxNode& node, std::string_view tag,
               std::string_view keyword, std::string_view where) {
    if (node.child(tag)) return;
    error("E001",
          "missing '" + std::string(keyword) + "' in " + std::string(where),
          node.children.front().span);
  }

  std::function<void(SyntaxNode&)> text_body(std::string_view what) {
    return [this, what](SyntaxNode& f) { f.children.push_back(read_text(what)); };
  }
  std::function<void(SyntaxNode&)> list_body(std::string_view what) {
    return [this, what](SyntaxNode& f) { read_list(f, what); };
  }

  void enum_value(SyntaxNode& f, std::string_view what,
                  const std::function<bool(std::string_view)>& valid) {
    auto v = read_text(what);
    if (!valid(v.value)) {
      error("E001",
            "unknown value '" + v.value + "'; expected " + std::string(what),
            v.span);
    }
    f.children.push_back(std::move(v));
  }

  // ---- grammar ----------------------------------------------------------

  void document(SyntaxNode& root) {
    std::vector<bool> seen(section_keywords().size(), false);
    while (true) {
      skip_trivia();
      if (eof()) break;
      if (try_elision(root)) continue;
      size_t which = section_keywords().size();
      std::optional<SyntaxNode> kw;
      for (size_t i = 0; i < section_keywords().size(); ++i) {
        if ((kw = try_keyword(section_keywords()[i]))) {
          which = i;
          break;
        }
      }
      if (which == section_keywords().size()) {
        auto span = here_span();
        error("E001",
              "unexpected token '" + here_text() +
                  "'; expected a section keyword",
              span);
        recover();
        continue;
      }
      if (seen[which]) {
        error("E001",
              "duplicate section '" + std::string(section_keywords()[which]) +
                  "'; a document describes one dataset",
              kw->span);
        recover();
        continue;
      }
      seen[which] = true;
      SyntaxNode section;
      static constexpr std::string_view kTags[] = {
          "Metadata", "Composition", "Provenance", "SocialConcerns"};
      section.tag = std::string(kTags[which]);
      section.children.push_back(std::move(*kw));
      root.children.push_back(std::move(section));
      SyntaxNode& s = root.children.back();
      try {
        switch (which) {
          case 0: metadata(s); break;
          case 1: composition(s); break;
          case 2: provenance(s); break;
          case 3: social_concerns(s); break;
        }
      } catch (const ParseAbort&) {
        recover();
      }
    }
    if (!seen[0]) {
      error("E001", "expected 'Metadata:'", SourceSpan::point(1, 1));
    }
  }

  // Skips to the next line that starts with a section keyword.
  void recover() {
    while (!eof()) {
      while (!eof() && cur() != '\n') advance();
      skip_trivia();
      if (eof() || at_section_keyword()) return;
    }
  }

  void metadata(SyntaxNode& s) {
    block(s, {
      {"UniqueId", {"Unique Id:", "UniqueId:"},
       [this](SyntaxNode& f) { f.children.push_back(read_token_or_string("an identifier")); }},
      {"Title", {"Title:"}, text_body("a title")},
      {"Version", {"Version:"},
       [this](SyntaxNode& f) { f.children.push_back(read_token_or_string("a version")); }},
      {"ReleaseDate", {"Release Date:"},
       [this](SyntaxNode& f) { f.children.push_back(read_date()); }},
      {"Description", {"Description:"},
       [this](SyntaxNode& f) {
         block(f, {{"Purposes", {"Purposes:"}, text_body("purposes")},
                   {"Tasks", {"Tasks:"}, list_body("a task")},
                   {"Gaps", {"Gaps:"}, text_body("gaps")}});
       }},
      {"Licenses", {"Licenses:", "License:"}, list_body("a license")},
      {"Tags", {"Tags:"}, list_body("a tag")},
      {"Categories", {"Categories:"}, list_body("a category")},
      {"DistributionPolicies", {"Distribution Policies:"}, list_body("a policy")},
      {"Applications", {"Applications:"},
       [this](SyntaxNode& f) {
         block(f, {{"Recommended", {"Recommended:"}, list_body("a use")},
                   {"NonRecommended", {"Non-recommended:", "Non Recommended:"},
                    list_body("a use")},
                   {"PastUses", {"Past Uses:"}, list_body("a use")}});
       }},
      {"Authoring", {"Authoring:"}, [this](SyntaxNode& f) { authoring(f); }},
    });
    require(s, "Title", "Title:", "Metadata");
    require(s, "Version", "Version:", "Metadata");
  }

  void authoring(SyntaxNode& f) {
    auto contributors = [this](SyntaxNode& list) {
      block(list, {{"Contributor", {"Name"},
                    [this](SyntaxNode& e) {
                      skip_blank();
                      if (cur() != '"') unexpected("a quoted name");
                      e.children.push_back(read_string());
                      block(e, {{"Email", {"Email"}, [this](SyntaxNode& g) {
                                   skip_blank();
                                   if (cur() != '"') unexpected("a quoted email");
                                   g.children.push_back(read_string());
                                 }}});
                    },
                    true}});
    };
    block(f, {
      {"ContributionGuidelines", {"Contribution Guidelines:"}, text_body("guidelines")},
      {"Authors", {"Authors:"}, contributors},
      {"Funders", {"Funders:"},
       [this](SyntaxNode& list) {
         block(list, {{"Funder", {"Name"}, [this](SyntaxNode& e) { funder(e); }, true}});
       }},
      {"Maintainers", {"Maintainers:"}, contributors},
      {"MaintenancePolicies", {"Maintenance Policies:"}, text_body("policies")},
    });
  }

  void funder(SyntaxNode& e) {
    skip_blank();
    if (cur() != '"') unexpected("a quoted funder name");
    e.children.push_back(read_string());
    block(e, {
      {"FunderType", {"type"},
       [this](SyntaxNode& g) {
         auto v = read_word(NodeKind::Token, "public, private or mixed");
         if (!parse_funder_type(v.value)) {
           error("E001", "unknown funder type '" + v.value +
                             "'; expected public, private or mixed", v.span);
         }
         g.children.push_back(std::move(v));
       }},
      {"Grantor", {"Grantor"},
       [this](SyntaxNode& g) { g.children.push_back(read_token_or_string("a grantor")); }},
      {"GrantId", {"GrantId"},
       [this](SyntaxNode& g) { g.children.push_back(read_token_or_string("a grant id")); }},
    });
    require(e, "FunderType", "type", "funder");
  }

  void composition(SyntaxNode& s) {
    block(s, {
      {"Rationale", {"Rationale:"}, text_body("a rationale")},
      {"DataInstances", {"DataInstances:", "Data Instances:"},
       [this](SyntaxNode& f) {
         block(f, {{"Instance", {"Instance:"}, [this](SyntaxNode& i) { instance(i); }, true}});
       }},
    });
  }

  void instance(SyntaxNode& i) {
    i.children.push_back(read_identifier("an instance name"));
    block(i, {
      {"Description", {"Description:"}, text_body("a description")},
      {"Type", {"Type:"},
       [this](SyntaxNode& f) {
         enum_value(f, "Record-Data, Time-Series or Linked-Data",
                    [](std::string_view v) { return parse_instance_type(v).has_value(); });
       }},
      {"Size", {"Size:"}, [this](SyntaxNode& f) { f.children.push_back(read_integer()); }},
      {"Attributes", {"Attributes:"},
       [this](SyntaxNode& f) {
         block(f, {{"Attribute", {"Attribute:"}, [this](SyntaxNode& a) { attribute(a); }, true}});
       }},
      {"InstanceStatistics", {"Statistics:"},
       [this](SyntaxNode& f) { instance_statistics(f); }},
      {"ConsistencyRules", {"Consistency Rules:"},
       [this](SyntaxNode& f) {
         block(f, {{"Rule", {"Inv"}, [this](SyntaxNode& r) { rule(r); }, true}});
       }},
    });
    require(i, "Type", "Type:", "instance '" + i.children[1].value + "'");
    require(i, "Size", "Size:", "instance '" + i.children[1].value + "'");
  }

  // `Statistics:` followed by instance-level content belongs to the
  // instance, not to the attribute before it.
  bool attribute_statistics_ahead() {
    Mark m = mark();
    bool ok = false;
    if (try_keyword("Statistics:")) {
      skip_trivia();
      ok = !peek_keyword("Pair Correlation:") && !peek_keyword("Quality Metrics:");
    }
    reset(m);
    return ok;
  }

  void attribute(SyntaxNode& a) {
    a.children.push_back(read_identifier("an attribute name"));
    block(a, {
      {"Description", {"Description:"}, text_body("a description")},
      {"LabelingProcessRef", {"Labelling process:", "Labeling process:"},
       [this](SyntaxNode& f) { f.children.push_back(read_reference("a labeling process name")); }},
      {"OfType", {"OfType:"},
       [this](SyntaxNode& f) {
         enum_value(f, "Numerical or Categorical", [](std::string_view v) {
           return parse_attribute_type(v).has_value();
         });
       }},
      {"AttributeStatistics", {"Statistics:"},
       [this](SyntaxNode& f) { attribute_statistics(f); }, false,
       [this] { return attribute_statistics_ahead(); }},
    });
    require(a, "OfType", "OfType:", "attribute '" + a.children[1].value + "'");
  }

  void attribute_statistics(SyntaxNode& f) {
    block(f, {
      {"Mode", {"Mode:"},
       [this](SyntaxNode& g) {
         auto v = read_text("a mode value");
         double d;
         if (v.kind == NodeKind::Phrase && parse_decimal(v.value, d))
           v.kind = NodeKind::Number;
         g.children.push_back(std::move(v));
       }},
      {"Mean", {"Mean:"}, [this](SyntaxNode& g) { g.children.push_back(read_number()); }},
      {"Median", {"Median:"}, [this](SyntaxNode& g) { g.children.push_back(read_number()); }},
      {"StdDev", {"Standard Deviation:", "StdDev:"},
       [this](SyntaxNode& g) { g.children.push_back(read_number()); }},
      {"Distribution", {"Categorical-Distribution:", "Categorical Distribution:"},
       [this](SyntaxNode& g) { distribution(g); }},
      {"Completeness", {"Completeness:"},
       [this](SyntaxNode& g) { g.children.push_back(read_percentage()); }},
      {"Sparsity", {"Sparsity:"},
       [this](SyntaxNode& g) { g.children.push_back(read_integer()); }},
    });
  }

  void colon(SyntaxNode& parent) {
    skip_blank();
    if (cur() != ':') unexpected("':'");
    Mark m = mark();
    advance();
    parent.children.push_back(make_leaf(NodeKind::Punct, m, ":"));
  }

  void distribution(SyntaxNode& g) {
    while (true) {
      skip_trivia();
      if (cur() != '"') return;
      SyntaxNode entry;
      entry.tag = "Entry";
      entry.children.push_back(read_string());
      colon(entry);
      entry.children.push_back(read_percentage());
      g.children.push_back(std::move(entry));
    }
  }

  void instance_statistics(SyntaxNode& f) {
    block(f, {
      {"PairCorrelation", {"Pair Correlation:"},
       [this](SyntaxNode& g) { pair_correlation(g); }, true},
      {"QualityMetrics", {"Quality Metrics:"},
       [this](SyntaxNode& g) { quality_metrics(g); }},
    });
  }

  void pair_correlation(SyntaxNode& g) {
    skip_trivia();
    auto between = try_keyword("Between");
    if (!between) unexpected("'Between'");
    g.children.push_back(std::move(*between));
    g.children.push_back(read_identifier("an attribute name"));
    skip_blank();
    auto conj = try_keyword("and");
    if (!conj) unexpected("'and'");
    g.children.push_back(std::move(*conj));
    skip_blank();
    if (auto ext = try_keyword("external source")) {
      g.children.push_back(std::move(*ext));
      block(g, {{"From", {"From:"}, text_body("a source")},
                {"Rationale", {"Rationale:"}, text_body("a rationale")},
                {"Value", {"Value:"},
                 [this](SyntaxNode& h) { h.children.push_back(read_number()); }}});
      require(g, "From", "From:", "external pair correlation");
    } else {
      g.children.push_back(read_identifier("an attribute name or 'external source'"));
      block(g, {{"Value", {"Value:"},
                 [this](SyntaxNode& h) { h.children.push_back(read_number()); }}});
    }
  }

  void quality_metrics(SyntaxNode& g) {
    static const std::vector<std::pair<std::string_view, std::string_view>>
        kKnown = {{"ClassBalance:", "ClassBalance"},
                  {"Class Balance:", "ClassBalance"},
                  {"NoisyLabels:", "NoisyLabels"},
                  {"Noisy Labels:", "NoisyLabels"},
                  {"Outliers:", "Outliers"},
                  {"Completeness:", "Completeness"}};
    while (true) {
      skip_trivia();
      if (try_elision(g)) continue;
      SyntaxNode entry;
      entry.tag = "Metric";
      if (cur() == '"') {
        entry.children.push_back(read_string());
        colon(entry);
      } else {
        bool found = false;
        for (const auto& [kw, name] : kKnown) {
          if (auto k = try_keyword(kw)) {
            k->value = std::string(name);
            entry.children.push_back(std::move(*k));
            found = true;
            break;
          }
        }
        if (!found) return;
      }
      entry.children.push_back(read_percentage());
      g.children.push_back(std::move(entry));
    }
  }

  void rule(SyntaxNode& r) {
    r.children.push_back(read_identifier("a context instance name"));
    skip_blank();
    if (auto as = try_keyword("as")) {
      r.children.push_back(std::move(*as));
      auto name = read_identifier("a rule name");
      name.tag = "name";
      r.children.push_back(std::move(name));
    }
    colon(r);
    r.children.push_back(read_expression());
  }

  void provenance(SyntaxNode& s) {
    block(s, {
      {"CurationRationale", {"Curation Rationale:"}, text_body("a rationale")},
      {"GatheringProcesses", {"Gathering Processes:"},
       [this](SyntaxNode& f) {
         block(f, {{"GatheringProcess", {"Process:"},
                    [this](SyntaxNode& p) { gathering_process(p); }, true}});
       }},
      {"LabelingProcesses", {"Labeling Processes:", "Labelling Processes:"},
       [this](SyntaxNode& f) {
         block(f, {{"LabelingProcess", {"Process:"},
                    [this](SyntaxNode& p) { labeling_process(p); }, true}});
       }},
    });
  }

  void requirements(SyntaxNode& f) {
    skip_blank();
    block(f, {{"Requirement", {"Requirement:"}, text_body("a requirement"), true}});
  }

  void demographics(SyntaxNode& f) {
    while (true) {
      skip_trivia();
      if (try_elision(f)) continue;
      if (cur() == '"') {
        SyntaxNode entry;
        entry.tag = "Pair";
        entry.children.push_back(read_string());
        colon(entry);
        entry.children.push_back(read_text("a value"));
        f.children.push_back(std::move(entry));
        continue;
      }
      auto k = try_keyword("Countries:");
      if (!k) return;
      SyntaxNode countries;
      countries.tag = "Countries";
      countries.children.push_back(std::move(*k));
      read_list(countries, "a country");
      f.children.push_back(std::move(countries));
    }
  }

  Item social_issues_item() {
    return {"SocialIssues", {"Social Issues:"}, [this](SyntaxNode& f) {
              read_reference_list(f, "a social issue name");
            }};
  }

  Item process_demographics_item() {
    return {"ProcessDemographics", {"Process Demographics:"},
            [this](SyntaxNode& f) { demographics(f); }};
  }

  void gathering_process(SyntaxNode& p) {
    p.children.push_back(read_identifier("a process name"));
    block(p, {
      {"Description", {"Description:"}, text_body("a description")},
      {"Type", {"Type:"}, text_body("a process type")},
      {"Source", {"Source:"},
       [this](SyntaxNode& f) {
         f.children.push_back(read_identifier("a source name"));
         block(f, {{"Description", {"Description:"}, text_body("a description")},
                   {"Noise", {"Noise:"}, text_body("a noise description")}});
       },
       true},
      social_issues_item(),
      process_demographics_item(),
      {"Requirements", {"Gathering Requirements", "Requirements"},
       [this](SyntaxNode& f) { requirements(f); }},
    });
  }

  void labeling_process(SyntaxNode& p) {
    p.children.push_back(read_identifier("a process name"));
    block(p, {
      {"Description", {"Description:"}, text_body("a description")},
      {"Type", {"Type:"}, text_body("a process type")},
      {"Labels", {"Labels:"},
       [this](SyntaxNode& f) { read_reference_list(f, "an attribute reference"); }},
      {"LabelingTeam", {"Labeling Team:", "Labelling Team:"},
       [this](SyntaxNode& f) { team(f); }},
      {"Requirements",
       {"Labeling Requirements", "Labelling Requirements", "Requirements"},
       [this](SyntaxNode& f) { requirements(f); }},
      social_issues_item(),
      process_demographics_item(),
    });
  }

  void team(SyntaxNode& f) {
    block(f, {
      {"Description", {"Description:"}, text_body("a description")},
      {"Type", {"Type:"},
       [this](SyntaxNode& g) {
         enum_value(g, "Crowdsourcing, External or Internal", [](std::string_view v) {
           return parse_team_type(v).has_value();
         });
       }},
      {"TeamDemographics", {"Team Demographics:"},
       [this](SyntaxNode& g) { demographics(g); }},
    });
    require(f, "Type", "Type:", "labeling team");
  }

  void social_concerns(SyntaxNode& s) {
    block(s, {
      {"Rationale", {"Rationale:"}, text_body("a rationale")},
      {"SocialIssue", {"Social Issue:"},
       [this](SyntaxNode& f) { social_issue(f); }, true},
    });
  }

  void social_issue(SyntaxNode& f) {
    f.children.push_back(read_identifier("a social issue name"));
    block(f, {
      {"IssueType", {"IssueType:", "Issue Type:"},
       [this](SyntaxNode& g) { issue_type(g); }},
      {"RelatedAttributes", {"Related Attributes:"},
       [this](SyntaxNode& g) { read_reference_list(g, "an attribute reference"); }},
      {"Description", {"Description:"}, text_body("a description")},
    });
    require(f, "IssueType", "IssueType:", "social issue '" + f.children[1].value + "'");
  }

  void issue_type(SyntaxNode& g) {
    skip_blank();
    if (auto other = try_keyword("Other")) {
      g.children.push_back(std::move(*other));
      skip_blank();
      bool paren = cur() == '(';
      if (paren) {
        Mark m = mark();
        advance();
        g.children.push_back(make_leaf(NodeKind::Punct, m, "("));
        skip_blank();
      }
      if (cur() != '"') unexpected("a quoted issue label");
      g.children.push_back(read_string());
      if (paren) {
        skip_blank();
        if (cur() != ')') unexpected("')'");
        Mark m = mark();
        advance();
        g.children.push_back(make_leaf(NodeKind::Punct, m, ")"));
      }
      return;
    }
    auto v = read_word(NodeKind::Token, "Bias, Privacy or Other(\"...\")");
    std::string lower;
    for (char c : v.value)
      lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower != "bias" && lower != "privacy") {
      error("E001",
            "unknown issue type '" + v.value + "'; expected Bias, Privacy or Other(\"...\")",
            v.span);
    }
    g.children.push_back(std::move(v));
  }

  static void fix_spans(SyntaxNode& n) {
    if (n.is_leaf()) return;
    for (auto& c : n.children) fix_spans(c);
    if (!n.children.empty()) {
      n.span = SourceSpan::cover(n.children.front().span, n.children.back().span);
    }
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  std::vector<Diagnostic> diags_;
};

void collect_leaves(const SyntaxNode& n, std::vector<const SyntaxNode*>& out) {
  if (n.is_leaf()) {
    out.push_back(&n);
    return;
  }
  for (const auto& c : n.children) collect_leaves(c, out);
}

}  // namespace

ParseResult parse(std::string_view source) { return Parser(source).run(); }

std::vector<const SyntaxNode*> leaves(const SyntaxTree& tree) {
  std::vector<const SyntaxNode*> out;
  collect_leaves(tree.root, out);
  return out;
}

}  // namespace datadesc
