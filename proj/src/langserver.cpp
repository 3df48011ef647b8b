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

#include "datadesc/langserver.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace datadesc {

namespace {

std::string lower(std::string_view s) {
  std::string out;
  for (char c : s) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

size_t utf8_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

// Byte offset of a 1-based code-point column, clamped to the line.
size_t column_to_byte(std::string_view line, int column) {
  size_t i = 0;
  for (int c = 1; c < column && i < line.size(); ++c) i += utf8_length(static_cast<unsigned char>(line[i]));
  return std::min(i, line.size());
}

struct Keyword {
  std::string label;
  std::string snippet;  // empty for plain keywords
};

struct BlockItems {
  std::string_view tag;
  std::vector<Keyword> items;
};

const std::vector<BlockItems>& block_table() {
  static const std::vector<BlockItems> table = {
      {"Metadata",
       {{"Title:", ""}, {"Unique Id:", ""}, {"Version:", ""}, {"Release Date:", ""},
        {"Description:", "Description:\n  Purposes: \"${1}\"\n  Tasks: ${2}\n  Gaps: \"${3}\""},
        {"Licenses:", ""}, {"Tags:", ""}, {"Categories:", ""}, {"Distribution Policies:", ""},
        {"Applications:", ""}, {"Authoring:", ""}}},
      {"Description", {{"Purposes:", ""}, {"Tasks:", ""}, {"Gaps:", ""}}},
      {"Applications", {{"Recommended:", ""}, {"Non-recommended:", ""}, {"Past Uses:", ""}}},
      {"Authoring",
       {{"Contribution Guidelines:", ""}, {"Authors:", ""}, {"Funders:", ""}, {"Maintainers:", ""},
        {"Maintenance Policies:", ""}}},
      {"Composition", {{"Rationale:", ""}, {"DataInstances:", ""}}},
      {"DataInstances",
       {{"Instance:", "Instance: ${1:name}\n  Type: ${2:Record-Data}\n  Size: ${3:0}\n  Attributes:\n    $0"}}},
      {"Instance",
       {{"Description:", ""}, {"Type:", ""}, {"Size:", ""}, {"Attributes:", ""}, {"Statistics:", ""},
        {"Consistency Rules:", ""}}},
      {"Attributes", {{"Attribute:", "Attribute: ${1:name}\n  OfType: ${2:Categorical}"}}},
      {"Attribute",
       {{"Description:", ""}, {"OfType:", ""}, {"Labelling process:", ""}, {"Statistics:", ""}}},
      {"AttributeStatistics",
       {{"Mode:", ""}, {"Mean:", ""}, {"Median:", ""}, {"Standard Deviation:", ""},
        {"Categorical-Distribution:", ""}, {"Completeness:", ""}, {"Sparsity:", ""}}},
      {"InstanceStatistics", {{"Pair Correlation:", ""}, {"Quality Metrics:", ""}}},
      {"ConsistencyRules", {{"Inv", "Inv ${1:instance}: (${2:expression})"}}},
      {"Provenance",
       {{"Curation Rationale:", ""}, {"Gathering Processes:", ""}, {"Labeling Processes:", ""}}},
      {"GatheringProcesses", {{"Process:", "Process: ${1:name}\n  Type: ${2}"}}},
      {"GatheringProcess",
       {{"Description:", ""}, {"Type:", ""}, {"Source:", ""}, {"Social Issues:", ""},
        {"Process Demographics:", ""}, {"Gathering Requirements", ""}}},
      {"LabelingProcesses", {{"Process:", "Process: ${1:name}\n  Type: ${2}\n  Labels: ${3}"}}},
      {"LabelingProcess",
       {{"Description:", ""}, {"Type:", ""}, {"Labels:", ""}, {"Labeling Team:", ""},
        {"Labeling Requirements", ""}, {"Social Issues:", ""}, {"Process Demographics:", ""}}},
      {"LabelingTeam", {{"Description:", ""}, {"Type:", ""}, {"Team Demographics:", ""}}},
      {"Source", {{"Description:", ""}, {"Noise:", ""}}},
      {"SocialConcerns",
       {{"Rationale:", ""},
        {"Social Issue:", "Social Issue: ${1:name}\n  IssueType: ${2:Bias}\n  Description: \"${3}\""}}},
      {"SocialIssue", {{"IssueType:", ""}, {"Related Attributes:", ""}, {"Description:", ""}}},
  };
  return table;
}

const std::vector<Keyword>& section_snippets() {
  static const std::vector<Keyword> sections = {
      {"Metadata:", "Metadata:\n  Title: \"${1:Title}\"\n  Version: ${2:v1}\n$0"},
      {"Composition:", "Composition:\n  Rationale: \"${1}\"\n  DataInstances:\n    $0"},
      {"Data Provenance:", "Data Provenance:\n  Curation Rationale: \"${1}\"\n$0"},
      {"Social Concerns:", "Social Concerns:\n  Rationale: \"${1}\"\n$0"},
  };
  return sections;
}

std::string_view section_tag(std::string_view label) {
  if (label == "Metadata:") return "Metadata";
  if (label == "Composition:") return "Composition";
  if (label == "Data Provenance:") return "Provenance";
  return "SocialConcerns";
}

bool before(const SourceSpan& s, int line, int col) {
  return s.start_line < line || (s.start_line == line && s.start_col < col);
}

// Blocks that are open at the position, outermost first.
std::vector<const SyntaxNode*> enclosing_blocks(const SyntaxNode& root, int line, int col) {
  std::vector<const SyntaxNode*> chain;
  const SyntaxNode* node = &root;
  while (true) {
    const SyntaxNode* next = nullptr;
    for (const auto& c : node->children)
      if (!c.is_leaf() && before(c.span, line, col)) next = &c;
    if (!next) break;
    chain.push_back(next);
    node = next;
  }
  return chain;
}

struct ReferenceContext {
  std::string_view keyword;  // lowercase
  std::optional<SymbolCategory> category;
  std::vector<std::string> values;
};

const std::vector<ReferenceContext>& reference_contexts() {
  static const std::vector<ReferenceContext> table = {
      {"labelling process:", SymbolCategory::LabelingProcess, {}},
      {"labeling process:", SymbolCategory::LabelingProcess, {}},
      {"labels:", SymbolCategory::Attribute, {}},
      {"social issues:", SymbolCategory::SocialIssue, {}},
      {"related attributes:", SymbolCategory::Attribute, {}},
      {"oftype:", std::nullopt, {"Categorical", "Numerical"}},
      {"issuetype:", std::nullopt, {"Bias", "Other", "Privacy"}},
      {"issue type:", std::nullopt, {"Bias", "Other", "Privacy"}},
  };
  return table;
}

std::string declaration_detail(const Declaration& d) { return std::string(to_string(d.category)); }

void sort_items(std::vector<CompletionItem>& items) {
  std::sort(items.begin(), items.end(), [](const CompletionItem& a, const CompletionItem& b) {
    return a.label < b.label;
  });
}

}  // namespace

int utf16_to_column(std::string_view line, int utf16_offset) {
  int units = 0;
  int col = 1;
  size_t i = 0;
  while (i < line.size() && units < utf16_offset) {
    size_t n = utf8_length(static_cast<unsigned char>(line[i]));
    units += n == 4 ? 2 : 1;
    i += n;
    ++col;
  }
  return col;
}

int column_to_utf16(std::string_view line, int column) {
  int units = 0;
  size_t i = 0;
  int c = 1;
  for (; c < column && i < line.size(); ++c) {
    size_t n = utf8_length(static_cast<unsigned char>(line[i]));
    units += n == 4 ? 2 : 1;
    i += n;
  }
  return units + std::max(0, column - c);
}

DocumentState::DocumentState(std::string uri, std::string text, int version)
    : uri_(std::move(uri)), text_(std::move(text)), version_(version) {
  reanalyze();
}

bool DocumentState::on_change(std::string text, int version) {
  if (version <= version_) return false;
  text_ = std::move(text);
  version_ = version;
  reanalyze();
  return true;
}

void DocumentState::reanalyze() {
  analysis_ = analyze_document(text_);
  lines_.clear();
  std::string_view all = text_;
  size_t start = 0;
  while (true) {
    size_t end = all.find('\n', start);
    std::string_view l = all.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    lines_.push_back(l);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
}

std::string_view DocumentState::line_text(int line) const {
  if (line < 1 || line > static_cast<int>(lines_.size())) return {};
  return lines_[static_cast<size_t>(line - 1)];
}

std::vector<CompletionItem> DocumentState::completion_at(int line, int col) const {
  std::vector<CompletionItem> items;
  std::string_view text = line_text(line);
  std::string prefix(text.substr(0, column_to_byte(text, col)));
  size_t first = prefix.find_first_not_of(" \t");
  std::string head = first == std::string::npos ? "" : lower(std::string_view(prefix).substr(first));
  if (head.rfind("//", 0) == 0) return items;

  const SourceMap& map = source_map();
  for (const auto& ctx : reference_contexts()) {
    if (head.rfind(ctx.keyword, 0) != 0) continue;
    if (head.find('"', ctx.keyword.size()) != std::string::npos) return items;
    if (ctx.category) {
      std::set<std::string> seen;
      for (const auto& d : map.declarations)
        if (d.category == *ctx.category && seen.insert(d.name).second)
          items.push_back({d.name, CompletionKind::Reference, declaration_detail(d), d.name});
    } else {
      for (const auto& v : ctx.values) items.push_back({v, CompletionKind::EnumMember, "", v});
    }
    sort_items(items);
    return items;
  }

  const SyntaxNode& root = analysis_.parse.tree ? analysis_.parse.tree->root : analysis_.parse.partial.root;
  auto chain = enclosing_blocks(root, line, col);

  if (head.rfind("type:", 0) == 0 && !chain.empty()) {
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      const std::string& tag = (*it)->tag;
      if (tag == "Instance") {
        for (auto v : {"Linked-Data", "Record-Data", "Time-Series"})
          items.push_back({v, CompletionKind::EnumMember, "instance type", v});
      } else if (tag == "LabelingTeam") {
        for (auto v : {"Crowdsourcing", "External", "Internal"})
          items.push_back({v, CompletionKind::EnumMember, "team type", v});
      } else if (tag != "Type") {
        continue;
      }
      break;
    }
    sort_items(items);
    return items;
  }
  if (head.find(':') != std::string::npos) return items;

  std::set<std::string> labels;
  auto add = [&](const Keyword& k, std::string_view detail) {
    if (!labels.insert(k.label).second) return;
    if (k.snippet.empty()) items.push_back({k.label, CompletionKind::Keyword, std::string(detail), k.label + " "});
    else items.push_back({k.label, CompletionKind::Snippet, std::string(detail), k.snippet});
  };
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    for (const auto& block : block_table())
      if (block.tag == (*it)->tag) {
        for (const auto& k : block.items) add(k, block.tag);
      }
  }
  for (const auto& s : section_snippets()) {
    bool present = false;
    for (const auto& c : root.children)
      if (c.tag == section_tag(s.label)) present = true;
    if (!present) add(s, "section");
  }
  sort_items(items);
  return items;
}

std::optional<SourceSpan> DocumentState::definition_at(int line, int col) const {
  const Reference* r = source_map().reference_at(line, col);
  if (!r || !r->target) return std::nullopt;
  return r->target->span;
}

std::optional<HoverInfo> DocumentState::hover_at(int line, int col) const {
  const SourceMap& map = source_map();
  std::optional<Declaration> decl;
  SourceSpan span;
  if (const Reference* r = map.reference_at(line, col)) {
    if (!r->target) return std::nullopt;
    decl = r->target;
    span = r->span;
  } else {
    for (const auto& d : map.declarations)
      if (d.name_span.contains(line, col)) {
        decl = d;
        span = d.name_span;
      }
  }
  if (!decl) return std::nullopt;
  std::string md = "**" + std::string(to_string(decl->category)) + "** `" + decl->name + "`";
  if (model()) {
    try {
      Element e = resolve(*model(), decl->name);
      std::optional<std::string> description;
      std::string extra;
      if (auto* i = std::get_if<const DataInstance*>(&e)) {
        description = (*i)->description;
        extra = std::string(to_string((*i)->instance_type)) + ", " + std::to_string((*i)->size) + " records";
      } else if (auto* a = std::get_if<const Attribute*>(&e)) {
        description = (*a)->description;
        extra = std::string(to_string((*a)->attr_type));
      } else if (auto* g = std::get_if<const GatheringProcess*>(&e)) {
        description = (*g)->description;
        extra = (*g)->process_type;
      } else if (auto* l = std::get_if<const LabelingProcess*>(&e)) {
        description = (*l)->description;
        extra = (*l)->process_type;
      } else if (auto* s = std::get_if<const SocialIssue*>(&e)) {
        description = (*s)->description;
        extra = issue_type_text((*s)->issue_type);
      }
      if (!extra.empty()) md += " (" + extra + ")";
      if (description && !description->empty()) md += "\n\n" + *description;
    } catch (const ResolveError&) {
    }
  }
  return HoverInfo{md, span};
}

}  // namespace datadesc
