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

#include "datadesc/registry.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <mutex>
#include <sstream>

#include "datadesc/printer.hpp"
#include "datadesc/semantics.hpp"

namespace datadesc {

namespace {

struct FieldName {
  QueryField field;
  std::string_view name;
};

constexpr FieldName kFields[] = {
    {QueryField::Tag, "tag"},
    {QueryField::Task, "task"},
    {QueryField::Category, "category"},
    {QueryField::License, "license"},
    {QueryField::InstanceType, "instance_type"},
    {QueryField::AttributeType, "attribute_type"},
    {QueryField::IssueType, "issue_type"},
    {QueryField::Country, "country"},
    {QueryField::TeamType, "team_type"},
    {QueryField::MinSize, "min_size"},
};

std::string lower(std::string_view s) {
  std::string out;
  for (char c : s) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void query_error(const std::string& code, const std::string& message, int col) {
  throw QueryError(make_diagnostic(code, message, SourceSpan::point(1, col)));
}

bool is_enum_field(QueryField f) {
  return f == QueryField::InstanceType || f == QueryField::AttributeType ||
         f == QueryField::IssueType || f == QueryField::TeamType;
}

struct RawClause {
  std::string text;
  int col = 1;
};

// Splits on whitespace-delimited AND outside double quotes.
std::vector<RawClause> split_clauses(std::string_view text) {
  std::vector<RawClause> out;
  RawClause cur;
  bool quoted = false;
  size_t start = 0;
  auto boundary = [&](size_t i) { return i >= text.size() || std::isspace(static_cast<unsigned char>(text[i])); };
  for (size_t i = 0; i < text.size();) {
    char c = text[i];
    if (c == '"') quoted = !quoted;
    if (!quoted && (i == 0 || std::isspace(static_cast<unsigned char>(text[i - 1]))) &&
        i + 3 <= text.size() && lower(text.substr(i, 3)) == "and" && boundary(i + 3)) {
      cur.col = static_cast<int>(start) + 1;
      out.push_back(cur);
      cur = RawClause{};
      i += 3;
      start = i;
      continue;
    }
    cur.text += c;
    ++i;
  }
  cur.col = static_cast<int>(start) + 1;
  out.push_back(cur);
  return out;
}

}  // namespace

std::string_view to_string(QueryField field) {
  for (const auto& f : kFields)
    if (f.field == field) return f.name;
  return "";
}

std::optional<QueryField> parse_query_field(std::string_view name) {
  std::string l = lower(name);
  for (const auto& f : kFields)
    if (f.name == l) return f.field;
  return std::nullopt;
}

Query parse_query(std::string_view text) {
  Query q;
  if (trim(text).empty()) return q;
  auto raw = split_clauses(text);
  if (raw.size() > kMaxQueryClauses)
    query_error("E051", "too many clauses: " + std::to_string(raw.size()) + " (at most " +
                            std::to_string(kMaxQueryClauses) + ")", 1);
  for (const auto& r : raw) {
    std::string clause = trim(r.text);
    if (clause.empty()) query_error("E051", "empty clause", r.col);
    size_t op_pos = clause.find_first_of("!>=");
    if (op_pos == std::string::npos || op_pos == 0)
      query_error("E051", "malformed clause '" + clause + "': expected field=value", r.col);
    std::string field_text = trim(std::string_view(clause).substr(0, op_pos));
    QueryOp op;
    size_t value_pos;
    if (clause.compare(op_pos, 2, "!=") == 0) {
      op = QueryOp::Neq;
      value_pos = op_pos + 2;
    } else if (clause.compare(op_pos, 2, ">=") == 0) {
      op = QueryOp::Gte;
      value_pos = op_pos + 2;
    } else if (clause[op_pos] == '=') {
      op = QueryOp::Eq;
      value_pos = op_pos + 1;
    } else {
      query_error("E051", "malformed operator in clause '" + clause + "'", r.col);
    }
    auto field = parse_query_field(field_text);
    if (!field) {
      bool ident = !field_text.empty() && std::all_of(field_text.begin(), field_text.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
      });
      if (!ident) query_error("E051", "malformed field name '" + field_text + "'", r.col);
      query_error("E050", "unknown query field '" + field_text + "'", r.col);
    }
    std::string value = trim(std::string_view(clause).substr(value_pos));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    else if (value.find('"') != std::string::npos)
      query_error("E051", "unbalanced quotes in clause '" + clause + "'", r.col);
    if (value.empty()) query_error("E051", "missing value in clause '" + clause + "'", r.col);
    Clause c{*field, op, value, 0};
    if (*field == QueryField::MinSize) {
      if (op != QueryOp::Gte) query_error("E051", "min_size only supports '>='", r.col);
      if (!std::all_of(value.begin(), value.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }) ||
          value.size() > 18)
        query_error("E051", "min_size needs a non-negative integer, got '" + value + "'", r.col);
      c.number = std::stoll(value);
    } else if (op == QueryOp::Gte) {
      query_error("E051", "'>=' is only valid with min_size", r.col);
    }
    q.clauses.push_back(std::move(c));
  }
  return q;
}

std::string normalize_query_value(QueryField field, std::string_view value) {
  std::string l = lower(value);
  if (!is_enum_field(field)) return l;
  std::string out;
  for (char c : l)
    if (c != '-' && c != '_' && c != ' ') out += c;
  return out;
}

IndexEntry extract_index_entry(const DatasetDescription& m) {
  IndexEntry e;
  e.dataset_id = m.metadata.unique_id;
  e.title = m.metadata.title;
  auto add = [&](QueryField f, std::string_view v) { e.values[f].insert(normalize_query_value(f, v)); };
  for (const auto& v : m.metadata.tags) add(QueryField::Tag, v);
  for (const auto& v : m.metadata.description.tasks) add(QueryField::Task, v);
  for (const auto& v : m.metadata.categories) add(QueryField::Category, v);
  for (const auto& v : m.metadata.licenses) add(QueryField::License, v);
  if (m.composition) {
    for (const auto& inst : m.composition->instances) {
      add(QueryField::InstanceType, to_string(inst.instance_type));
      e.total_size += inst.size;
      for (const auto& a : inst.attributes) add(QueryField::AttributeType, to_string(a.attr_type));
    }
  }
  if (m.social_concerns) {
    for (const auto& i : m.social_concerns->issues) {
      add(QueryField::IssueType, issue_type_text(i.issue_type));
      if (i.issue_type.kind == IssueKind::Other) add(QueryField::IssueType, "Other");
    }
  }
  auto countries = [&](const std::optional<Demographics>& d) {
    if (d)
      for (const auto& c : d->countries) add(QueryField::Country, c);
  };
  if (m.provenance) {
    for (const auto& g : m.provenance->gathering) countries(g.demographics);
    for (const auto& l : m.provenance->labeling) {
      countries(l.demographics);
      if (l.team) {
        add(QueryField::TeamType, to_string(l.team->team_type));
        countries(l.team->demographics);
      }
    }
  }
  return e;
}

bool clause_matches(const IndexEntry& entry, const Clause& clause) {
  if (clause.field == QueryField::MinSize) return entry.total_size >= clause.number;
  auto it = entry.values.find(clause.field);
  bool has = it != entry.values.end() &&
             it->second.count(normalize_query_value(clause.field, clause.value)) > 0;
  return clause.op == QueryOp::Neq ? !has : has;
}

nlohmann::json to_json(const SearchResult& result) {
  nlohmann::json matches = nlohmann::json::array();
  for (const auto& m : result.matches)
    matches.push_back({{"dataset_id", m.dataset_id},
                       {"title", m.title},
                       {"matched_clauses", m.matched_clauses}});
  return {{"matches", matches}};
}

std::string Registry::index_add(const DatasetDescription& model) {
  Entry entry{model, extract_index_entry(model)};
  std::unique_lock lock(mutex_);
  std::string id = entry.index.dataset_id;
  entries_.insert_or_assign(id, std::move(entry));
  return id;
}

SearchResult Registry::search(const Query& query) const {
  SearchResult r;
  {
    std::shared_lock lock(mutex_);
    for (const auto& [id, e] : entries_) {
      bool all = std::all_of(query.clauses.begin(), query.clauses.end(),
                             [&](const Clause& c) { return clause_matches(e.index, c); });
      if (all) r.matches.push_back({id, e.index.title, static_cast<int>(query.clauses.size())});
    }
  }
  std::sort(r.matches.begin(), r.matches.end(), [](const SearchMatch& a, const SearchMatch& b) {
    return a.title != b.title ? a.title < b.title : a.dataset_id < b.dataset_id;
  });
  return r;
}

size_t Registry::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

std::optional<DatasetDescription> Registry::get(const std::string& dataset_id) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(dataset_id);
  if (it == entries_.end()) return std::nullopt;
  return it->second.model;
}

std::vector<std::string> Registry::ids() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [id, e] : entries_) out.push_back(id);
  return out;
}

nlohmann::json Registry::index_json() const {
  std::shared_lock lock(mutex_);
  nlohmann::json datasets = nlohmann::json::array();
  for (const auto& [id, e] : entries_) {
    nlohmann::json fields = nlohmann::json::object();
    for (const auto& [f, vs] : e.index.values) fields[std::string(to_string(f))] = vs;
    datasets.push_back({{"dataset_id", id},
                        {"title", e.index.title},
                        {"file", registry_file_name(id)},
                        {"total_size", e.index.total_size},
                        {"fields", fields}});
  }
  return {{"format", 1}, {"datasets", datasets}};
}

std::map<std::string, std::vector<Diagnostic>> Registry::load_directory(
    const std::filesystem::path& root) {
  std::map<std::string, std::vector<Diagnostic>> problems;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(root))
    if (entry.is_regular_file() && entry.path().extension() == ".ddesc") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    DocumentAnalysis a = analyze_document(ss.str());
    if (a.model() && !has_errors(a.diagnostics)) index_add(*a.model());
    else problems[path.string()] = a.diagnostics;
  }
  return problems;
}

void Registry::save_directory(const std::filesystem::path& root) const {
  std::filesystem::create_directories(root);
  {
    std::shared_lock lock(mutex_);
    for (const auto& [id, e] : entries_) {
      std::ofstream out(root / registry_file_name(id), std::ios::binary);
      out << pretty_print(e.model);
    }
  }
  write_index(root);
}

void Registry::write_index(const std::filesystem::path& root) const {
  std::ofstream out(root / "index.json", std::ios::binary);
  out << index_json().dump(2) << "\n";
}

std::string registry_file_name(std::string_view dataset_id) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : dataset_id) {
    if (std::isalnum(c) || c == '-' || c == '_' || (c == '.' && !out.empty())) {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 15];
    }
  }
  if (out.empty()) out = "%";
  return out + ".ddesc";
}

}  // namespace datadesc
