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

#ifndef DATADESC_REGISTRY_HPP_
#define DATADESC_REGISTRY_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "datadesc/diagnostic.hpp"
#include "datadesc/model.hpp"

namespace datadesc {

enum class QueryField {
  Tag,
  Task,
  Category,
  License,
  InstanceType,
  AttributeType,
  IssueType,
  Country,
  TeamType,
  MinSize,
};

enum class QueryOp { Eq, Neq, Gte };

std::string_view to_string(QueryField field);
std::optional<QueryField> parse_query_field(std::string_view name);

struct Clause {
  QueryField field = QueryField::Tag;
  QueryOp op = QueryOp::Eq;
  std::string value;
  long long number = 0;  // min_size only

  friend bool operator==(const Clause&, const Clause&) = default;
};

struct Query {
  std::vector<Clause> clauses;  // conjunction; empty matches everything
};

inline constexpr size_t kMaxQueryClauses = 32;

/// E050 unknown field, E051 malformed clause.
class QueryError : public std::runtime_error {
 public:
  explicit QueryError(Diagnostic d)
      : std::runtime_error(d.code + ": " + d.message), diagnostic_(std::move(d)) {}
  const Diagnostic& diagnostic() const { return diagnostic_; }

 private:
  Diagnostic diagnostic_;
};

/// `field=value`, `field!=value` and `min_size>=N` clauses joined by `AND`.
/// Field names and `AND` are case-insensitive; values may be double-quoted.
Query parse_query(std::string_view text);

/// Queryable facts of one description.
struct IndexEntry {
  std::string dataset_id;
  std::string title;
  std::map<QueryField, std::set<std::string>> values;  // normalized
  long long total_size = 0;                             // sum of instance sizes
};

IndexEntry extract_index_entry(const DatasetDescription& model);

/// Case-insensitive; enum-valued fields also ignore '-', '_' and spaces.
std::string normalize_query_value(QueryField field, std::string_view value);

bool clause_matches(const IndexEntry& entry, const Clause& clause);

struct SearchMatch {
  std::string dataset_id;
  std::string title;
  int matched_clauses = 0;
};

struct SearchResult {
  std::vector<SearchMatch> matches;  // title ascending, then id
};

nlohmann::json to_json(const SearchResult& result);

/// In-memory index over descriptions. Readers run concurrently; index_add
/// is exclusive.
class Registry {
 public:
  Registry() = default;
  Registry(const Registry&) = delete;
  Registry& operator=(const Registry&) = delete;

  /// Adds or replaces the description keyed by its unique id.
  std::string index_add(const DatasetDescription& model);
  SearchResult search(const Query& query) const;
  size_t size() const;
  std::optional<DatasetDescription> get(const std::string& dataset_id) const;
  std::vector<std::string> ids() const;

  nlohmann::json index_json() const;

  /// Loads every `*.ddesc` file under `root`. Files that do not build
  /// cleanly are skipped and their diagnostics reported per path.
  std::map<std::string, std::vector<Diagnostic>> load_directory(const std::filesystem::path& root);

  /// Writes `<root>/<id>.ddesc` for every entry plus `<root>/index.json`.
  void save_directory(const std::filesystem::path& root) const;
  void write_index(const std::filesystem::path& root) const;

 private:
  struct Entry {
    DatasetDescription model;
    IndexEntry index;
  };

  mutable std::shared_mutex mutex_;
  std::map<std::string, Entry> entries_;
};

/// File name used for a dataset id inside a registry directory.
std::string registry_file_name(std::string_view dataset_id);

}  // namespace datadesc

#endif  // DATADESC_REGISTRY_HPP_
