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

#ifndef DATADESC_ANALYSIS_HPP_
#define DATADESC_ANALYSIS_HPP_

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "datadesc/diagnostic.hpp"
#include "datadesc/ingest.hpp"
#include "datadesc/model.hpp"
#include "datadesc/rules.hpp"
#include "datadesc/semantics.hpp"

namespace datadesc {

// ---- completeness ---------------------------------------------------------

enum class Section { Metadata, Composition, Provenance, SocialConcerns };

std::string_view to_string(Section section);

struct SectionScore {
  Section section = Section::Metadata;
  int filled = 0;
  int expected = 0;
  std::vector<std::string> missing_items;
};

struct CompletenessReport {
  std::string checklist_version;
  std::vector<SectionScore> sections;  // fixed section order
  double overall_pct = 0;              // 100 * sum(filled) / sum(expected)
};

/// Scores the model against checklist v1 (22 items).
CompletenessReport completeness_report(const DatasetDescription& model);

/// Every item name of the checklist, grouped by section.
const std::vector<std::pair<Section, std::vector<std::string>>>& completeness_checklist();

nlohmann::json to_json(const CompletenessReport& report);
std::string format_report(const CompletenessReport& report);

// ---- diff -----------------------------------------------------------------

enum class ChangeKind { Added, Removed, Changed };

std::string_view to_string(ChangeKind kind);

struct DiffEntry {
  std::string path;
  ChangeKind kind = ChangeKind::Changed;
  std::optional<nlohmann::json> before;
  std::optional<nlohmann::json> after;
};

struct DiffReport {
  std::vector<DiffEntry> entries;
  bool empty() const { return entries.empty(); }
};

/// Structural comparison of the canonical JSON forms. Named elements are
/// matched by name, lists of records by position, and scalar lists as
/// whole values.
DiffReport compare(const DatasetDescription& a, const DatasetDescription& b);
DiffReport compare_json(const nlohmann::json& a, const nlohmann::json& b);

nlohmann::json to_json(const DiffReport& report);
std::string format_diff(const DiffReport& report);

// ---- declared vs. actual --------------------------------------------------

/// Tolerances used by check_statistics.
inline constexpr double kMomentTolerance = 0.01;
inline constexpr double kPercentTolerance = 0.5;

/// Recomputes the statistics of one instance from `table` and reports W030
/// for each declared value that disagrees, then type-checks (E030, E031)
/// and evaluates (E032) its consistency rules. The instance is `instance`
/// when given, else the one named like the table, else the only one.
/// Throws SchemaMismatch when no instance applies or a described
/// attribute has no column.
std::vector<Diagnostic> check_statistics(const DatasetDescription& model, const Table& table,
                                         const SourceMap* map = nullptr,
                                         const std::optional<std::string>& instance = std::nullopt);

}  // namespace datadesc

#endif  // DATADESC_ANALYSIS_HPP_
