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

#ifndef DATADESC_MODEL_HPP_
#define DATADESC_MODEL_HPP_

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "datadesc/rule_expr.hpp"

// Semantic model of a dataset description. Plain value types; reference
// fields hold names that build_model has already resolved.

namespace datadesc {

struct Date {
  int day = 1;
  int month = 1;
  int year = 1970;

  friend bool operator==(const Date&, const Date&) = default;
};

std::string format_date(const Date& date);  // DD-MM-YYYY

enum class ContributorRole { Author, Maintainer };
enum class FunderType { Public, Private, Mixed };
enum class InstanceType { RecordData, TimeSeries, LinkedData };
enum class AttributeType { Numerical, Categorical };
enum class TeamType { Crowdsourcing, External, Internal };
enum class IssueKind { Bias, Privacy, Other };

struct Contributor {
  std::string name;
  std::optional<std::string> email;
  ContributorRole role = ContributorRole::Author;

  friend bool operator==(const Contributor&, const Contributor&) = default;
};

struct Funder {
  std::string name;
  FunderType funder_type = FunderType::Public;
  std::optional<std::string> grantor;
  std::optional<std::string> grant_id;

  friend bool operator==(const Funder&, const Funder&) = default;
};

struct DescriptionInfo {
  std::string purposes;
  std::vector<std::string> tasks;
  std::string gaps;

  friend bool operator==(const DescriptionInfo&,
                         const DescriptionInfo&) = default;
};

struct Applications {
  std::vector<std::string> recommended;
  std::vector<std::string> non_recommended;
  std::vector<std::string> past_uses;

  friend bool operator==(const Applications&, const Applications&) = default;
};

struct Authoring {
  std::optional<std::string> contribution_guidelines;
  std::vector<Contributor> authors;
  std::vector<Funder> funders;
  std::vector<Contributor> maintainers;
  std::optional<std::string> maintenance_policies;

  friend bool operator==(const Authoring&, const Authoring&) = default;
};

struct Metadata {
  std::string unique_id;
  std::string title;
  std::string version;
  std::optional<Date> release_date;
  DescriptionInfo description;
  std::vector<std::string> tags;
  std::vector<std::string> categories;
  std::vector<std::string> licenses;
  std::vector<std::string> distribution_policies;
  Applications applications;
  Authoring authoring;

  friend bool operator==(const Metadata&, const Metadata&) = default;
};

/// A statistic that may be textual ("40-50") or numeric.
using StatValue = std::variant<std::string, double>;

std::string stat_value_text(const StatValue& value);

struct QualityInfo {
  std::optional<double> completeness_pct;
  std::optional<long long> sparsity_count;

  friend bool operator==(const QualityInfo&, const QualityInfo&) = default;
};

struct AttributeStatistics {
  std::optional<StatValue> mode;
  std::optional<double> mean;
  std::optional<double> median;
  std::optional<double> std_dev;
  std::optional<std::map<std::string, double>> categorical_distribution;
  QualityInfo quality;

  bool empty() const;
  friend bool operator==(const AttributeStatistics&,
                         const AttributeStatistics&) = default;
};

struct Attribute {
  std::string name;
  std::optional<std::string> description;
  AttributeType attr_type = AttributeType::Categorical;
  std::optional<std::string> labeling_process_ref;
  std::optional<AttributeStatistics> statistics;

  friend bool operator==(const Attribute&, const Attribute&) = default;
};

struct ExternalSource {
  std::string source;
  std::string rationale;

  friend bool operator==(const ExternalSource&, const ExternalSource&) = default;
};

struct PairCorrelation {
  std::string left;  // attribute of the enclosing instance
  std::variant<std::string, ExternalSource> right;
  std::optional<double> value;

  friend bool operator==(const PairCorrelation&,
                         const PairCorrelation&) = default;
};

struct InstanceStatistics {
  std::vector<PairCorrelation> pair_correlations;
  std::map<std::string, double> quality_metrics;

  bool empty() const {
    return pair_correlations.empty() && quality_metrics.empty();
  }
  friend bool operator==(const InstanceStatistics&,
                         const InstanceStatistics&) = default;
};

struct ConsistencyRule {
  std::string name;
  std::string context;  // data instance name
  RuleExpr expr;

  friend bool operator==(const ConsistencyRule&,
                         const ConsistencyRule&) = default;
};

struct DataInstance {
  std::string name;
  std::optional<std::string> description;
  InstanceType instance_type = InstanceType::RecordData;
  long long size = 0;
  std::vector<Attribute> attributes;
  std::optional<InstanceStatistics> statistics;
  std::vector<ConsistencyRule> consistency_rules;

  const Attribute* find_attribute(std::string_view attr) const;
  friend bool operator==(const DataInstance&, const DataInstance&) = default;
};

struct Composition {
  std::optional<std::string> rationale;
  std::vector<DataInstance> instances;

  const DataInstance* find_instance(std::string_view name) const;
  friend bool operator==(const Composition&, const Composition&) = default;
};

struct Demographics {
  std::vector<std::string> countries;
  std::map<std::string, std::string> other;

  friend bool operator==(const Demographics&, const Demographics&) = default;
};

struct DataSource {
  std::string name;
  std::optional<std::string> description;
  std::optional<std::string> noise;

  friend bool operator==(const DataSource&, const DataSource&) = default;
};

struct Team {
  std::optional<std::string> description;
  TeamType team_type = TeamType::Internal;
  std::optional<Demographics> demographics;

  friend bool operator==(const Team&, const Team&) = default;
};

struct GatheringProcess {
  std::string name;
  std::optional<std::string> description;
  std::string process_type;
  std::vector<DataSource> sources;
  std::vector<std::string> social_issue_refs;
  std::optional<Demographics> demographics;
  std::vector<std::string> requirements;

  friend bool operator==(const GatheringProcess&,
                         const GatheringProcess&) = default;
};

struct LabelingProcess {
  std::string name;
  std::optional<std::string> description;
  std::string process_type;
  std::vector<std::string> labels;  // qualified instance.attribute
  std::optional<Team> team;
  std::vector<std::string> requirements;
  std::vector<std::string> social_issue_refs;
  std::optional<Demographics> demographics;

  friend bool operator==(const LabelingProcess&,
                         const LabelingProcess&) = default;
};

struct Provenance {
  std::string curation_rationale;
  std::vector<GatheringProcess> gathering;
  std::vector<LabelingProcess> labeling;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct IssueType {
  IssueKind kind = IssueKind::Bias;
  std::string label;  // only for Other

  friend bool operator==(const IssueType&, const IssueType&) = default;
};

std::string issue_type_text(const IssueType& type);

struct SocialIssue {
  std::string name;
  IssueType issue_type;
  std::vector<std::string> related_attribute_refs;  // qualified
  std::string description;

  friend bool operator==(const SocialIssue&, const SocialIssue&) = default;
};

struct SocialConcerns {
  std::optional<std::string> rationale;
  std::vector<SocialIssue> issues;

  friend bool operator==(const SocialConcerns&, const SocialConcerns&) = default;
};

struct DatasetDescription {
  Metadata metadata;
  std::optional<Composition> composition;
  std::optional<Provenance> provenance;
  std::optional<SocialConcerns> social_concerns;

  friend bool operator==(const DatasetDescription&,
                         const DatasetDescription&) = default;
};

// Canonical surface spellings.
std::string_view to_string(ContributorRole v);
std::string_view to_string(FunderType v);
std::string_view to_string(InstanceType v);
std::string_view to_string(AttributeType v);
std::string_view to_string(TeamType v);

// Case-insensitive; hyphens, underscores and spaces are ignored.
std::optional<FunderType> parse_funder_type(std::string_view text);
std::optional<InstanceType> parse_instance_type(std::string_view text);
std::optional<AttributeType> parse_attribute_type(std::string_view text);
std::optional<TeamType> parse_team_type(std::string_view text);

/// Lowercase, non-alphanumeric runs collapsed to '-'.
std::string slugify(std::string_view text);
std::string default_unique_id(std::string_view title, std::string_view version);

}  // namespace datadesc

#endif  // DATADESC_MODEL_HPP_
