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

#include "datadesc/model.hpp"

#include <cctype>
#include <cstdio>

namespace datadesc {

std::string format_date(const Date& date) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%02d-%02d-%04d", date.day, date.month,
                date.year);
  return buf;
}

std::string stat_value_text(const StatValue& value) {
  if (const auto* s = std::get_if<std::string>(&value)) return *s;
  return format_number(std::get<double>(value));
}

bool AttributeStatistics::empty() const {
  return !mode && !mean && !median && !std_dev && !categorical_distribution &&
         !quality.completeness_pct && !quality.sparsity_count;
}

const Attribute* DataInstance::find_attribute(std::string_view attr) const {
  for (const auto& a : attributes)
    if (a.name == attr) return &a;
  return nullptr;
}

const DataInstance* Composition::find_instance(std::string_view name) const {
  for (const auto& i : instances)
    if (i.name == name) return &i;
  return nullptr;
}

std::string issue_type_text(const IssueType& type) {
  switch (type.kind) {
    case IssueKind::Bias: return "Bias";
    case IssueKind::Privacy: return "Privacy";
    case IssueKind::Other: return "Other(" + type.label + ")";
  }
  return {};
}

std::string_view to_string(ContributorRole v) {
  return v == ContributorRole::Author ? "Author" : "Maintainer";
}

std::string_view to_string(FunderType v) {
  switch (v) {
    case FunderType::Public: return "public";
    case FunderType::Private: return "private";
    case FunderType::Mixed: return "mixed";
  }
  return {};
}

std::string_view to_string(InstanceType v) {
  switch (v) {
    case InstanceType::RecordData: return "Record-Data";
    case InstanceType::TimeSeries: return "Time-Series";
    case InstanceType::LinkedData: return "Linked-Data";
  }
  return {};
}

std::string_view to_string(AttributeType v) {
  return v == AttributeType::Numerical ? "Numerical" : "Categorical";
}

std::string_view to_string(TeamType v) {
  switch (v) {
    case TeamType::Crowdsourcing: return "Crowdsourcing";
    case TeamType::External: return "External";
    case TeamType::Internal: return "Internal";
  }
  return {};
}

namespace {

std::string fold(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '-' || c == '_' || std::isspace(static_cast<unsigned char>(c)))
      continue;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

}  // namespace

std::optional<FunderType> parse_funder_type(std::string_view text) {
  auto f = fold(text);
  if (f == "public") return FunderType::Public;
  if (f == "private") return FunderType::Private;
  if (f == "mixed") return FunderType::Mixed;
  return std::nullopt;
}

std::optional<InstanceType> parse_instance_type(std::string_view text) {
  auto f = fold(text);
  if (f == "recorddata") return InstanceType::RecordData;
  if (f == "timeseries") return InstanceType::TimeSeries;
  if (f == "linkeddata") return InstanceType::LinkedData;
  return std::nullopt;
}

std::optional<AttributeType> parse_attribute_type(std::string_view text) {
  auto f = fold(text);
  if (f == "numerical") return AttributeType::Numerical;
  if (f == "categorical") return AttributeType::Categorical;
  return std::nullopt;
}

std::optional<TeamType> parse_team_type(std::string_view text) {
  auto f = fold(text);
  if (f == "crowdsourcing") return TeamType::Crowdsourcing;
  if (f == "external") return TeamType::External;
  if (f == "internal") return TeamType::Internal;
  return std::nullopt;
}

std::string slugify(std::string_view text) {
  std::string out;
  bool dash = false;
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      if (dash && !out.empty()) out += '-';
      dash = false;
      out += static_cast<char>(std::tolower(c));
    } else {
      dash = true;
    }
  }
  return out;
}

std::string default_unique_id(std::string_view title,
                              std::string_view version) {
  auto slug = slugify(title);
  auto v = slugify(version);
  if (slug.empty()) return v;
  if (v.empty()) return slug;
  return slug + "-" + v;
}

}  // namespace datadesc
