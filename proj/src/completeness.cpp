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
#include <sstream>

#include "datadesc/analysis.hpp"

namespace datadesc {

std::string_view to_string(Section section) {
  switch (section) {
    case Section::Metadata: return "Metadata";
    case Section::Composition: return "Composition";
    case Section::Provenance: return "Provenance";
    case Section::SocialConcerns: return "SocialConcerns";
  }
  return "";
}

const std::vector<std::pair<Section, std::vector<std::string>>>& completeness_checklist() {
  static const std::vector<std::pair<Section, std::vector<std::string>>> kChecklist = {
      {Section::Metadata,
       {"metadata.title", "metadata.version", "metadata.release_date", "metadata.purposes",
        "metadata.tasks", "metadata.gaps", "metadata.tags", "metadata.licenses",
        "metadata.authors"}},
      {Section::Composition,
       {"composition.rationale", "composition.instances.type", "composition.instances.size",
        "composition.attributes.type", "composition.attributes.statistics"}},
      {Section::Provenance,
       {"provenance.curation_rationale", "provenance.gathering",
        "provenance.gathering.demographics", "provenance.gathering.sources.noise",
        "provenance.labeling.team", "provenance.labeling.requirements"}},
      {Section::SocialConcerns,
       {"social_concerns.rationale_or_issues", "social_concerns.issues.attributes"}},
  };
  return kChecklist;
}

namespace {

// Non-empty and every element satisfies `pred`.
template <typename T, typename Pred>
bool all_of_nonempty(const std::vector<T>& v, Pred pred) {
  return !v.empty() && std::all_of(v.begin(), v.end(), pred);
}

bool item_filled(const DatasetDescription& m, const std::string& item) {
  const Metadata& md = m.metadata;
  if (item == "metadata.title") return !md.title.empty();
  if (item == "metadata.version") return !md.version.empty();
  if (item == "metadata.release_date") return md.release_date.has_value();
  if (item == "metadata.purposes") return !md.description.purposes.empty();
  if (item == "metadata.tasks") return !md.description.tasks.empty();
  if (item == "metadata.gaps") return !md.description.gaps.empty();
  if (item == "metadata.tags") return !md.tags.empty();
  if (item == "metadata.licenses") return !md.licenses.empty();
  if (item == "metadata.authors") return !md.authoring.authors.empty();

  static const std::vector<DataInstance> kNoInstances;
  const auto& instances = m.composition ? m.composition->instances : kNoInstances;
  if (item == "composition.rationale")
    return m.composition && m.composition->rationale && !m.composition->rationale->empty();
  if (item == "composition.instances.type" || item == "composition.instances.size")
    return !instances.empty();
  if (item == "composition.attributes.type")
    return all_of_nonempty(instances, [](const DataInstance& i) { return !i.attributes.empty(); });
  if (item == "composition.attributes.statistics")
    return all_of_nonempty(instances, [](const DataInstance& i) {
      return all_of_nonempty(i.attributes, [](const Attribute& a) { return a.statistics.has_value(); });
    });

  static const Provenance kNoProvenance;
  const Provenance& p = m.provenance ? *m.provenance : kNoProvenance;
  if (item == "provenance.curation_rationale") return !p.curation_rationale.empty();
  if (item == "provenance.gathering") return !p.gathering.empty();
  if (item == "provenance.gathering.demographics")
    return all_of_nonempty(p.gathering, [](const GatheringProcess& g) { return g.demographics.has_value(); });
  if (item == "provenance.gathering.sources.noise") {
    std::vector<const DataSource*> sources;
    for (const auto& g : p.gathering)
      for (const auto& s : g.sources) sources.push_back(&s);
    return all_of_nonempty(sources, [](const DataSource* s) { return s->noise && !s->noise->empty(); });
  }
  if (item == "provenance.labeling.team")
    return all_of_nonempty(p.labeling, [](const LabelingProcess& l) { return l.team.has_value(); });
  if (item == "provenance.labeling.requirements")
    return all_of_nonempty(p.labeling, [](const LabelingProcess& l) { return !l.requirements.empty(); });

  static const SocialConcerns kNoConcerns;
  const SocialConcerns& sc = m.social_concerns ? *m.social_concerns : kNoConcerns;
  if (item == "social_concerns.rationale_or_issues")
    return (sc.rationale && !sc.rationale->empty()) || !sc.issues.empty();
  if (item == "social_concerns.issues.attributes")
    return all_of_nonempty(sc.issues, [](const SocialIssue& i) { return !i.related_attribute_refs.empty(); });
  return false;
}

}  // namespace

CompletenessReport completeness_report(const DatasetDescription& model) {
  CompletenessReport r;
  r.checklist_version = "v1";
  long long filled = 0, expected = 0;
  for (const auto& [section, items] : completeness_checklist()) {
    SectionScore s;
    s.section = section;
    s.expected = static_cast<int>(items.size());
    for (const auto& item : items) {
      if (item_filled(model, item)) ++s.filled;
      else s.missing_items.push_back(item);
    }
    filled += s.filled;
    expected += s.expected;
    r.sections.push_back(std::move(s));
  }
  r.overall_pct = percent_half_up(filled, expected);
  return r;
}

nlohmann::json to_json(const CompletenessReport& report) {
  nlohmann::json j;
  j["checklist_version"] = report.checklist_version;
  j["overall_pct"] = report.overall_pct;
  j["sections"] = nlohmann::json::array();
  for (const auto& s : report.sections) {
    j["sections"].push_back({{"section", to_string(s.section)},
                             {"filled", s.filled},
                             {"expected", s.expected},
                             {"missing_items", s.missing_items}});
  }
  return j;
}

std::string format_report(const CompletenessReport& report) {
  std::ostringstream out;
  out << "Completeness (checklist " << report.checklist_version << ")\n";
  out << "  Section          Filled  Missing\n";
  for (const auto& s : report.sections) {
    std::string name(to_string(s.section));
    out << "  " << name << std::string(17 - name.size(), ' ') << s.filled << "/" << s.expected;
    std::string counts = std::to_string(s.filled) + "/" + std::to_string(s.expected);
    out << std::string(counts.size() < 8 ? 8 - counts.size() : 1, ' ');
    for (size_t i = 0; i < s.missing_items.size(); ++i)
      out << (i ? ", " : "") << s.missing_items[i];
    if (s.missing_items.empty()) out << "-";
    out << "\n";
  }
  out << "  Overall: " << format_number(report.overall_pct) << "%\n";
  return out.str();
}

}  // namespace datadesc
