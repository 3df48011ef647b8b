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

#include "datadesc/model_json.hpp"

#include <algorithm>

namespace datadesc {

using nlohmann::json;

namespace {

template <typename T>
void put(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

void put_list(json& j, const char* key, const std::vector<std::string>& v) {
  if (!v.empty()) j[key] = v;
}

void put_text(json& j, const char* key, const std::string& v) {
  if (!v.empty()) j[key] = v;
}

json sorted_by_name(json list) {
  std::stable_sort(list.begin(), list.end(), [](const json& a, const json& b) {
    return a.at("name").get<std::string>() < b.at("name").get<std::string>();
  });
  return list;
}

json contributor(const Contributor& c) {
  json j = {{"name", c.name}};
  put(j, "email", c.email);
  return j;
}

json stat_value(const StatValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  return std::get<std::string>(v);
}

json metadata(const Metadata& m) {
  json j = {{"unique_id", m.unique_id}, {"title", m.title}, {"version", m.version}};
  if (m.release_date) j["release_date"] = format_date(*m.release_date);
  json d = json::object();
  put_text(d, "purposes", m.description.purposes);
  put_list(d, "tasks", m.description.tasks);
  put_text(d, "gaps", m.description.gaps);
  if (!d.empty()) j["description"] = d;
  put_list(j, "tags", m.tags);
  put_list(j, "categories", m.categories);
  put_list(j, "licenses", m.licenses);
  put_list(j, "distribution_policies", m.distribution_policies);
  json a = json::object();
  put_list(a, "recommended", m.applications.recommended);
  put_list(a, "non_recommended", m.applications.non_recommended);
  put_list(a, "past_uses", m.applications.past_uses);
  if (!a.empty()) j["applications"] = a;
  json au = json::object();
  put(au, "contribution_guidelines", m.authoring.contribution_guidelines);
  for (const auto& c : m.authoring.authors) au["authors"].push_back(contributor(c));
  for (const auto& f : m.authoring.funders) {
    json fj = {{"name", f.name}, {"type", to_string(f.funder_type)}};
    put(fj, "grantor", f.grantor);
    put(fj, "grant_id", f.grant_id);
    au["funders"].push_back(fj);
  }
  for (const auto& c : m.authoring.maintainers) au["maintainers"].push_back(contributor(c));
  put(au, "maintenance_policies", m.authoring.maintenance_policies);
  if (!au.empty()) j["authoring"] = au;
  return j;
}

json attribute(const Attribute& a) {
  json j = {{"name", a.name}, {"type", to_string(a.attr_type)}};
  put(j, "description", a.description);
  put(j, "labeling_process", a.labeling_process_ref);
  if (a.statistics) {
    const AttributeStatistics& s = *a.statistics;
    json sj = json::object();
    if (s.mode) sj["mode"] = stat_value(*s.mode);
    put(sj, "mean", s.mean);
    put(sj, "median", s.median);
    put(sj, "std_dev", s.std_dev);
    if (s.categorical_distribution) sj["categorical_distribution"] = *s.categorical_distribution;
    put(sj, "completeness", s.quality.completeness_pct);
    put(sj, "sparsity", s.quality.sparsity_count);
    j["statistics"] = sj;
  }
  return j;
}

json instance(const DataInstance& inst) {
  json j = {{"name", inst.name},
            {"type", to_string(inst.instance_type)},
            {"size", inst.size}};
  put(j, "description", inst.description);
  if (!inst.attributes.empty()) {
    json list = json::array();
    for (const auto& a : inst.attributes) list.push_back(attribute(a));
    j["attributes"] = sorted_by_name(list);
  }
  if (inst.statistics) {
    json sj = json::object();
    for (const auto& pc : inst.statistics->pair_correlations) {
      json pj = {{"left", pc.left}};
      if (const auto* ext = std::get_if<ExternalSource>(&pc.right)) {
        json ej = {{"source", ext->source}};
        put_text(ej, "rationale", ext->rationale);
        pj["external"] = ej;
      } else {
        pj["right"] = std::get<std::string>(pc.right);
      }
      put(pj, "value", pc.value);
      sj["pair_correlations"].push_back(pj);
    }
    if (!inst.statistics->quality_metrics.empty())
      sj["quality_metrics"] = inst.statistics->quality_metrics;
    j["statistics"] = sj;
  }
  if (!inst.consistency_rules.empty()) {
    json list = json::array();
    for (const auto& r : inst.consistency_rules)
      list.push_back({{"name", r.name},
                      {"context", r.context},
                      {"expression", print_rule_expression(r.expr)}});
    j["consistency_rules"] = sorted_by_name(list);
  }
  return j;
}

json demographics(const Demographics& d) {
  json j = json::object();
  put_list(j, "countries", d.countries);
  for (const auto& [k, v] : d.other) j["other"][k] = v;
  return j;
}

json provenance(const Provenance& p) {
  json j = json::object();
  put_text(j, "curation_rationale", p.curation_rationale);
  if (!p.gathering.empty()) {
    json list = json::array();
    for (const auto& g : p.gathering) {
      json gj = {{"name", g.name}};
      put(gj, "description", g.description);
      put_text(gj, "type", g.process_type);
      if (!g.sources.empty()) {
        json sources = json::array();
        for (const auto& s : g.sources) {
          json sj = {{"name", s.name}};
          put(sj, "description", s.description);
          put(sj, "noise", s.noise);
          sources.push_back(sj);
        }
        gj["sources"] = sorted_by_name(sources);
      }
      put_list(gj, "social_issues", g.social_issue_refs);
      if (g.demographics) gj["demographics"] = demographics(*g.demographics);
      put_list(gj, "requirements", g.requirements);
      list.push_back(gj);
    }
    j["gathering"] = sorted_by_name(list);
  }
  if (!p.labeling.empty()) {
    json list = json::array();
    for (const auto& l : p.labeling) {
      json lj = {{"name", l.name}};
      put(lj, "description", l.description);
      put_text(lj, "type", l.process_type);
      put_list(lj, "labels", l.labels);
      if (l.team) {
        json tj = {{"type", to_string(l.team->team_type)}};
        put(tj, "description", l.team->description);
        if (l.team->demographics) tj["demographics"] = demographics(*l.team->demographics);
        lj["team"] = tj;
      }
      put_list(lj, "requirements", l.requirements);
      put_list(lj, "social_issues", l.social_issue_refs);
      if (l.demographics) lj["demographics"] = demographics(*l.demographics);
      list.push_back(lj);
    }
    j["labeling"] = sorted_by_name(list);
  }
  return j;
}

json social_concerns(const SocialConcerns& sc) {
  json j = json::object();
  put(j, "rationale", sc.rationale);
  if (!sc.issues.empty()) {
    json list = json::array();
    for (const auto& i : sc.issues) {
      json ij = {{"name", i.name}, {"type", issue_type_text(i.issue_type)}};
      put_list(ij, "related_attributes", i.related_attribute_refs);
      put_text(ij, "description", i.description);
      list.push_back(ij);
    }
    j["issues"] = sorted_by_name(list);
  }
  return j;
}

}  // namespace

json to_json(const DatasetDescription& model) {
  json j = {{"metadata", metadata(model.metadata)}};
  if (model.composition) {
    json c = json::object();
    put(c, "rationale", model.composition->rationale);
    if (!model.composition->instances.empty()) {
      json list = json::array();
      for (const auto& i : model.composition->instances) list.push_back(instance(i));
      c["instances"] = sorted_by_name(list);
    }
    j["composition"] = c;
  }
  if (model.provenance) j["provenance"] = provenance(*model.provenance);
  if (model.social_concerns) j["social_concerns"] = social_concerns(*model.social_concerns);
  return j;
}

std::string to_json_string(const DatasetDescription& model, int indent) {
  return to_json(model).dump(indent);
}

}  // namespace datadesc
