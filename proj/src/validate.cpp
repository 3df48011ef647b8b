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
#include <set>

#include "datadesc/semantics.hpp"

namespace datadesc {

namespace {

constexpr double kDistributionSlack = 0.5;

class Validator {
 public:
  Validator(const DatasetDescription& model, const SourceMap* map)
      : m_(model), map_(map) {}

  std::vector<Diagnostic> run() {
    metadata();
    if (m_.composition) composition(*m_.composition);
    if (m_.provenance) provenance(*m_.provenance);
    if (m_.social_concerns) social_concerns(*m_.social_concerns);
    sort_diagnostics(out_);
    return std::move(out_);
  }

 private:
  SourceSpan span(const std::string& key) const {
    return map_ ? map_->span_of(key) : SourceSpan::point(1, 1);
  }
  void emit(std::string code, std::string msg, const std::string& key) {
    out_.push_back(make_diagnostic(std::move(code), std::move(msg), span(key)));
  }

  void metadata() {
    const Metadata& md = m_.metadata;
    if (md.title.empty()) emit("E026", "title must not be empty", "metadata");
    if (md.version.empty()) emit("E026", "version must not be empty", "metadata");
    std::set<std::string> tags;
    for (const auto& t : md.tags)
      if (!tags.insert(t).second) emit("E025", "duplicate tag '" + t + "'", "tags");
    for (const auto* list : {&md.authoring.authors, &md.authoring.maintainers})
      for (const auto& c : *list)
        if (c.name.empty()) emit("E026", "contributor name must not be empty", "metadata");
    for (size_t i = 0; i < md.authoring.funders.size(); ++i) {
      const Funder& f = md.authoring.funders[i];
      std::string key = "funder:" + std::to_string(i);
      if (f.name.empty()) emit("E026", "funder name must not be empty", key);
      if (f.grant_id && !f.grantor) {
        emit("E024", "funder '" + f.name + "' has a grant id but no grantor", key);
      }
    }
  }

  void composition(const Composition& c) {
    std::set<std::string> names;
    for (const auto& inst : c.instances) {
      if (!names.insert(inst.name).second)
        emit("E011", "duplicate data instance name '" + inst.name + "'",
             "instance:" + inst.name);
      instance(inst);
    }
  }

  void percentage(double v, const std::string& what, const std::string& key) {
    if (v < 0 || v > 100) {
      emit("E020", what + " " + format_number(v) + " is outside [0, 100]", key);
    }
  }

  void instance(const DataInstance& inst) {
    const std::string ikey = "instance:" + inst.name;
    if (inst.attributes.empty()) {
      emit("W021", "instance '" + inst.name + "' declares no attributes", ikey);
    }
    if (inst.size < 0) emit("E020", "instance size must be non-negative", ikey);
    std::set<std::string> names;
    for (const auto& a : inst.attributes) {
      std::string qualified = inst.name + "." + a.name;
      if (!names.insert(a.name).second) {
        emit("E011", "duplicate attribute name '" + a.name + "' in instance '" +
                         inst.name + "'", "attribute:" + qualified);
      }
      if (a.labeling_process_ref) labeling_ref(inst, a);
      if (a.statistics) statistics(a, qualified, *a.statistics);
    }
    if (inst.statistics) {
      const InstanceStatistics& st = *inst.statistics;
      for (size_t i = 0; i < st.pair_correlations.size(); ++i) {
        const PairCorrelation& pc = st.pair_correlations[i];
        std::string key = "correlation:" + inst.name + ":" + std::to_string(i);
        if (!inst.find_attribute(pc.left)) {
          emit("E010", "unresolved attribute reference '" + pc.left + "' in instance '" +
                           inst.name + "'", key);
        }
        if (const auto* right = std::get_if<std::string>(&pc.right)) {
          if (!inst.find_attribute(*right)) {
            emit("E010", "unresolved attribute reference '" + *right + "' in instance '" +
                             inst.name + "'", key);
          }
        }
        if (pc.value && (*pc.value < -1 || *pc.value > 1)) {
          emit("E023", "correlation value " + format_number(*pc.value) +
                           " is outside [-1, 1]", key);
        }
      }
      auto it = st.quality_metrics.find("Completeness");
      if (it != st.quality_metrics.end()) {
        percentage(it->second, "completeness", "metric:" + inst.name + ":Completeness");
      }
    }
    for (const auto& rule : inst.consistency_rules) {
      std::string key = "rule:" + inst.name + ":" + rule.name;
      if (rule.context != inst.name) {
        emit("E012", "rule '" + rule.name + "' has context '" + rule.context +
                         "' but is declared in instance '" + inst.name + "'", key);
      }
      for (const auto& attr : referenced_attributes(rule.expr)) {
        if (!inst.find_attribute(attr)) {
          emit("E030", "rule '" + rule.name + "' mentions '" + attr +
                           "', which is not an attribute of '" + inst.name + "'", key);
        }
      }
    }
  }

  void labeling_ref(const DataInstance& inst, const Attribute& a) {
    std::string key = "attribute:" + inst.name + "." + a.name;
    const LabelingProcess* lp = nullptr;
    if (m_.provenance)
      for (const auto& p : m_.provenance->labeling)
        if (p.name == *a.labeling_process_ref) lp = &p;
    if (!lp) {
      emit("E010", "unresolved labeling process reference '" + *a.labeling_process_ref + "'",
           key);
      return;
    }
    std::string qualified = inst.name + "." + a.name;
    if (std::find(lp->labels.begin(), lp->labels.end(), qualified) == lp->labels.end()) {
      emit("E013", "attribute '" + qualified + "' names labeling process '" + lp->name +
                       "', but that process does not list it under Labels", key);
    }
  }

  void statistics(const Attribute& a, const std::string& qualified,
                  const AttributeStatistics& s) {
    std::string key = "statistics:" + qualified;
    if (a.attr_type == AttributeType::Categorical) {
      for (auto [name, v] : {std::pair{"mean", s.mean}, std::pair{"median", s.median},
                             std::pair{"standard deviation", s.std_dev}}) {
        if (v) {
          emit("E022", std::string(name) + " is declared on categorical attribute '" +
                           qualified + "'", key);
        }
      }
    } else if (s.categorical_distribution) {
      emit("E022", "categorical distribution is declared on numerical attribute '" +
                       qualified + "'", "distribution:" + qualified);
    }
    if (s.quality.completeness_pct) {
      percentage(*s.quality.completeness_pct, "completeness of '" + qualified + "'",
                 "completeness:" + qualified);
    }
    if (s.quality.sparsity_count && *s.quality.sparsity_count < 0) {
      emit("E020", "sparsity of '" + qualified + "' must be non-negative", key);
    }
    if (s.categorical_distribution) {
      std::string dkey = "distribution:" + qualified;
      double sum = 0;
      for (const auto& [cat, pct] : *s.categorical_distribution) {
        percentage(pct, "share of '" + cat + "'", dkey);
        sum += pct;
      }
      if (sum > 100 + kDistributionSlack) {
        emit("E021", "distribution of '" + qualified + "' sums to " + format_number(sum) +
                         ", more than 100", dkey);
      } else if (sum < 100 - kDistributionSlack) {
        emit("W020", "distribution of '" + qualified + "' sums to " + format_number(sum) +
                         ", less than 100 (partial listing)", dkey);
      }
    }
  }

  const Attribute* attribute(std::string_view qualified) const {
    if (!m_.composition) return nullptr;
    auto dot = qualified.find('.');
    if (dot == std::string_view::npos) return nullptr;
    const DataInstance* inst = m_.composition->find_instance(qualified.substr(0, dot));
    return inst ? inst->find_attribute(qualified.substr(dot + 1)) : nullptr;
  }

  bool issue_declared(const std::string& name) const {
    if (!m_.social_concerns) return false;
    for (const auto& i : m_.social_concerns->issues)
      if (i.name == name) return true;
    return false;
  }

  void issue_refs(const std::vector<std::string>& refs, const std::string& key) {
    for (const auto& r : refs)
      if (!issue_declared(r)) emit("E010", "unresolved social issue reference '" + r + "'", key);
  }

  void demographics(const std::optional<Demographics>& d, const std::string& key) {
    if (!d) return;
    for (const auto& c : d->countries)
      if (c.empty()) emit("E026", "country entries must not be empty", key);
  }

  void provenance(const Provenance& p) {
    std::set<std::string> names;
    for (const auto& g : p.gathering) {
      std::string key = "process:" + g.name;
      if (!names.insert(g.name).second)
        emit("E011", "duplicate process name '" + g.name + "'", key);
      for (const auto& s : g.sources)
        if (s.name.empty()) emit("E026", "source name must not be empty", key);
      issue_refs(g.social_issue_refs, key);
      demographics(g.demographics, key);
    }
    for (const auto& l : p.labeling) {
      std::string key = "process:" + l.name;
      if (!names.insert(l.name).second)
        emit("E011", "duplicate process name '" + l.name + "'", key);
      issue_refs(l.social_issue_refs, key);
      demographics(l.demographics, key);
      if (l.team) demographics(l.team->demographics, key);
      for (const auto& label : l.labels) {
        const Attribute* a = attribute(label);
        if (!a) {
          emit("E010", "unresolved attribute reference '" + label + "'", key);
        } else if (a->labeling_process_ref != l.name) {
          emit("E013", "process '" + l.name + "' labels '" + label +
                           "', but that attribute does not name it as its labeling process",
               key);
        }
      }
    }
  }

  void social_concerns(const SocialConcerns& sc) {
    std::set<std::string> names;
    for (const auto& issue : sc.issues) {
      std::string key = "issue:" + issue.name;
      if (!names.insert(issue.name).second)
        emit("E011", "duplicate social issue name '" + issue.name + "'", key);
      for (const auto& r : issue.related_attribute_refs)
        if (!attribute(r)) emit("E010", "unresolved attribute reference '" + r + "'", key);
    }
  }

  const DatasetDescription& m_;
  const SourceMap* map_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> validate(const DatasetDescription& model, const SourceMap* map) {
  return Validator(model, map).run();
}

Element resolve(const DatasetDescription& model, std::string_view qualified_name) {
  auto dot = qualified_name.find('.');
  if (dot != std::string_view::npos) {
    std::string_view inst = qualified_name.substr(0, dot);
    std::string_view attr = qualified_name.substr(dot + 1);
    if (model.composition)
      if (const DataInstance* i = model.composition->find_instance(inst))
        if (const Attribute* a = i->find_attribute(attr)) return a;
    throw ResolveError(ResolveError::Kind::NotFound,
                       "no attribute '" + std::string(qualified_name) + "'");
  }
  std::vector<Element> hits;
  if (model.composition)
    if (const DataInstance* i = model.composition->find_instance(qualified_name))
      hits.emplace_back(i);
  if (model.provenance) {
    for (const auto& g : model.provenance->gathering)
      if (g.name == qualified_name) hits.emplace_back(&g);
    for (const auto& l : model.provenance->labeling)
      if (l.name == qualified_name) hits.emplace_back(&l);
  }
  if (model.social_concerns)
    for (const auto& s : model.social_concerns->issues)
      if (s.name == qualified_name) hits.emplace_back(&s);
  if (hits.empty()) {
    throw ResolveError(ResolveError::Kind::NotFound,
                       "no element named '" + std::string(qualified_name) + "'");
  }
  if (hits.size() > 1) {
    throw ResolveError(ResolveError::Kind::Ambiguous,
                       "name '" + std::string(qualified_name) + "' is ambiguous");
  }
  return hits.front();
}

}  // namespace datadesc
