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
#include <charconv>
#include <set>
#include <utility>

#include "datadesc/semantics.hpp"

namespace datadesc {

std::string_view to_string(SymbolCategory category) {
  switch (category) {
    case SymbolCategory::Instance: return "data instance";
    case SymbolCategory::Attribute: return "attribute";
    case SymbolCategory::GatheringProcess: return "gathering process";
    case SymbolCategory::LabelingProcess: return "labeling process";
    case SymbolCategory::SocialIssue: return "social issue";
  }
  return "";
}

const Declaration* SourceMap::find(SymbolCategory category,
                                   std::string_view name) const {
  for (const auto& d : declarations)
    if (d.category == category && d.name == name) return &d;
  return nullptr;
}

const Reference* SourceMap::reference_at(int line, int col) const {
  for (const auto& r : references)
    if (r.span.contains(line, col)) return &r;
  return nullptr;
}

SourceSpan SourceMap::span_of(const std::string& key) const {
  auto it = element_spans.find(key);
  return it == element_spans.end() ? SourceSpan::point(1, 1) : it->second;
}

namespace {

double to_double(const SyntaxNode* leaf) {
  if (!leaf) return 0;
  std::string_view s = leaf->value;
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  double v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

const SyntaxNode* value_leaf(const SyntaxNode* field) {
  if (!field) return nullptr;
  for (size_t i = 1; i < field->children.size(); ++i)
    if (field->children[i].is_leaf() &&
        field->children[i].kind != NodeKind::Punct &&
        field->children[i].kind != NodeKind::Elision)
      return &field->children[i];
  return nullptr;
}

std::optional<std::string> text_of(const SyntaxNode* node, std::string_view tag) {
  if (!node) return std::nullopt;
  const SyntaxNode* leaf = value_leaf(node->child(tag));
  if (!leaf) return std::nullopt;
  return leaf->value;
}

std::vector<std::string> list_of(const SyntaxNode* node, std::string_view tag) {
  std::vector<std::string> out;
  if (!node) return out;
  for (const SyntaxNode* f : node->children_tagged(tag))
    for (size_t i = 1; i < f->children.size(); ++i) {
      const auto& c = f->children[i];
      if (c.kind == NodeKind::String || c.kind == NodeKind::Phrase)
        out.push_back(c.value);
    }
  return out;
}

std::vector<const SyntaxNode*> reference_leaves(const SyntaxNode* field) {
  std::vector<const SyntaxNode*> out;
  if (!field) return out;
  for (const auto& c : field->children)
    if (c.kind == NodeKind::Identifier || c.kind == NodeKind::QualifiedName)
      out.push_back(&c);
  return out;
}

const SyntaxNode* name_leaf(const SyntaxNode& node) {
  return node.leaf(NodeKind::Identifier);
}

SourceSpan header_span(const SyntaxNode& node) {
  const SyntaxNode* name = name_leaf(node);
  if (!name) return node.children.front().span;
  return SourceSpan::cover(node.children.front().span, name->span);
}

class Builder {
 public:
  BuildResult run(const SyntaxTree& tree) {
    const SyntaxNode& root = tree.root;
    if (auto* m = root.child("Metadata")) metadata(*m);
    if (auto* c = root.child("Composition")) composition(*c);
    if (auto* p = root.child("Provenance")) provenance(*p);
    if (auto* s = root.child("SocialConcerns")) social_concerns(*s);
    check_top_level_collisions();
    resolve_all();
    sort_diagnostics(diags_);
    BuildResult r;
    r.diagnostics = std::move(diags_);
    r.source_map = std::move(map_);
    if (!has_errors(r.diagnostics)) r.model = std::move(model_);
    return r;
  }

 private:
  void error(std::string code, std::string msg, SourceSpan span) {
    diags_.push_back(make_diagnostic(std::move(code), std::move(msg), span));
  }

  bool declare(SymbolCategory cat, std::string name, const SyntaxNode& node,
               std::string_view scope_desc) {
    const SyntaxNode* n = name_leaf(node);
    SourceSpan name_span = n ? n->span : node.span;
    if (const Declaration* prev = map_.find(cat, name)) {
      error("E011",
            "duplicate " + std::string(to_string(cat)) + " name '" + name +
                "' in " + std::string(scope_desc) + " (first declared at line " +
                std::to_string(prev->span.start_line) + ")",
            name_span);
      return false;
    }
    map_.declarations.push_back({cat, std::move(name), header_span(node), name_span});
    return true;
  }

  // ---- metadata ---------------------------------------------------------

  void metadata(const SyntaxNode& s) {
    Metadata& m = model_.metadata;
    map_.element_spans["metadata"] = s.children.front().span;
    m.title = text_of(&s, "Title").value_or("");
    m.version = text_of(&s, "Version").value_or("");
    m.unique_id = text_of(&s, "UniqueId").value_or(default_unique_id(m.title, m.version));
    if (const SyntaxNode* d = value_leaf(s.child("ReleaseDate"))) {
      const std::string& t = d->value;
      if (t.size() == 10) {
        m.release_date = Date{std::atoi(t.substr(0, 2).c_str()),
                              std::atoi(t.substr(3, 2).c_str()),
                              std::atoi(t.substr(6, 4).c_str())};
      }
    }
    if (const SyntaxNode* d = s.child("Description")) {
      m.description.purposes = text_of(d, "Purposes").value_or("");
      m.description.tasks = list_of(d, "Tasks");
      m.description.gaps = text_of(d, "Gaps").value_or("");
    }
    m.licenses = list_of(&s, "Licenses");
    m.tags = list_of(&s, "Tags");
    if (const SyntaxNode* t = s.child("Tags")) map_.element_spans["tags"] = t->span;
    m.categories = list_of(&s, "Categories");
    m.distribution_policies = list_of(&s, "DistributionPolicies");
    if (const SyntaxNode* a = s.child("Applications")) {
      m.applications.recommended = list_of(a, "Recommended");
      m.applications.non_recommended = list_of(a, "NonRecommended");
      m.applications.past_uses = list_of(a, "PastUses");
    }
    if (const SyntaxNode* a = s.child("Authoring")) {
      Authoring& au = m.authoring;
      au.contribution_guidelines = text_of(a, "ContributionGuidelines");
      au.maintenance_policies = text_of(a, "MaintenancePolicies");
      au.authors = contributors(a->child("Authors"), ContributorRole::Author);
      au.maintainers = contributors(a->child("Maintainers"), ContributorRole::Maintainer);
      if (const SyntaxNode* fs = a->child("Funders")) {
        for (const SyntaxNode* f : fs->children_tagged("Funder")) {
          Funder funder;
          if (const SyntaxNode* n = f->leaf(NodeKind::String)) funder.name = n->value;
          if (auto t = text_of(f, "FunderType"))
            funder.funder_type = parse_funder_type(*t).value_or(FunderType::Public);
          funder.grantor = text_of(f, "Grantor");
          funder.grant_id = text_of(f, "GrantId");
          map_.element_spans["funder:" + std::to_string(au.funders.size())] = f->span;
          au.funders.push_back(std::move(funder));
        }
      }
    }
  }

  std::vector<Contributor> contributors(const SyntaxNode* list, ContributorRole role) {
    std::vector<Contributor> out;
    if (!list) return out;
    for (const SyntaxNode* c : list->children_tagged("Contributor")) {
      Contributor who;
      if (const SyntaxNode* n = c->leaf(NodeKind::String)) who.name = n->value;
      who.email = text_of(c, "Email");
      who.role = role;
      out.push_back(std::move(who));
    }
    return out;
  }

  // ---- composition ------------------------------------------------------

  void composition(const SyntaxNode& s) {
    Composition c;
    c.rationale = text_of(&s, "Rationale");
    if (const SyntaxNode* list = s.child("DataInstances")) {
      for (const SyntaxNode* i : list->children_tagged("Instance")) {
        const SyntaxNode* n = name_leaf(*i);
        if (!n) continue;
        if (!declare(SymbolCategory::Instance, n->value, *i, "composition")) continue;
        c.instances.push_back(instance(*i, n->value));
      }
    }
    if (c.rationale || !c.instances.empty()) model_.composition = std::move(c);
  }

  DataInstance instance(const SyntaxNode& node, const std::string& name) {
    DataInstance inst;
    inst.name = name;
    map_.element_spans["instance:" + name] = header_span(node);
    inst.description = text_of(&node, "Description");
    if (auto t = text_of(&node, "Type"))
      inst.instance_type = parse_instance_type(*t).value_or(InstanceType::RecordData);
    if (const SyntaxNode* sz = value_leaf(node.child("Size"))) {
      auto [ptr, ec] = std::from_chars(sz->value.data(),
                                       sz->value.data() + sz->value.size(), inst.size);
      if (ec != std::errc{}) error("E003", "size '" + sz->value + "' is out of range", sz->span);
    }
    if (const SyntaxNode* attrs = node.child("Attributes")) {
      for (const SyntaxNode* a : attrs->children_tagged("Attribute")) {
        const SyntaxNode* an = name_leaf(*a);
        if (!an) continue;
        if (!declare(SymbolCategory::Attribute, name + "." + an->value, *a,
                     "instance '" + name + "'"))
          continue;
        inst.attributes.push_back(attribute(*a, name, an->value));
      }
    }
    if (const SyntaxNode* st = node.child("InstanceStatistics")) {
      InstanceStatistics stats;
      size_t index = 0;
      for (const SyntaxNode* pc : st->children_tagged("PairCorrelation")) {
        map_.element_spans["correlation:" + name + ":" + std::to_string(index++)] = pc->span;
        stats.pair_correlations.push_back(pair_correlation(*pc, name));
      }
      if (const SyntaxNode* qm = st->child("QualityMetrics")) {
        for (const SyntaxNode* e : qm->children_tagged("Metric")) {
          const SyntaxNode& key = e->children.front();
          std::string metric = key.value;
          double v = to_double(e->leaf(NodeKind::Percentage));
          if (!stats.quality_metrics.emplace(metric, v).second) {
            error("E011", "duplicate quality metric '" + metric + "'", key.span);
          }
          map_.element_spans["metric:" + name + ":" + metric] = e->span;
        }
      }
      if (!stats.empty()) inst.statistics = std::move(stats);
    }
    if (const SyntaxNode* rules = node.child("ConsistencyRules")) {
      for (const SyntaxNode* r : rules->children_tagged("Rule")) {
        ConsistencyRule rule;
        const SyntaxNode* ctx = name_leaf(*r);
        rule.context = ctx ? ctx->value : name;
        rule.name = default_rule_name(name, inst.consistency_rules.size());
        for (const auto& c : r->children)
          if (c.tag == "name") rule.name = c.value;
        if (const SyntaxNode* e = r->leaf(NodeKind::Expression)) {
          auto parsed = parse_rule_expression(e->value, e->span.start_line,
                                              e->span.start_col);
          if (parsed.expr) rule.expr = std::move(*parsed.expr);
        }
        bool dup = std::any_of(inst.consistency_rules.begin(), inst.consistency_rules.end(),
                               [&](const auto& x) { return x.name == rule.name; });
        if (dup) {
          error("E011", "duplicate consistency rule name '" + rule.name + "'", r->span);
          continue;
        }
        map_.element_spans["rule:" + name + ":" + rule.name] = r->span;
        if (ctx) {
          pending_.push_back({PendingKind::RuleContext, ctx->value, ctx->span, name, {}});
        }
        inst.consistency_rules.push_back(std::move(rule));
      }
    }
    return inst;
  }

  static std::string default_rule_name(const std::string& instance, size_t index) {
    return instance + "_inv" + std::to_string(index + 1);
  }

  Attribute attribute(const SyntaxNode& node, const std::string& inst,
                      const std::string& name) {
    Attribute a;
    a.name = name;
    std::string key = inst + "." + name;
    map_.element_spans["attribute:" + key] = header_span(node);
    a.description = text_of(&node, "Description");
    if (auto t = text_of(&node, "OfType"))
      a.attr_type = parse_attribute_type(*t).value_or(AttributeType::Categorical);
    if (const SyntaxNode* lp = value_leaf(node.child("LabelingProcessRef"))) {
      a.labeling_process_ref = lp->value;
      pending_.push_back({PendingKind::LabelingProcessRef, lp->value, lp->span, inst, name});
    }
    if (const SyntaxNode* st = node.child("AttributeStatistics")) {
      map_.element_spans["statistics:" + key] = st->span;
      AttributeStatistics s;
      if (const SyntaxNode* mode = value_leaf(st->child("Mode"))) {
        if (mode->kind == NodeKind::Number) {
          s.mode = to_double(mode);
        } else {
          s.mode = mode->value;
        }
      }
      if (const SyntaxNode* v = value_leaf(st->child("Mean"))) s.mean = to_double(v);
      if (const SyntaxNode* v = value_leaf(st->child("Median"))) s.median = to_double(v);
      if (const SyntaxNode* v = value_leaf(st->child("StdDev"))) s.std_dev = to_double(v);
      if (const SyntaxNode* v = value_leaf(st->child("Completeness"))) {
        s.quality.completeness_pct = to_double(v);
        map_.element_spans["completeness:" + key] = st->child("Completeness")->span;
      }
      if (const SyntaxNode* v = value_leaf(st->child("Sparsity"))) {
        long long n = 0;
        std::from_chars(v->value.data(), v->value.data() + v->value.size(), n);
        s.quality.sparsity_count = n;
      }
      if (const SyntaxNode* dist = st->child("Distribution")) {
        map_.element_spans["distribution:" + key] = dist->span;
        std::map<std::string, double> entries;
        for (const SyntaxNode* e : dist->children_tagged("Entry")) {
          const SyntaxNode* k = e->leaf(NodeKind::String);
          if (!k) continue;
          if (!entries.emplace(k->value, to_double(e->leaf(NodeKind::Percentage))).second) {
            error("E011", "duplicate category '" + k->value + "' in distribution", k->span);
          }
        }
        s.categorical_distribution = std::move(entries);
      }
      if (!s.empty()) a.statistics = std::move(s);
    }
    return a;
  }

  PairCorrelation pair_correlation(const SyntaxNode& node, const std::string& inst) {
    PairCorrelation pc;
    std::vector<const SyntaxNode*> idents;
    bool external = false;
    for (const auto& c : node.children) {
      if (c.kind == NodeKind::Identifier) idents.push_back(&c);
      if (c.kind == NodeKind::Keyword && c.tag == "external source") external = true;
    }
    if (!idents.empty()) {
      pc.left = idents[0]->value;
      pending_.push_back({PendingKind::InstanceAttribute, pc.left, idents[0]->span, inst, {}});
    }
    if (external) {
      pc.right = ExternalSource{text_of(&node, "From").value_or(""),
                                text_of(&node, "Rationale").value_or("")};
    } else if (idents.size() > 1) {
      pc.right = idents[1]->value;
      pending_.push_back({PendingKind::InstanceAttribute, idents[1]->value,
                          idents[1]->span, inst, {}});
    }
    if (const SyntaxNode* v = value_leaf(node.child("Value"))) pc.value = to_double(v);
    return pc;
  }

  // ---- provenance -------------------------------------------------------

  Demographics demographics(const SyntaxNode& node) {
    Demographics d;
    d.countries = list_of(&node, "Countries");
    for (const SyntaxNode* p : node.children_tagged("Pair")) {
      const SyntaxNode& key = p->children.front();
      const SyntaxNode* value = nullptr;
      for (size_t i = 1; i < p->children.size(); ++i)
        if (p->children[i].kind == NodeKind::String || p->children[i].kind == NodeKind::Phrase)
          value = &p->children[i];
      if (!d.other.emplace(key.value, value ? value->value : "").second) {
        error("E011", "duplicate demographics key '" + key.value + "'", key.span);
      }
    }
    return d;
  }

  std::vector<std::string> requirements(const SyntaxNode& node) {
    std::vector<std::string> out;
    if (const SyntaxNode* r = node.child("Requirements"))
      for (const SyntaxNode* q : r->children_tagged("Requirement"))
        if (const SyntaxNode* v = value_leaf(q)) out.push_back(v->value);
    return out;
  }

  std::vector<std::string> issue_refs(const SyntaxNode& node) {
    std::vector<std::string> out;
    for (const SyntaxNode* leaf : reference_leaves(node.child("SocialIssues"))) {
      out.push_back(leaf->value);
      pending_.push_back({PendingKind::SocialIssue, leaf->value, leaf->span, {}, {}});
    }
    return out;
  }

  void provenance(const SyntaxNode& s) {
    Provenance p;
    p.curation_rationale = text_of(&s, "CurationRationale").value_or("");
    if (const SyntaxNode* list = s.child("GatheringProcesses")) {
      for (const SyntaxNode* g : list->children_tagged("GatheringProcess")) {
        const SyntaxNode* n = name_leaf(*g);
        if (!n || !declare_process(SymbolCategory::GatheringProcess, *g, n->value)) continue;
        GatheringProcess gp;
        gp.name = n->value;
        map_.element_spans["process:" + gp.name] = header_span(*g);
        gp.description = text_of(g, "Description");
        gp.process_type = text_of(g, "Type").value_or("");
        for (const SyntaxNode* src : g->children_tagged("Source")) {
          const SyntaxNode* sn = name_leaf(*src);
          if (!sn) continue;
          bool dup = std::any_of(gp.sources.begin(), gp.sources.end(),
                                 [&](const auto& x) { return x.name == sn->value; });
          if (dup) {
            error("E011", "duplicate source name '" + sn->value + "' in process '" +
                              gp.name + "'", sn->span);
            continue;
          }
          gp.sources.push_back({sn->value, text_of(src, "Description"), text_of(src, "Noise")});
        }
        gp.social_issue_refs = issue_refs(*g);
        if (const SyntaxNode* d = g->child("ProcessDemographics")) gp.demographics = demographics(*d);
        gp.requirements = requirements(*g);
        p.gathering.push_back(std::move(gp));
      }
    }
    if (const SyntaxNode* list = s.child("LabelingProcesses")) {
      for (const SyntaxNode* l : list->children_tagged("LabelingProcess")) {
        const SyntaxNode* n = name_leaf(*l);
        if (!n || !declare_process(SymbolCategory::LabelingProcess, *l, n->value)) continue;
        LabelingProcess lp;
        lp.name = n->value;
        map_.element_spans["process:" + lp.name] = header_span(*l);
        lp.description = text_of(l, "Description");
        lp.process_type = text_of(l, "Type").value_or("");
        for (const SyntaxNode* leaf : reference_leaves(l->child("Labels"))) {
          lp.labels.push_back(leaf->value);
          pending_.push_back({PendingKind::Label, leaf->value, leaf->span, lp.name, {}});
        }
        if (const SyntaxNode* t = l->child("LabelingTeam")) {
          Team team;
          team.description = text_of(t, "Description");
          if (auto tt = text_of(t, "Type"))
            team.team_type = parse_team_type(*tt).value_or(TeamType::Internal);
          if (const SyntaxNode* d = t->child("TeamDemographics")) team.demographics = demographics(*d);
          lp.team = std::move(team);
        }
        lp.requirements = requirements(*l);
        lp.social_issue_refs = issue_refs(*l);
        if (const SyntaxNode* d = l->child("ProcessDemographics")) lp.demographics = demographics(*d);
        p.labeling.push_back(std::move(lp));
      }
    }
    if (!p.curation_rationale.empty() || !p.gathering.empty() || !p.labeling.empty())
      model_.provenance = std::move(p);
  }

  // Gathering and labeling processes share one name scope.
  bool declare_process(SymbolCategory cat, const SyntaxNode& node, const std::string& name) {
    SymbolCategory other = cat == SymbolCategory::GatheringProcess
                               ? SymbolCategory::LabelingProcess
                               : SymbolCategory::GatheringProcess;
    if (const Declaration* prev = map_.find(other, name)) {
      const SyntaxNode* n = name_leaf(node);
      error("E011",
            "duplicate process name '" + name + "' (already declared as a " +
                std::string(to_string(other)) + " at line " +
                std::to_string(prev->span.start_line) + ")",
            n ? n->span : node.span);
      return false;
    }
    return declare(cat, name, node, "provenance");
  }

  // ---- social concerns --------------------------------------------------

  void social_concerns(const SyntaxNode& s) {
    SocialConcerns sc;
    sc.rationale = text_of(&s, "Rationale");
    for (const SyntaxNode* i : s.children_tagged("SocialIssue")) {
      const SyntaxNode* n = name_leaf(*i);
      if (!n || !declare(SymbolCategory::SocialIssue, n->value, *i, "social concerns")) continue;
      SocialIssue issue;
      issue.name = n->value;
      map_.element_spans["issue:" + issue.name] = header_span(*i);
      if (const SyntaxNode* t = i->child("IssueType")) {
        if (const SyntaxNode* label = t->leaf(NodeKind::String)) {
          issue.issue_type = {IssueKind::Other, label->value};
        } else if (const SyntaxNode* v = t->leaf(NodeKind::Token)) {
          std::string lower;
          for (char c : v->value) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
          issue.issue_type = {lower == "privacy" ? IssueKind::Privacy : IssueKind::Bias, ""};
        }
      }
      for (const SyntaxNode* leaf : reference_leaves(i->child("RelatedAttributes"))) {
        issue.related_attribute_refs.push_back(leaf->value);
        pending_.push_back({PendingKind::RelatedAttribute, leaf->value, leaf->span, issue.name, {}});
      }
      issue.description = text_of(i, "Description").value_or("");
      sc.issues.push_back(std::move(issue));
    }
    if (sc.rationale || !sc.issues.empty()) model_.social_concerns = std::move(sc);
  }

  // ---- resolution -------------------------------------------------------

  void check_top_level_collisions() {
    // Instances, processes and issues are addressable by bare name, so a
    // name may only denote one of them.
    std::map<std::string, const Declaration*> seen;
    for (const auto& d : map_.declarations) {
      if (d.category == SymbolCategory::Attribute) continue;
      auto [it, inserted] = seen.emplace(d.name, &d);
      if (!inserted) {
        error("E011",
              "name '" + d.name + "' is declared both as a " +
                  std::string(to_string(it->second->category)) + " and as a " +
                  std::string(to_string(d.category)),
              d.name_span);
      }
    }
  }

  enum class PendingKind {
    LabelingProcessRef,
    InstanceAttribute,
    RuleContext,
    SocialIssue,
    Label,
    RelatedAttribute,
  };

  struct Pending {
    PendingKind kind;
    std::string text;
    SourceSpan span;
    std::string owner;   // instance, process or issue name
    std::string detail;  // attribute name for labeling refs
  };

  const Declaration* any_top_level(std::string_view name) const {
    for (const auto& d : map_.declarations)
      if (d.category != SymbolCategory::Attribute && d.name == name) return &d;
    return nullptr;
  }

  void wrong_category(const Pending& p, const Declaration& found, SymbolCategory want) {
    error("E012",
          "'" + p.text + "' is a " + std::string(to_string(found.category)) +
              ", expected a " + std::string(to_string(want)),
          p.span);
  }

  void unresolved(const Pending& p, SymbolCategory want, std::string extra = "") {
    error("E010",
          "unresolved " + std::string(to_string(want)) + " reference '" + p.text + "'" +
              extra,
          p.span);
  }

  const Declaration* resolve_named(const Pending& p, SymbolCategory want) {
    if (const Declaration* d = map_.find(want, p.text)) return d;
    if (const Declaration* other = any_top_level(p.text)) {
      wrong_category(p, *other, want);
    } else {
      unresolved(p, want);
    }
    return nullptr;
  }

  // `instance.attribute`, or a bare attribute name that is unique across
  // instances. Returns the qualified name.
  const Declaration* resolve_attribute(const Pending& p) {
    auto dot = p.text.find('.');
    if (dot != std::string::npos) {
      std::string inst = p.text.substr(0, dot);
      if (!map_.find(SymbolCategory::Instance, inst)) {
        if (const Declaration* other = any_top_level(inst)) {
          wrong_category(p, *other, SymbolCategory::Instance);
        } else {
          unresolved(p, SymbolCategory::Attribute, " (no data instance '" + inst + "')");
        }
        return nullptr;
      }
      if (const Declaration* d = map_.find(SymbolCategory::Attribute, p.text)) return d;
      unresolved(p, SymbolCategory::Attribute);
      return nullptr;
    }
    std::vector<const Declaration*> hits;
    for (const auto& d : map_.declarations) {
      if (d.category != SymbolCategory::Attribute) continue;
      auto pos = d.name.find('.');
      if (d.name.substr(pos + 1) == p.text) hits.push_back(&d);
    }
    if (hits.size() == 1) return hits.front();
    if (hits.size() > 1) {
      unresolved(p, SymbolCategory::Attribute,
                 " (ambiguous: qualify it with the instance name)");
      return nullptr;
    }
    if (const Declaration* other = any_top_level(p.text)) {
      wrong_category(p, *other, SymbolCategory::Attribute);
    } else {
      unresolved(p, SymbolCategory::Attribute);
    }
    return nullptr;
  }

  void record(const Pending& p, std::vector<SymbolCategory> expected,
              const Declaration* target) {
    Reference r{std::move(expected), p.text, std::nullopt, p.span};
    if (target) r.target = *target;
    map_.references.push_back(std::move(r));
  }

  DataInstance* instance_named(const std::string& name) {
    if (!model_.composition) return nullptr;
    for (auto& i : model_.composition->instances)
      if (i.name == name) return &i;
    return nullptr;
  }

  void resolve_all() {
    for (const Pending& p : pending_) {
      switch (p.kind) {
        case PendingKind::LabelingProcessRef: {
          auto* d = resolve_named(p, SymbolCategory::LabelingProcess);
          record(p, {SymbolCategory::LabelingProcess}, d);
          break;
        }
        case PendingKind::SocialIssue: {
          auto* d = resolve_named(p, SymbolCategory::SocialIssue);
          record(p, {SymbolCategory::SocialIssue}, d);
          break;
        }
        case PendingKind::RuleContext: {
          auto* d = resolve_named(p, SymbolCategory::Instance);
          if (d && d->name != p.owner) {
            error("E012",
                  "rule context '" + p.text + "' does not match the enclosing instance '" +
                      p.owner + "'",
                  p.span);
          }
          record(p, {SymbolCategory::Instance}, d);
          break;
        }
        case PendingKind::InstanceAttribute: {
          const Declaration* d = map_.find(SymbolCategory::Attribute, p.owner + "." + p.text);
          if (!d) {
            if (const Declaration* other = any_top_level(p.text)) {
              wrong_category(p, *other, SymbolCategory::Attribute);
            } else {
              unresolved(p, SymbolCategory::Attribute,
                         " in instance '" + p.owner + "'");
            }
          }
          record(p, {SymbolCategory::Attribute}, d);
          break;
        }
        case PendingKind::Label:
        case PendingKind::RelatedAttribute: {
          const Declaration* d = resolve_attribute(p);
          record(p, {SymbolCategory::Attribute}, d);
          if (d && d->name != p.text) normalize(p, d->name);
          break;
        }
      }
    }
    check_label_links();
  }

  // Rewrites a bare attribute reference to its qualified form.
  void normalize(const Pending& p, const std::string& qualified) {
    auto fix = [&](std::vector<std::string>& refs) {
      for (auto& r : refs)
        if (r == p.text) r = qualified;
    };
    if (p.kind == PendingKind::Label && model_.provenance) {
      for (auto& lp : model_.provenance->labeling)
        if (lp.name == p.owner) fix(lp.labels);
    }
    if (p.kind == PendingKind::RelatedAttribute && model_.social_concerns) {
      for (auto& issue : model_.social_concerns->issues)
        if (issue.name == p.owner) fix(issue.related_attribute_refs);
    }
  }

  void check_label_links() {
    // Attribute -> process direction.
    for (const Pending& p : pending_) {
      if (p.kind != PendingKind::LabelingProcessRef) continue;
      if (!map_.find(SymbolCategory::LabelingProcess, p.text)) continue;
      const LabelingProcess* lp = labeling_process(p.text);
      std::string qualified = p.owner + "." + p.detail;
      if (lp && std::find(lp->labels.begin(), lp->labels.end(), qualified) == lp->labels.end()) {
        error("E013",
              "attribute '" + qualified + "' names labeling process '" + p.text +
                  "', but that process does not list it under Labels",
              p.span);
      }
    }
    // Process -> attribute direction.
    for (const Pending& p : pending_) {
      if (p.kind != PendingKind::Label) continue;
      const LabelingProcess* lp = labeling_process(p.owner);
      if (!lp) continue;
      std::string qualified;
      for (const auto& r : map_.references)
        if (r.span == p.span && r.target) qualified = r.target->name;
      if (qualified.empty()) continue;
      auto dot = qualified.find('.');
      DataInstance* inst = instance_named(qualified.substr(0, dot));
      const Attribute* attr = inst ? inst->find_attribute(qualified.substr(dot + 1)) : nullptr;
      if (attr && attr->labeling_process_ref != lp->name) {
        error("E013",
              "process '" + lp->name + "' labels '" + qualified +
                  "', but that attribute does not name it as its labeling process",
              p.span);
      }
    }
  }

  const LabelingProcess* labeling_process(const std::string& name) const {
    if (!model_.provenance) return nullptr;
    for (const auto& lp : model_.provenance->labeling)
      if (lp.name == name) return &lp;
    return nullptr;
  }

  DatasetDescription model_;
  SourceMap map_;
  std::vector<Diagnostic> diags_;
  std::vector<Pending> pending_;
};

}  // namespace

BuildResult build_model(const SyntaxTree& tree) { return Builder().run(tree); }

DocumentAnalysis analyze_document(std::string_view text) {
  DocumentAnalysis a;
  a.parse = parse(text);
  a.diagnostics = a.parse.diagnostics;
  if (a.parse.tree) {
    a.build = build_model(*a.parse.tree);
    a.diagnostics.insert(a.diagnostics.end(), a.build.diagnostics.begin(),
                         a.build.diagnostics.end());
    if (a.build.model) {
      auto v = validate(*a.build.model, &a.build.source_map);
      a.diagnostics.insert(a.diagnostics.end(), v.begin(), v.end());
    }
  } else {
    // Symbols for editor features only; diagnostics stay parse-level.
    a.build.source_map = build_model(a.parse.partial).source_map;
  }
  sort_diagnostics(a.diagnostics);
  return a;
}

}  // namespace datadesc
