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

#ifndef DATADESC_TESTS_SUPPORT_GENERATORS_HPP_
#define DATADESC_TESTS_SUPPORT_GENERATORS_HPP_

// Random valid models, rule expressions and tables for property tests.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "datadesc/model.hpp"
#include "datadesc/rule_expr.hpp"

namespace datadesc::testgen {

class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  std::mt19937& rng() { return rng_; }

  int range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<size_t>(range(0, static_cast<int>(v.size()) - 1))];
  }

  // Free text with quotes, escapes, commas, colons and non-ASCII.
  std::string text(int max_len = 24) {
    static const std::vector<std::string> pieces = {
        "a", "b", "Z", "x", " ", " ", ",", ":", "\"", "\\", "-", "%", "(",
        ")", "[", "\xC3\xA9", "\xE2\x82\xAC", "7", "0", ".", "\t", "\n", "/", "'"};
    std::string s;
    int n = range(1, max_len);
    for (int i = 0; i < n; ++i) s += pick(pieces);
    return s;
  }

  // Text that may end up bare or quoted when printed.
  std::string item() {
    if (chance(0.5)) return text(12);
    static const std::vector<std::string> words = {
        "Images", "Skin Image", "CC BY-NC 4.0", "Text", "Image-classification",
        "40-50", "Australia", "United States", "a-b_c", "x y z", "42"};
    return pick(words);
  }

  std::vector<std::string> items(int max_n) {
    std::vector<std::string> v;
    int n = range(0, max_n);
    for (int i = 0; i < n; ++i) v.push_back(item());
    return v;
  }

  std::optional<std::string> opt_text() {
    if (chance(0.4)) return std::nullopt;
    return chance(0.1) ? std::string() : text();
  }

  std::string ident(const std::string& prefix) {
    static const char alnum[] = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_";
    std::string s = prefix;
    int n = range(1, 6);
    for (int i = 0; i < n; ++i) s += alnum[range(0, static_cast<int>(sizeof alnum) - 2)];
    return s;
  }

  std::string token() {
    static const char chars[] = "abcdefghijklmnopqrstuvwxyz0123456789.-_v";
    std::string s;
    int n = range(1, 8);
    for (int i = 0; i < n; ++i) s += chars[range(0, static_cast<int>(sizeof chars) - 2)];
    return s;
  }

  double real(double lo, double hi) {
    double v = std::uniform_real_distribution<double>(lo, hi)(rng_);
    if (chance(0.5)) v = std::round(v * 100) / 100;
    if (v == 0) v = 0;  // no negative zero
    return v;
  }

  RuleExpr expr(const std::vector<std::string>& attrs, int depth) {
    if (depth <= 0 || chance(0.25)) return leaf(attrs);
    switch (range(0, 4)) {
      case 0: {
        static const std::vector<RuleOp> ops = {RuleOp::Eq, RuleOp::Neq, RuleOp::Lt,
                                                RuleOp::Le, RuleOp::Gt, RuleOp::Ge};
        return RuleExpr::binary(pick(ops), expr(attrs, depth - 1), expr(attrs, depth - 1));
      }
      case 1: {
        static const std::vector<RuleOp> ops = {RuleOp::Add, RuleOp::Sub, RuleOp::Mul,
                                                RuleOp::Div};
        return RuleExpr::binary(pick(ops), expr(attrs, depth - 1), expr(attrs, depth - 1));
      }
      case 2:
      case 3: {
        static const std::vector<RuleOp> ops = {RuleOp::And, RuleOp::Or, RuleOp::Implies};
        return RuleExpr::binary(pick(ops), expr(attrs, depth - 1), expr(attrs, depth - 1));
      }
      default:
        return RuleExpr::negate(expr(attrs, depth - 1));
    }
  }

  RuleExpr leaf(const std::vector<std::string>& attrs) {
    int k = range(0, 9);
    if (k < 5 && !attrs.empty()) return RuleExpr::attribute(pick(attrs));
    if (k < 7) return RuleExpr::number_lit(static_cast<double>(range(-5, 20)) / (chance(0.3) ? 2 : 1));
    if (k < 8) return RuleExpr::string_lit(pick(std::vector<std::string>{"a", "b", "x\"y", ""}));
    return RuleExpr::bool_lit(chance(0.5));
  }

 private:
  std::mt19937 rng_;
};

inline DatasetDescription random_model(Gen& g) {
  DatasetDescription m;
  Metadata& md = m.metadata;
  md.title = g.text();
  md.version = g.chance(0.8) ? g.token() : g.text(8);
  md.unique_id = g.chance(0.7) ? default_unique_id(md.title, md.version) : g.token();
  if (g.chance(0.7)) md.release_date = Date{g.range(1, 28), g.range(1, 12), g.range(1990, 2030)};
  if (g.chance(0.7)) md.description.purposes = g.text();
  md.description.tasks = g.items(3);
  if (g.chance(0.5)) md.description.gaps = g.text();
  md.licenses = g.items(2);
  for (const auto& t : g.items(4))
    if (std::find(md.tags.begin(), md.tags.end(), t) == md.tags.end()) md.tags.push_back(t);
  md.categories = g.items(2);
  md.distribution_policies = g.items(2);
  md.applications.recommended = g.items(2);
  md.applications.non_recommended = g.items(2);
  md.applications.past_uses = g.items(2);
  if (g.chance(0.5)) md.authoring.contribution_guidelines = g.text();
  for (int i = g.range(0, 3); i > 0; --i) {
    Contributor c{g.text(10), std::nullopt, ContributorRole::Author};
    if (g.chance(0.5)) c.email = g.text(10);
    md.authoring.authors.push_back(c);
  }
  for (int i = g.range(0, 2); i > 0; --i) {
    Contributor c{g.text(10), std::nullopt, ContributorRole::Maintainer};
    if (g.chance(0.5)) c.email = g.text(10);
    md.authoring.maintainers.push_back(c);
  }
  for (int i = g.range(0, 2); i > 0; --i) {
    Funder f{g.text(10), g.pick(std::vector<FunderType>{FunderType::Public, FunderType::Private,
                                                         FunderType::Mixed}),
             std::nullopt, std::nullopt};
    if (g.chance(0.6)) {
      f.grantor = g.text(8);
      if (g.chance(0.6)) f.grant_id = g.chance(0.7) ? g.token() : g.text(6);
    }
    md.authoring.funders.push_back(f);
  }
  if (g.chance(0.3)) md.authoring.maintenance_policies = g.text();

  // Social issues first so processes can point at them.
  std::vector<std::string> issue_names;
  if (g.chance(0.6)) {
    SocialConcerns sc;
    if (g.chance(0.5)) sc.rationale = g.text();
    for (int i = g.range(sc.rationale ? 0 : 1, 3); i > 0; --i) {
      std::string name = g.ident("issue_");
      if (std::find(issue_names.begin(), issue_names.end(), name) != issue_names.end()) continue;
      issue_names.push_back(name);
      SocialIssue issue;
      issue.name = name;
      int k = g.range(0, 2);
      issue.issue_type = k == 0   ? IssueType{IssueKind::Bias, ""}
                         : k == 1 ? IssueType{IssueKind::Privacy, ""}
                                  : IssueType{IssueKind::Other, g.text(8)};
      if (g.chance(0.7)) issue.description = g.text();
      sc.issues.push_back(issue);
    }
    m.social_concerns = sc;
  }

  std::vector<std::string> qualified_attrs;
  std::vector<std::pair<size_t, size_t>> attr_index;
  if (g.chance(0.8)) {
    Composition c;
    if (g.chance(0.6)) c.rationale = g.text();
    std::vector<std::string> inst_names;
    for (int i = g.range(c.rationale ? 0 : 1, 3); i > 0; --i) {
      std::string name = g.ident("inst_");
      if (std::find(inst_names.begin(), inst_names.end(), name) != inst_names.end()) continue;
      inst_names.push_back(name);
      DataInstance inst;
      inst.name = name;
      inst.description = g.opt_text();
      inst.instance_type = g.pick(std::vector<InstanceType>{
          InstanceType::RecordData, InstanceType::TimeSeries, InstanceType::LinkedData});
      inst.size = g.chance(0.2) ? 0 : g.range(1, 2000000000) * (g.chance(0.1) ? 1000LL : 1LL);
      std::vector<std::string> attr_names;
      for (int a = g.range(0, 4); a > 0; --a) {
        std::string an = g.ident("attr_");
        if (std::find(attr_names.begin(), attr_names.end(), an) != attr_names.end()) continue;
        attr_names.push_back(an);
        Attribute attr;
        attr.name = an;
        attr.description = g.opt_text();
        attr.attr_type = g.chance(0.5) ? AttributeType::Numerical : AttributeType::Categorical;
        if (g.chance(0.7)) {
          AttributeStatistics s;
          if (g.chance(0.5)) {
            if (g.chance(0.5)) s.mode = g.real(-100, 100);
            else s.mode = g.item();
          }
          if (attr.attr_type == AttributeType::Numerical) {
            if (g.chance(0.6)) s.mean = g.real(-1e6, 1e6);
            if (g.chance(0.5)) s.median = g.real(-1e6, 1e6);
            if (g.chance(0.5)) s.std_dev = g.real(0, 1e4);
          } else if (g.chance(0.6)) {
            std::map<std::string, double> dist;
            double left = 100;
            for (int k = g.range(0, 4); k > 0; --k) {
              double v = std::min(left, g.real(0, 60));
              left -= v;
              dist[g.text(6)] = v;
            }
            s.categorical_distribution = dist;
          }
          if (g.chance(0.5)) s.quality.completeness_pct = g.real(0, 100);
          if (g.chance(0.3)) s.quality.sparsity_count = g.range(0, 100000);
          if (!s.empty()) attr.statistics = s;
        }
        inst.attributes.push_back(attr);
      }
      if (g.chance(0.5)) {
        InstanceStatistics st;
        for (int p = g.range(0, 2); p > 0 && !attr_names.empty(); --p) {
          PairCorrelation pc;
          pc.left = g.pick(attr_names);
          if (g.chance(0.5)) pc.right = g.pick(attr_names);
          else pc.right = ExternalSource{g.text(), g.chance(0.5) ? g.text() : ""};
          if (g.chance(0.6)) pc.value = g.real(-1, 1);
          st.pair_correlations.push_back(pc);
        }
        static const std::vector<std::string> metrics = {"ClassBalance", "NoisyLabels",
                                                         "Outliers", "Completeness"};
        for (int q = g.range(0, 3); q > 0; --q)
          st.quality_metrics[g.chance(0.7) ? g.pick(metrics) : g.text(6)] = g.real(0, 100);
        if (!st.empty()) inst.statistics = st;
      }
      for (int r = g.range(0, 3); r > 0; --r) {
        ConsistencyRule rule;
        rule.context = name;
        rule.name = g.chance(0.5) ? name + "_inv" + std::to_string(inst.consistency_rules.size() + 1)
                                  : g.ident("rule_");
        rule.expr = g.expr(attr_names, g.range(0, 4));
        inst.consistency_rules.push_back(rule);
      }
      c.instances.push_back(inst);
    }
    for (size_t i = 0; i < c.instances.size(); ++i)
      for (size_t a = 0; a < c.instances[i].attributes.size(); ++a) {
        qualified_attrs.push_back(c.instances[i].name + "." + c.instances[i].attributes[a].name);
        attr_index.emplace_back(i, a);
      }
    m.composition = c;
  }

  if (m.social_concerns)
    for (auto& issue : m.social_concerns->issues)
      for (int k = g.range(0, 2); k > 0 && !qualified_attrs.empty(); --k) {
        const std::string& q = g.pick(qualified_attrs);
        if (std::find(issue.related_attribute_refs.begin(), issue.related_attribute_refs.end(),
                      q) == issue.related_attribute_refs.end())
          issue.related_attribute_refs.push_back(q);
      }

  auto demographics = [&]() -> std::optional<Demographics> {
    if (!g.chance(0.5)) return std::nullopt;
    Demographics d;
    for (const auto& c : g.items(2)) d.countries.push_back(c);
    for (int k = g.range(0, 2); k > 0; --k) d.other[g.text(6)] = g.text(8);
    return d;
  };
  auto issue_refs = [&]() {
    std::vector<std::string> refs;
    for (int k = g.range(0, 2); k > 0 && !issue_names.empty(); --k) {
      const std::string& n = g.pick(issue_names);
      if (std::find(refs.begin(), refs.end(), n) == refs.end()) refs.push_back(n);
    }
    return refs;
  };
  auto requirements = [&]() {
    std::vector<std::string> rs;
    for (int k = g.range(0, 2); k > 0; --k) rs.push_back(g.text());
    return rs;
  };

  if (g.chance(0.7)) {
    Provenance p;
    if (g.chance(0.7)) p.curation_rationale = g.text();
    std::vector<std::string> proc_names;
    auto fresh = [&]() {
      std::string n;
      do n = g.ident("proc_");
      while (std::find(proc_names.begin(), proc_names.end(), n) != proc_names.end());
      proc_names.push_back(n);
      return n;
    };
    for (int i = g.range(p.curation_rationale.empty() ? 1 : 0, 2); i > 0; --i) {
      GatheringProcess gp;
      gp.name = fresh();
      gp.description = g.opt_text();
      if (g.chance(0.7)) gp.process_type = g.item();
      std::vector<std::string> src_names;
      for (int s = g.range(0, 2); s > 0; --s) {
        std::string sn = g.ident("src_");
        if (std::find(src_names.begin(), src_names.end(), sn) != src_names.end()) continue;
        src_names.push_back(sn);
        gp.sources.push_back({sn, g.opt_text(), g.opt_text()});
      }
      gp.social_issue_refs = issue_refs();
      gp.demographics = demographics();
      gp.requirements = requirements();
      p.gathering.push_back(gp);
    }
    for (int i = g.range(0, 2); i > 0; --i) {
      LabelingProcess lp;
      lp.name = fresh();
      lp.description = g.opt_text();
      if (g.chance(0.7)) lp.process_type = g.item();
      if (g.chance(0.6)) {
        Team t;
        t.description = g.opt_text();
        t.team_type = g.pick(std::vector<TeamType>{TeamType::Crowdsourcing, TeamType::External,
                                                   TeamType::Internal});
        t.demographics = demographics();
        lp.team = t;
      }
      lp.requirements = requirements();
      lp.social_issue_refs = issue_refs();
      lp.demographics = demographics();
      p.labeling.push_back(lp);
    }
    // Label links in both directions.
    if (!p.labeling.empty() && m.composition) {
      for (size_t k = 0; k < attr_index.size(); ++k) {
        if (!g.chance(0.3)) continue;
        auto [i, a] = attr_index[k];
        LabelingProcess& lp = p.labeling[static_cast<size_t>(g.range(0, static_cast<int>(p.labeling.size()) - 1))];
        m.composition->instances[i].attributes[a].labeling_process_ref = lp.name;
        lp.labels.push_back(qualified_attrs[k]);
      }
    }
    m.provenance = p;
  }
  return m;
}

}  // namespace datadesc::testgen

#endif  // DATADESC_TESTS_SUPPORT_GENERATORS_HPP_
