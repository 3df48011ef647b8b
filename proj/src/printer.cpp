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

#include "datadesc/printer.hpp"

#include <regex>

namespace datadesc {

std::string quote_string(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + '"';
}

namespace {

bool looks_numeric(std::string_view s) {
  static const std::regex kNumber(R"([+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?)");
  return std::regex_match(s.begin(), s.end(), kNumber);
}

// Whether `s` reads back unchanged as an unquoted phrase.
bool phrase_safe(std::string_view s, bool in_list) {
  if (s.empty()) return false;
  if (s.front() == '"' || s.front() == '[' || s.front() == ' ' || s.back() == ' ')
    return false;
  for (unsigned char c : s) {
    if (c < 0x20 || c == 0x7f) return false;
    if (in_list && c == ',') return false;
  }
  return true;
}

bool token_safe(std::string_view s) {
  if (s.empty() || s.front() == '"') return false;
  for (unsigned char c : s)
    if (c <= 0x20 || c == ',' || c == 0x7f) return false;
  return true;
}

class Printer {
 public:
  std::string run(const DatasetDescription& m) {
    metadata(m.metadata);
    if (m.composition) composition(*m.composition);
    if (m.provenance) provenance(*m.provenance);
    if (m.social_concerns) social_concerns(*m.social_concerns);
    return std::move(out_);
  }

 private:
  void line(int depth, std::string_view text) {
    out_.append(static_cast<size_t>(depth) * 2, ' ');
    out_ += text;
    out_ += '\n';
  }
  void text_field(int depth, std::string_view key, const std::optional<std::string>& v) {
    if (v) line(depth, std::string(key) + " " + quote_string(*v));
  }
  void text_field(int depth, std::string_view key, const std::string& v) {
    if (!v.empty()) line(depth, std::string(key) + " " + quote_string(v));
  }
  void phrase_field(int depth, std::string_view key, const std::string& v) {
    if (v.empty()) return;
    line(depth, std::string(key) + " " + (phrase_safe(v, false) ? v : quote_string(v)));
  }
  static std::string token(const std::string& v) {
    return token_safe(v) ? v : quote_string(v);
  }
  void list_field(int depth, std::string_view key, const std::vector<std::string>& items) {
    if (items.empty()) return;
    std::string s(key);
    for (size_t i = 0; i < items.size(); ++i) {
      s += i == 0 ? " " : ", ";
      s += phrase_safe(items[i], true) ? items[i] : quote_string(items[i]);
    }
    line(depth, s);
  }
  static std::string join(const std::vector<std::string>& items) {
    std::string s;
    for (size_t i = 0; i < items.size(); ++i) s += (i ? ", " : "") + items[i];
    return s;
  }

  void metadata(const Metadata& md) {
    line(0, "Metadata:");
    if (md.unique_id != default_unique_id(md.title, md.version))
      line(1, "Unique Id: " + token(md.unique_id));
    line(1, "Title: " + quote_string(md.title));
    line(1, "Version: " + token(md.version));
    if (md.release_date) line(1, "Release Date: " + format_date(*md.release_date));
    const DescriptionInfo& d = md.description;
    if (!d.purposes.empty() || !d.tasks.empty() || !d.gaps.empty()) {
      line(1, "Description:");
      text_field(2, "Purposes:", d.purposes);
      list_field(2, "Tasks:", d.tasks);
      text_field(2, "Gaps:", d.gaps);
    }
    list_field(1, "Licenses:", md.licenses);
    list_field(1, "Tags:", md.tags);
    list_field(1, "Categories:", md.categories);
    list_field(1, "Distribution Policies:", md.distribution_policies);
    const Applications& a = md.applications;
    if (!a.recommended.empty() || !a.non_recommended.empty() || !a.past_uses.empty()) {
      line(1, "Applications:");
      list_field(2, "Recommended:", a.recommended);
      list_field(2, "Non-recommended:", a.non_recommended);
      list_field(2, "Past Uses:", a.past_uses);
    }
    const Authoring& au = md.authoring;
    if (au.contribution_guidelines || !au.authors.empty() || !au.funders.empty() ||
        !au.maintainers.empty() || au.maintenance_policies) {
      line(1, "Authoring:");
      text_field(2, "Contribution Guidelines:", au.contribution_guidelines);
      contributors(2, "Authors:", au.authors);
      if (!au.funders.empty()) {
        line(2, "Funders:");
        for (const auto& f : au.funders) {
          std::string s = "Name " + quote_string(f.name) + " type " +
                          std::string(to_string(f.funder_type));
          if (f.grantor) s += " Grantor " + quote_string(*f.grantor);
          if (f.grant_id) s += " GrantId: " + token(*f.grant_id);
          line(3, s);
        }
      }
      contributors(2, "Maintainers:", au.maintainers);
      text_field(2, "Maintenance Policies:", au.maintenance_policies);
    }
  }

  void contributors(int depth, std::string_view key, const std::vector<Contributor>& cs) {
    if (cs.empty()) return;
    line(depth, key);
    for (const auto& c : cs) {
      std::string s = "Name " + quote_string(c.name);
      if (c.email) s += " Email " + quote_string(*c.email);
      line(depth + 1, s);
    }
  }

  void composition(const Composition& c) {
    if (!c.rationale && c.instances.empty()) return;
    line(0, "Composition:");
    text_field(1, "Rationale:", c.rationale);
    if (c.instances.empty()) return;
    line(1, "DataInstances:");
    for (const auto& inst : c.instances) instance(inst);
  }

  void instance(const DataInstance& inst) {
    line(2, "Instance: " + inst.name);
    text_field(3, "Description:", inst.description);
    line(3, "Type: " + std::string(to_string(inst.instance_type)));
    line(3, "Size: " + std::to_string(inst.size));
    if (!inst.attributes.empty()) {
      line(3, "Attributes:");
      for (const auto& a : inst.attributes) attribute(a);
    }
    if (inst.statistics && !inst.statistics->empty()) {
      const InstanceStatistics& st = *inst.statistics;
      line(3, "Statistics:");
      for (const auto& pc : st.pair_correlations) {
        line(4, "Pair Correlation:");
        if (const auto* ext = std::get_if<ExternalSource>(&pc.right)) {
          line(5, "Between " + pc.left + " and external source");
          line(6, "From: " + quote_string(ext->source));
          text_field(6, "Rationale:", ext->rationale);
          if (pc.value) line(6, "Value: " + format_number(*pc.value));
        } else {
          line(5, "Between " + pc.left + " and " + std::get<std::string>(pc.right));
          if (pc.value) line(6, "Value: " + format_number(*pc.value));
        }
      }
      if (!st.quality_metrics.empty()) {
        line(4, "Quality Metrics:");
        for (const auto& [name, value] : st.quality_metrics) {
          bool known = name == "ClassBalance" || name == "NoisyLabels" ||
                       name == "Outliers" || name == "Completeness";
          std::string v = format_number(value);
          if (name == "Completeness") v += "%";
          line(5, (known ? name : quote_string(name)) + ": " + v);
        }
      }
    }
    if (!inst.consistency_rules.empty()) {
      line(3, "Consistency Rules:");
      for (size_t i = 0; i < inst.consistency_rules.size(); ++i) {
        const ConsistencyRule& r = inst.consistency_rules[i];
        std::string head = "Inv " + r.context;
        if (r.name != inst.name + "_inv" + std::to_string(i + 1)) head += " as " + r.name;
        line(4, head + ": (" + print_rule_expression(r.expr) + ")");
      }
    }
  }

  void attribute(const Attribute& a) {
    line(4, "Attribute: " + a.name);
    text_field(5, "Description:", a.description);
    if (a.labeling_process_ref) line(5, "Labelling process: " + *a.labeling_process_ref);
    line(5, "OfType: " + std::string(to_string(a.attr_type)));
    if (!a.statistics || a.statistics->empty()) return;
    const AttributeStatistics& s = *a.statistics;
    line(5, "Statistics:");
    if (s.mode) {
      if (const auto* d = std::get_if<double>(&*s.mode)) {
        line(6, "Mode: " + format_number(*d));
      } else {
        const auto& str = std::get<std::string>(*s.mode);
        bool bare = phrase_safe(str, false) && !looks_numeric(str);
        line(6, "Mode: " + (bare ? str : quote_string(str)));
      }
    }
    if (s.mean) line(6, "Mean: " + format_number(*s.mean));
    if (s.median) line(6, "Median: " + format_number(*s.median));
    if (s.std_dev) line(6, "Standard Deviation: " + format_number(*s.std_dev));
    if (s.categorical_distribution) {
      line(6, "Categorical-Distribution:");
      for (const auto& [cat, pct] : *s.categorical_distribution)
        line(7, quote_string(cat) + ": " + format_number(pct));
    }
    if (s.quality.completeness_pct)
      line(6, "Completeness: " + format_number(*s.quality.completeness_pct) + "%");
    if (s.quality.sparsity_count)
      line(6, "Sparsity: " + std::to_string(*s.quality.sparsity_count));
  }

  void demographics(int depth, std::string_view key, const std::optional<Demographics>& d) {
    if (!d) return;
    line(depth, key);
    list_field(depth + 1, "Countries:", d->countries);
    for (const auto& [k, v] : d->other)
      line(depth + 1, quote_string(k) + ": " + quote_string(v));
  }

  void requirements(int depth, std::string_view key, const std::vector<std::string>& rs) {
    if (rs.empty()) return;
    line(depth, key);
    for (const auto& r : rs) line(depth + 1, "Requirement: " + quote_string(r));
  }

  void provenance(const Provenance& p) {
    if (p.curation_rationale.empty() && p.gathering.empty() && p.labeling.empty()) return;
    line(0, "Data Provenance:");
    text_field(1, "Curation Rationale:", p.curation_rationale);
    if (!p.gathering.empty()) {
      line(1, "Gathering Processes:");
      for (const auto& g : p.gathering) {
        line(2, "Process: " + g.name);
        text_field(3, "Description:", g.description);
        phrase_field(3, "Type:", g.process_type);
        for (const auto& s : g.sources) {
          line(3, "Source: " + s.name);
          text_field(4, "Description:", s.description);
          text_field(4, "Noise:", s.noise);
        }
        if (!g.social_issue_refs.empty())
          line(3, "Social Issues: " + join(g.social_issue_refs));
        demographics(3, "Process Demographics:", g.demographics);
        requirements(3, "Gathering Requirements", g.requirements);
      }
    }
    if (!p.labeling.empty()) {
      line(1, "Labeling Processes:");
      for (const auto& l : p.labeling) {
        line(2, "Process: " + l.name);
        text_field(3, "Description:", l.description);
        phrase_field(3, "Type:", l.process_type);
        if (!l.labels.empty()) line(3, "Labels: " + join(l.labels));
        if (l.team) {
          line(3, "Labeling Team:");
          text_field(4, "Description:", l.team->description);
          line(4, "Type: " + std::string(to_string(l.team->team_type)));
          demographics(4, "Team Demographics:", l.team->demographics);
        }
        requirements(3, "Labeling Requirements", l.requirements);
        if (!l.social_issue_refs.empty())
          line(3, "Social Issues: " + join(l.social_issue_refs));
        demographics(3, "Process Demographics:", l.demographics);
      }
    }
  }

  void social_concerns(const SocialConcerns& sc) {
    if (!sc.rationale && sc.issues.empty()) return;
    line(0, "Social Concerns:");
    text_field(1, "Rationale:", sc.rationale);
    for (const auto& issue : sc.issues) {
      line(1, "Social Issue: " + issue.name);
      if (issue.issue_type.kind == IssueKind::Other) {
        line(2, "IssueType: Other(" + quote_string(issue.issue_type.label) + ")");
      } else {
        line(2, "IssueType: " + issue_type_text(issue.issue_type));
      }
      if (!issue.related_attribute_refs.empty())
        line(2, "Related Attributes: " + join(issue.related_attribute_refs));
      text_field(2, "Description:", issue.description);
    }
  }

  std::string out_;
};

}  // namespace

std::string pretty_print(const DatasetDescription& model) { return Printer().run(model); }

}  // namespace datadesc
