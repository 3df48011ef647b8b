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

#include "datadesc/docgen.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace datadesc {

namespace {

// Rendering-neutral document tree shared by both output formats.
struct Block {
  enum class Kind { Heading, Field, List, Table };
  Kind kind = Kind::Field;
  int level = 0;
  std::string label;
  std::string text;
  bool ident = false;  // text is an identifier
  std::vector<std::string> items;
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;
};

struct Part {
  std::string heading;
  int level = 2;
  std::vector<Block> blocks;
  std::vector<Part> children;

  bool empty() const {
    if (!blocks.empty()) return false;
    for (const auto& c : children)
      if (!c.empty()) return false;
    return true;
  }
};

class Builder {
 public:
  explicit Builder(Part& part) : part_(part) {}

  void field(const std::string& label, const std::string& text) {
    Block b;
    b.kind = Block::Kind::Field;
    b.label = label;
    b.text = text;
    part_.blocks.push_back(std::move(b));
  }
  void field(const std::string& label, const std::optional<std::string>& text) {
    if (text && !text->empty()) field(label, *text);
  }
  void text_field(const std::string& label, const std::string& text) {
    if (!text.empty()) field(label, text);
  }
  void list(const std::string& label, const std::vector<std::string>& items) {
    if (items.empty()) return;
    Block b;
    b.kind = Block::Kind::List;
    b.label = label;
    b.items = items;
    part_.blocks.push_back(std::move(b));
  }
  void table(const std::string& label, std::vector<std::string> headers,
             std::vector<std::vector<std::string>> rows) {
    if (rows.empty()) return;
    Block b;
    b.kind = Block::Kind::Table;
    b.label = label;
    b.headers = std::move(headers);
    b.rows = std::move(rows);
    part_.blocks.push_back(std::move(b));
  }
  Part& child(const std::string& heading) {
    part_.children.push_back(Part{heading, part_.level + 1, {}, {}});
    return part_.children.back();
  }

 private:
  Part& part_;
};

std::string opt(const std::optional<std::string>& s) { return s.value_or(""); }

std::string opt_number(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

void demographics(Builder& b, const std::string& prefix, const std::optional<Demographics>& d) {
  if (!d) return;
  b.list(prefix + "countries", d->countries);
  std::vector<std::string> other;
  for (const auto& [k, v] : d->other) other.push_back(k + ": " + v);
  b.list(prefix + "demographics", other);
}

Part metadata_part(const Metadata& md) {
  Part p{"Metadata", 2, {}, {}};
  Builder b(p);
  b.field("Unique id", md.unique_id);
  b.field("Version", md.version);
  if (md.release_date) b.field("Release date", format_date(*md.release_date));
  b.list("Tags", md.tags);
  b.list("Categories", md.categories);
  b.list("Licenses", md.licenses);
  b.list("Distribution policies", md.distribution_policies);

  Part& desc = b.child("Description");
  Builder d(desc);
  d.text_field("Purposes", md.description.purposes);
  d.list("Tasks", md.description.tasks);
  d.text_field("Gaps", md.description.gaps);

  Part& apps = b.child("Applications");
  Builder a(apps);
  a.list("Recommended", md.applications.recommended);
  a.list("Non-recommended", md.applications.non_recommended);
  a.list("Past uses", md.applications.past_uses);

  Part& auth = b.child("Authoring");
  Builder w(auth);
  auto people = [](const std::vector<Contributor>& cs) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : cs) rows.push_back({c.name, opt(c.email)});
    return rows;
  };
  w.table("Authors", {"Name", "Email"}, people(md.authoring.authors));
  w.table("Maintainers", {"Name", "Email"}, people(md.authoring.maintainers));
  std::vector<std::vector<std::string>> funders;
  for (const auto& f : md.authoring.funders)
    funders.push_back({f.name, std::string(to_string(f.funder_type)), opt(f.grantor), opt(f.grant_id)});
  w.table("Funders", {"Name", "Type", "Grantor", "Grant id"}, funders);
  w.field("Contribution guidelines", md.authoring.contribution_guidelines);
  w.field("Maintenance policies", md.authoring.maintenance_policies);
  return p;
}

void instance_part(Builder& parent, const DataInstance& inst) {
  Part& p = parent.child("Instance " + inst.name);
  Builder b(p);
  b.field("Description", inst.description);
  b.field("Type", std::string(to_string(inst.instance_type)));
  b.field("Size", std::to_string(inst.size));

  std::vector<std::vector<std::string>> attrs;
  std::vector<std::vector<std::string>> stats;
  std::vector<std::vector<std::string>> dists;
  for (const auto& a : inst.attributes) {
    attrs.push_back({a.name, std::string(to_string(a.attr_type)), opt(a.description),
                     opt(a.labeling_process_ref)});
    if (!a.statistics) continue;
    const auto& s = *a.statistics;
    if (s.mode || s.mean || s.median || s.std_dev || s.quality.completeness_pct ||
        s.quality.sparsity_count) {
      stats.push_back({a.name, s.mode ? stat_value_text(*s.mode) : "", opt_number(s.mean),
                       opt_number(s.median), opt_number(s.std_dev),
                       s.quality.completeness_pct ? format_number(*s.quality.completeness_pct) + "%" : "",
                       s.quality.sparsity_count ? std::to_string(*s.quality.sparsity_count) : ""});
    }
    if (s.categorical_distribution)
      for (const auto& [cat, pct] : *s.categorical_distribution)
        dists.push_back({a.name, cat, format_number(pct) + "%"});
  }
  b.table("Attributes", {"Attribute", "Type", "Description", "Labeling process"}, attrs);
  b.table("Attribute statistics",
          {"Attribute", "Mode", "Mean", "Median", "Std. dev.", "Completeness", "Sparsity"}, stats);
  b.table("Categorical distributions", {"Attribute", "Category", "Share"}, dists);

  if (inst.statistics) {
    std::vector<std::vector<std::string>> corr;
    for (const auto& c : inst.statistics->pair_correlations) {
      std::string right;
      std::string rationale;
      if (const auto* name = std::get_if<std::string>(&c.right)) {
        right = *name;
      } else {
        const auto& ext = std::get<ExternalSource>(c.right);
        right = ext.source + " (external)";
        rationale = ext.rationale;
      }
      corr.push_back({c.left, right, opt_number(c.value), rationale});
    }
    b.table("Pair correlations", {"Attribute", "Correlated with", "Value", "Rationale"}, corr);
    std::vector<std::vector<std::string>> metrics;
    for (const auto& [name, v] : inst.statistics->quality_metrics)
      metrics.push_back({name, format_number(v) + (name == "Completeness" ? "%" : "")});
    b.table("Quality metrics", {"Metric", "Value"}, metrics);
  }
  std::vector<std::vector<std::string>> rules;
  for (const auto& r : inst.consistency_rules)
    rules.push_back({r.name, print_rule_expression(r.expr)});
  b.table("Consistency rules", {"Rule", "Expression"}, rules);
}

Part composition_part(const Composition& c) {
  Part p{"Composition", 2, {}, {}};
  Builder b(p);
  b.field("Rationale", c.rationale);
  for (const auto& inst : c.instances) instance_part(b, inst);
  return p;
}

Part provenance_part(const Provenance& pv) {
  Part p{"Provenance", 2, {}, {}};
  Builder b(p);
  b.text_field("Curation rationale", pv.curation_rationale);
  for (const auto& g : pv.gathering) {
    Builder s(b.child("Gathering process " + g.name));
    s.field("Description", g.description);
    s.text_field("Type", g.process_type);
    if (g == GatheringProcess{g.name}) s.field("Name", g.name);
    std::vector<std::vector<std::string>> sources;
    for (const auto& src : g.sources) sources.push_back({src.name, opt(src.description), opt(src.noise)});
    s.table("Sources", {"Source", "Description", "Noise"}, sources);
    demographics(s, "Gathering ", g.demographics);
    s.list("Requirements", g.requirements);
    s.list("Social issues", g.social_issue_refs);
  }
  for (const auto& l : pv.labeling) {
    Builder s(b.child("Labeling process " + l.name));
    s.field("Description", l.description);
    s.text_field("Type", l.process_type);
    if (l == LabelingProcess{l.name}) s.field("Name", l.name);
    s.list("Labels", l.labels);
    if (l.team) {
      s.field("Team type", std::string(to_string(l.team->team_type)));
      s.field("Team description", l.team->description);
      demographics(s, "Team ", l.team->demographics);
    }
    demographics(s, "Labeling ", l.demographics);
    s.list("Requirements", l.requirements);
    s.list("Social issues", l.social_issue_refs);
  }
  return p;
}

Part social_part(const SocialConcerns& sc) {
  Part p{"Social Concerns", 2, {}, {}};
  Builder b(p);
  b.field("Rationale", sc.rationale);
  for (const auto& issue : sc.issues) {
    Builder s(b.child("Issue " + issue.name));
    s.field("Type", issue_type_text(issue.issue_type));
    s.list("Related attributes", issue.related_attribute_refs);
    s.text_field("Description", issue.description);
  }
  return p;
}

std::vector<Part> build_document(const DatasetDescription& m) {
  std::vector<Part> parts;
  parts.push_back(metadata_part(m.metadata));
  if (m.composition) parts.push_back(composition_part(*m.composition));
  if (m.provenance) parts.push_back(provenance_part(*m.provenance));
  if (m.social_concerns) parts.push_back(social_part(*m.social_concerns));
  return parts;
}

// Markdown

std::string md_text(std::string_view s) {
  std::string e = markdown_escape(s);
  std::string out;
  for (char c : e) {
    if (c == '\n') out += "<br>";
    else if (c == '\r' || c == '\t') out += ' ';
    else out += c;
  }
  return out;
}

std::string md_cell(std::string_view s) { return md_text(s); }

void render_markdown(std::ostringstream& out, const Part& part) {
  if (part.empty()) return;
  out << std::string(static_cast<size_t>(part.level), '#') << ' ' << md_text(part.heading) << "\n\n";
  for (const auto& b : part.blocks) {
    switch (b.kind) {
      case Block::Kind::Field:
        out << "**" << md_text(b.label) << ":** " << md_text(b.text) << "\n\n";
        break;
      case Block::Kind::List:
        out << "**" << md_text(b.label) << ":**\n\n";
        for (const auto& item : b.items) out << "- " << md_text(item) << "\n";
        out << "\n";
        break;
      case Block::Kind::Table: {
        out << "**" << md_text(b.label) << ":**\n\n|";
        for (const auto& h : b.headers) out << ' ' << md_cell(h) << " |";
        out << "\n|";
        for (size_t i = 0; i < b.headers.size(); ++i) out << " --- |";
        out << "\n";
        for (const auto& row : b.rows) {
          out << "|";
          for (const auto& cell : row) out << ' ' << md_cell(cell) << " |";
          out << "\n";
        }
        out << "\n";
        break;
      }
      case Block::Kind::Heading:
        break;
    }
  }
  for (const auto& c : part.children) render_markdown(out, c);
}

// HTML

void render_html(std::ostringstream& out, const Part& part) {
  if (part.empty()) return;
  out << "<section>\n<h" << part.level << '>' << html_escape(part.heading) << "</h" << part.level << ">\n";
  for (const auto& b : part.blocks) {
    switch (b.kind) {
      case Block::Kind::Field:
        out << "<p><strong>" << html_escape(b.label) << ":</strong> " << html_escape(b.text) << "</p>\n";
        break;
      case Block::Kind::List:
        out << "<p><strong>" << html_escape(b.label) << ":</strong></p>\n<ul>\n";
        for (const auto& item : b.items) out << "<li>" << html_escape(item) << "</li>\n";
        out << "</ul>\n";
        break;
      case Block::Kind::Table:
        out << "<table>\n<caption>" << html_escape(b.label) << "</caption>\n<thead><tr>";
        for (const auto& h : b.headers) out << "<th>" << html_escape(h) << "</th>";
        out << "</tr></thead>\n<tbody>\n";
        for (const auto& row : b.rows) {
          out << "<tr>";
          for (const auto& cell : row) out << "<td>" << html_escape(cell) << "</td>";
          out << "</tr>\n";
        }
        out << "</tbody>\n</table>\n";
        break;
      case Block::Kind::Heading:
        break;
    }
  }
  for (const auto& c : part.children) render_html(out, c);
  out << "</section>\n";
}

constexpr const char* kStyle =
    "body{font-family:system-ui,sans-serif;max-width:60rem;margin:2rem auto;padding:0 1rem;"
    "line-height:1.5;color:#1b1b1b}"
    "table{border-collapse:collapse;margin:0.5rem 0 1rem}"
    "caption{text-align:left;font-weight:bold;padding:0.25rem 0}"
    "th,td{border:1px solid #bbb;padding:0.25rem 0.5rem;text-align:left;vertical-align:top}"
    "th{background:#f0f0f0}"
    "section section{margin-left:1rem}"
    "p,li{white-space:pre-wrap}";

}  // namespace

std::string markdown_escape(std::string_view s) {
  std::string out;
  auto word = [&](size_t i) {
    return i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) ||
                            static_cast<unsigned char>(s[i]) >= 0x80);
  };
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    bool line_start = i == 0 || s[i - 1] == '\n';
    switch (c) {
      case '\\': case '`': case '*': case '[': case ']': case '<': case '>':
      case '|': case '&': case '#': case '!': case '~':
        out += '\\';
        break;
      case '_':
        if (!(i > 0 && word(i - 1) && word(i + 1))) out += '\\';
        break;
      case '-': case '+': case '=':
        if (line_start) out += '\\';
        break;
      case '.': case ')': {
        size_t j = i;
        while (j > 0 && std::isdigit(static_cast<unsigned char>(s[j - 1]))) --j;
        if (j < i && (j == 0 || s[j - 1] == '\n')) out += '\\';
        break;
      }
      default:
        break;
    }
    out += c;
  }
  return out;
}

std::string html_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string to_markdown(const DatasetDescription& model) {
  std::ostringstream out;
  out << "# " << md_text(model.metadata.title) << "\n\n";
  for (const auto& p : build_document(model)) render_markdown(out, p);
  std::string s = out.str();
  while (s.size() > 1 && s[s.size() - 1] == '\n' && s[s.size() - 2] == '\n') s.pop_back();
  return s;
}

std::string to_html(const DatasetDescription& model) {
  std::ostringstream out;
  std::string title = html_escape(model.metadata.title);
  out << "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n"
      << "<meta name=\"viewport\" content=\"width=device-width, initial-scale=1\">\n"
      << "<title>" << title << "</title>\n<style>" << kStyle << "</style>\n</head>\n<body>\n<main>\n"
      << "<h1>" << title << "</h1>\n";
  for (const auto& p : build_document(model)) render_html(out, p);
  out << "</main>\n</body>\n</html>\n";
  return out.str();
}

}  // namespace datadesc
