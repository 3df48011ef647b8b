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

#include <map>
#include <set>
#include <sstream>

#include "datadesc/analysis.hpp"
#include "datadesc/model_json.hpp"

namespace datadesc {

using nlohmann::json;

std::string_view to_string(ChangeKind kind) {
  switch (kind) {
    case ChangeKind::Added: return "added";
    case ChangeKind::Removed: return "removed";
    case ChangeKind::Changed: return "changed";
  }
  return "";
}

namespace {

const std::set<std::string>& named_lists() {
  static const std::set<std::string> kNamed = {"instances", "attributes", "consistency_rules",
                                               "gathering", "labeling", "sources", "issues"};
  return kNamed;
}

std::string join(const std::string& path, const std::string& segment) {
  return path.empty() ? segment : path + "/" + segment;
}

class Differ {
 public:
  DiffReport report;

  void value(const std::string& path, const json& a, const json& b) {
    if (a.is_object() && b.is_object()) {
      object(path, a, b);
    } else if (a.is_array() && b.is_array() && is_record_list(a) && is_record_list(b)) {
      positional(path, a, b);
    } else if (a != b) {
      report.entries.push_back({path, ChangeKind::Changed, a, b});
    }
  }

 private:
  static bool is_record_list(const json& v) {
    if (v.empty()) return false;
    for (const auto& e : v)
      if (!e.is_object()) return false;
    return true;
  }

  void object(const std::string& path, const json& a, const json& b) {
    std::set<std::string> keys;
    for (const auto& [k, v] : a.items()) keys.insert(k);
    for (const auto& [k, v] : b.items()) keys.insert(k);
    for (const auto& k : keys) {
      bool in_a = a.contains(k), in_b = b.contains(k);
      if (named_lists().count(k) && (!in_a || a[k].is_array()) && (!in_b || b[k].is_array())) {
        // Instances sit directly under composition.
        std::string base = (path == "composition" && k == "instances") ? path : join(path, k);
        named(base, in_a ? a[k] : json::array(), in_b ? b[k] : json::array());
        continue;
      }
      std::string p = join(path, k);
      if (!in_a) report.entries.push_back({p, ChangeKind::Added, std::nullopt, b[k]});
      else if (!in_b) report.entries.push_back({p, ChangeKind::Removed, a[k], std::nullopt});
      else value(p, a[k], b[k]);
    }
  }

  void named(const std::string& path, const json& a, const json& b) {
    std::map<std::string, const json*> left, right;
    for (const auto& e : a) left[e.at("name").get<std::string>()] = &e;
    for (const auto& e : b) right[e.at("name").get<std::string>()] = &e;
    std::set<std::string> names;
    for (const auto& [n, e] : left) names.insert(n);
    for (const auto& [n, e] : right) names.insert(n);
    for (const auto& n : names) {
      std::string p = join(path, n);
      auto l = left.find(n), r = right.find(n);
      if (l == left.end()) report.entries.push_back({p, ChangeKind::Added, std::nullopt, *r->second});
      else if (r == right.end()) report.entries.push_back({p, ChangeKind::Removed, *l->second, std::nullopt});
      else value(p, *l->second, *r->second);
    }
  }

  void positional(const std::string& path, const json& a, const json& b) {
    size_t n = std::max(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
      std::string p = join(path, std::to_string(i));
      if (i >= a.size()) report.entries.push_back({p, ChangeKind::Added, std::nullopt, b[i]});
      else if (i >= b.size()) report.entries.push_back({p, ChangeKind::Removed, a[i], std::nullopt});
      else value(p, a[i], b[i]);
    }
  }
};

}  // namespace

DiffReport compare_json(const json& a, const json& b) {
  Differ d;
  d.value("", a, b);
  return std::move(d.report);
}

DiffReport compare(const DatasetDescription& a, const DatasetDescription& b) {
  return compare_json(to_json(a), to_json(b));
}

json to_json(const DiffReport& report) {
  json entries = json::array();
  for (const auto& e : report.entries) {
    json j = {{"path", e.path}, {"kind", to_string(e.kind)}};
    if (e.before) j["before"] = *e.before;
    if (e.after) j["after"] = *e.after;
    entries.push_back(j);
  }
  return {{"entries", entries}};
}

std::string format_diff(const DiffReport& report) {
  if (report.empty()) return "no differences\n";
  std::ostringstream out;
  for (const auto& e : report.entries) {
    switch (e.kind) {
      case ChangeKind::Added: out << "+ " << e.path << ": " << e.after->dump() << "\n"; break;
      case ChangeKind::Removed: out << "- " << e.path << ": " << e.before->dump() << "\n"; break;
      case ChangeKind::Changed:
        out << "~ " << e.path << ": " << e.before->dump() << " -> " << e.after->dump() << "\n";
        break;
    }
  }
  return out.str();
}

}  // namespace datadesc
