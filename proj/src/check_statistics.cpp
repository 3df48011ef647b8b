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

#include <cmath>

#include "datadesc/analysis.hpp"
#include "datadesc/rules.hpp"

namespace datadesc {

namespace {

const DataInstance* pick_instance(const DatasetDescription& model, const Table& table,
                                  const std::optional<std::string>& requested) {
  if (!model.composition || model.composition->instances.empty())
    throw SchemaMismatch("", "the description declares no data instances");
  const auto& instances = model.composition->instances;
  if (requested) {
    if (const DataInstance* i = model.composition->find_instance(*requested)) return i;
    throw SchemaMismatch("", "no data instance named '" + *requested + "'");
  }
  if (const DataInstance* i = model.composition->find_instance(table.name)) return i;
  if (instances.size() == 1) return &instances.front();
  throw SchemaMismatch("", "cannot tell which data instance table '" + table.name +
                               "' describes; name one explicitly");
}

class StatisticsChecker {
 public:
  StatisticsChecker(const DataInstance& inst, const SourceMap* map, std::vector<Diagnostic>& out)
      : inst_(inst), map_(map), out_(out) {}

  void attribute(const Attribute& a, const Column& col) {
    if (!a.statistics) return;
    const AttributeStatistics& declared = *a.statistics;
    AttributeStatistics actual = profile_attribute(col);
    std::string q = inst_.name + "." + a.name;
    std::string stats_key = "statistics:" + q;
    moment("mean", q, declared.mean, actual.mean, stats_key);
    moment("median", q, declared.median, actual.median, stats_key);
    moment("standard deviation", q, declared.std_dev, actual.std_dev, stats_key);
    if (declared.mode) mode(q, *declared.mode, actual, col, stats_key);
    if (declared.categorical_distribution) {
      for (const auto& [category, pct] : *declared.categorical_distribution) {
        double got = 0;
        if (actual.categorical_distribution) {
          auto it = actual.categorical_distribution->find(category);
          if (it != actual.categorical_distribution->end()) got = it->second;
        }
        if (std::abs(got - pct) > kPercentTolerance + 1e-9)
          warn("declared share of \"" + category + "\" in '" + q + "' is " + format_number(pct) +
                   "% but the data gives " + format_number(got) + "%",
               "distribution:" + q);
      }
    }
    if (declared.quality.completeness_pct) {
      double want = *declared.quality.completeness_pct;
      double got = actual.quality.completeness_pct.value_or(0);
      if (std::abs(got - want) > kPercentTolerance + 1e-9)
        warn("declared completeness of '" + q + "' is " + format_number(want) +
                 "% but the data gives " + format_number(got) + "%",
             "completeness:" + q);
    }
    if (declared.quality.sparsity_count) {
      long long got = actual.quality.sparsity_count.value_or(0);
      if (got != *declared.quality.sparsity_count)
        warn("declared sparsity of '" + q + "' is " + std::to_string(*declared.quality.sparsity_count) +
                 " but the data gives " + std::to_string(got),
             stats_key);
    }
  }

 private:
  void moment(const std::string& what, const std::string& q, const std::optional<double>& want,
              const std::optional<double>& got, const std::string& key) {
    if (!want) return;
    if (!got) {
      warn("declared " + what + " of '" + q + "' is " + format_number(*want) +
               " but the data has no numeric values to compare",
           key);
    } else if (std::abs(*got - *want) > kMomentTolerance + 1e-9) {
      warn("declared " + what + " of '" + q + "' is " + format_number(*want) +
               " but the data gives " + format_number(*got),
           key);
    }
  }

  // A declared mode is accepted when it is one of the most frequent values.
  void mode(const std::string& q, const StatValue& want, const AttributeStatistics& actual,
            const Column& col, const std::string& key) {
    if (!actual.mode) {
      warn("declared mode of '" + q + "' is " + stat_value_text(want) + " but the column has no values",
           key);
      return;
    }
    auto matches = [&](const Cell& c) {
      if (c.is_missing()) return false;
      if (const double* d = std::get_if<double>(&want))
        return c.is_number() && std::abs(c.number - *d) <= kMomentTolerance + 1e-9;
      const std::string& s = std::get<std::string>(want);
      return c.text == s;
    };
    auto is_top = [&](const Cell& top) {
      long long best = 0, declared = 0;
      for (const auto& c : col.cells) {
        if (c.is_missing()) continue;
        if (top.is_number() ? (c.is_number() && c.number == top.number) : c.text == top.text) ++best;
        if (matches(c)) ++declared;
      }
      return declared > 0 && declared >= best;
    };
    Cell top = std::holds_alternative<double>(*actual.mode)
                   ? Cell::of_number(std::get<double>(*actual.mode))
                   : Cell::of_text(std::get<std::string>(*actual.mode));
    if (!is_top(top))
      warn("declared mode of '" + q + "' is " + stat_value_text(want) + " but the data gives " +
               stat_value_text(*actual.mode),
           key);
  }

  void warn(const std::string& message, const std::string& key) {
    SourceSpan span = map_ ? map_->span_of(key) : SourceSpan{};
    out_.push_back(make_diagnostic("W030", message, span));
  }

  const DataInstance& inst_;
  const SourceMap* map_;
  std::vector<Diagnostic>& out_;
};

std::string row_list(const std::vector<size_t>& rows) {
  std::string s;
  size_t shown = std::min<size_t>(rows.size(), 10);
  for (size_t i = 0; i < shown; ++i) s += (i ? ", " : "") + std::to_string(rows[i]);
  if (rows.size() > shown) s += ", ...";
  return s;
}

}  // namespace

std::vector<Diagnostic> check_statistics(const DatasetDescription& model, const Table& table,
                                         const SourceMap* map,
                                         const std::optional<std::string>& instance) {
  const DataInstance& inst = *pick_instance(model, table, instance);
  std::vector<Diagnostic> out;
  StatisticsChecker checker(inst, map, out);
  for (const auto& a : inst.attributes) {
    const Column* col = table.find(a.name);
    if (!col) {
      if (!a.statistics) continue;
      throw SchemaMismatch(a.name, "attribute '" + inst.name + "." + a.name +
                                       "' has no column in table '" + table.name + "'");
    }
    checker.attribute(a, *col);
  }
  for (const auto& rule : inst.consistency_rules) {
    SourceSpan span = map ? map->span_of("rule:" + inst.name + ":" + rule.name) : SourceSpan{};
    auto typing = typecheck_rule(rule, inst, span);
    if (!typing.empty()) {
      out.insert(out.end(), typing.begin(), typing.end());
      continue;
    }
    RuleVerdict v;
    try {
      v = evaluate_rule(rule, table);
    } catch (const RuleTypeError& e) {
      out.push_back(make_diagnostic("E031", std::string(e.what()) + " (column types in the data)", span));
      continue;
    }
    if (!v.holds)
      out.push_back(make_diagnostic(
          "E032",
          "rule '" + rule.name + "' is violated by " + std::to_string(v.violating_rows.size()) +
              " of " + std::to_string(v.rows_checked) + " rows (0-based rows " +
              row_list(v.violating_rows) + ")",
          span));
  }
  sort_diagnostics(out);
  return out;
}

}  // namespace datadesc
