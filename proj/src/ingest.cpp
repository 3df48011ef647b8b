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

#include "datadesc/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

namespace datadesc {

namespace {

constexpr size_t kMaxScaffoldCategories = 50;

[[noreturn]] void fail(const std::string& code, const std::string& message, int line, int col) {
  throw IngestError(make_diagnostic(code, message, SourceSpan::point(line, col)));
}

bool decimal_literal(std::string_view s, double& out) {
  static const std::regex kNumber(R"([+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?)");
  if (!std::regex_match(s.begin(), s.end(), kNumber)) return false;
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
}

struct CsvReader {
  std::string_view src;
  size_t pos = 0;
  int line = 1;
  int col = 1;

  bool eof() const { return pos >= src.size(); }

  void step() {
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else if ((static_cast<unsigned char>(src[pos]) & 0xC0) != 0x80) {
      ++col;
    }
    ++pos;
  }

  // One record; returns false at end of input.
  bool record(std::vector<std::string>& fields, int& start_line) {
    fields.clear();
    if (eof()) return false;
    start_line = line;
    std::string field;
    while (true) {
      if (!eof() && src[pos] == '"') {
        int qline = line, qcol = col;
        step();
        while (true) {
          if (eof()) fail("E040", "unterminated quoted field", qline, qcol);
          if (src[pos] == '"') {
            if (pos + 1 < src.size() && src[pos + 1] == '"') {
              field += '"';
              step();
              step();
              continue;
            }
            step();
            break;
          }
          field += src[pos];
          step();
        }
        if (!eof() && src[pos] != ',' && src[pos] != '\n' && src[pos] != '\r')
          fail("E040", "unexpected character after closing quote", line, col);
      } else {
        while (!eof() && src[pos] != ',' && src[pos] != '\n' && src[pos] != '\r') {
          if (src[pos] == '"') fail("E040", "quote inside unquoted field", line, col);
          field += src[pos];
          step();
        }
      }
      fields.push_back(std::move(field));
      field.clear();
      if (eof()) return true;
      if (src[pos] == ',') {
        step();
        continue;
      }
      if (src[pos] == '\r') step();
      if (!eof() && src[pos] == '\n') step();
      return true;
    }
  }
};

}  // namespace

Cell Cell::of_number(double v, std::string raw) { return {Kind::Number, v, std::move(raw)}; }

Cell Cell::of_number(double v) { return of_number(v, format_number(v)); }

bool Column::is_numeric() const {
  return std::all_of(cells.begin(), cells.end(),
                     [](const Cell& c) { return c.kind != Cell::Kind::Text; });
}

size_t Column::present() const {
  return static_cast<size_t>(std::count_if(cells.begin(), cells.end(),
                                           [](const Cell& c) { return !c.is_missing(); }));
}

const Column* Table::find(std::string_view column) const {
  for (const auto& c : columns)
    if (c.name == column) return &c;
  return nullptr;
}

Cell classify_cell(std::string raw) {
  if (raw.empty()) return Cell::missing();
  double v;
  if (decimal_literal(raw, v)) return Cell::of_number(v, std::move(raw));
  return Cell::of_text(std::move(raw));
}

Table load_table(std::string_view bytes, TableFormat format, std::string name) {
  (void)format;
  if (bytes.substr(0, 3) == "\xEF\xBB\xBF") bytes.remove_prefix(3);
  if (bytes.find_first_not_of(" \t\r\n") == std::string_view::npos)
    fail("E042", "empty file: a header row is required", 1, 1);

  CsvReader reader{bytes};
  std::vector<std::string> fields;
  int line = 1;
  reader.record(fields, line);
  Table table;
  table.name = std::move(name);
  std::set<std::string> seen;
  for (auto& h : fields) {
    if (!seen.insert(h).second) fail("E041", "duplicate column header '" + h + "'", line, 1);
    table.columns.push_back({h, {}});
  }
  while (reader.record(fields, line)) {
    // A final line break does not open another record.
    if (fields.size() == 1 && fields[0].empty() && reader.eof() && table.columns.size() > 1)
      break;
    if (fields.size() != table.columns.size()) {
      fail("E040",
           "ragged row: expected " + std::to_string(table.columns.size()) + " fields, found " +
               std::to_string(fields.size()),
           line, 1);
    }
    for (size_t i = 0; i < fields.size(); ++i)
      table.columns[i].cells.push_back(classify_cell(std::move(fields[i])));
  }
  return table;
}

Table load_table_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_table(ss.str(), TableFormat::Csv, std::filesystem::path(path).stem().string());
}

double percent_half_up(long long part, long long whole) {
  if (whole <= 0) return 0;
  long long hundredths = (20000 * part + whole) / (2 * whole);
  return static_cast<double>(hundredths) / 100.0;
}

AttributeStatistics profile_attribute(const Column& column) {
  AttributeStatistics s;
  long long total = static_cast<long long>(column.cells.size());
  long long present = static_cast<long long>(column.present());
  if (total == 0) return s;
  s.quality.completeness_pct = percent_half_up(present, total);
  if (present == 0) return s;

  long long zeros = 0;
  for (const auto& c : column.cells)
    if (c.is_number() && c.number == 0) ++zeros;
  s.quality.sparsity_count = zeros;

  if (column.is_numeric()) {
    std::vector<double> v;
    for (const auto& c : column.cells)
      if (c.is_number()) v.push_back(c.number);
    std::sort(v.begin(), v.end());
    size_t n = v.size();
    double mode = v[0];
    size_t best = 0;
    for (size_t i = 0; i < n;) {
      size_t j = i;
      while (j < n && v[j] == v[i]) ++j;
      if (j - i > best) {
        best = j - i;
        mode = v[i];
      }
      i = j;
    }
    s.mode = mode == 0 ? 0.0 : mode;
    long double sum = 0;
    for (double x : v) sum += x;
    double mean = static_cast<double>(sum / static_cast<long double>(n));
    long double sq = 0;
    for (double x : v) sq += (static_cast<long double>(x) - mean) * (static_cast<long double>(x) - mean);
    s.mean = mean;
    s.std_dev = static_cast<double>(std::sqrt(sq / static_cast<long double>(n)));
    s.median = n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
    return s;
  }

  std::map<std::string, long long> freq;
  for (const auto& c : column.cells)
    if (!c.is_missing()) ++freq[c.text];
  std::string mode;
  long long best = 0;
  for (const auto& [value, count] : freq) {
    if (count > best) {
      best = count;
      mode = value;
    }
  }
  s.mode = mode;
  std::map<std::string, double> dist;
  for (const auto& [value, count] : freq) dist[value] = percent_half_up(count, present);
  s.categorical_distribution = std::move(dist);
  return s;
}

double compute_pair_correlation(const Column& x, const Column& y) {
  for (const Column* c : {&x, &y})
    if (!c->is_numeric())
      fail("E043", "column '" + c->name + "' is not numeric", 1, 1);
  std::vector<std::pair<double, double>> pairs;
  size_t n = std::min(x.cells.size(), y.cells.size());
  for (size_t i = 0; i < n; ++i)
    if (x.cells[i].is_number() && y.cells[i].is_number())
      pairs.emplace_back(x.cells[i].number, y.cells[i].number);
  if (pairs.size() < 2)
    fail("E044", "correlation of '" + x.name + "' and '" + y.name +
                     "' needs at least two complete rows", 1, 1);
  long double mx = 0, my = 0;
  for (auto [a, b] : pairs) {
    mx += a;
    my += b;
  }
  mx /= pairs.size();
  my /= pairs.size();
  long double sxx = 0, syy = 0, sxy = 0;
  for (auto [a, b] : pairs) {
    long double dx = a - mx, dy = b - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0 || syy == 0)
    fail("E044", "correlation of '" + x.name + "' and '" + y.name +
                     "' is undefined: zero variance", 1, 1);
  double r = static_cast<double>(sxy / std::sqrt(sxx * syy));
  return std::clamp(r, -1.0, 1.0);
}

std::string sanitize_identifier(std::string_view text) {
  std::string out;
  for (char c : text) {
    bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    out += ok && static_cast<unsigned char>(c) < 0x80 ? c : '_';
  }
  if (out.empty()) out = "data";
  if (std::isdigit(static_cast<unsigned char>(out[0]))) out.insert(out.begin(), '_');
  static const std::set<std::string> reserved = {"and", "or", "not", "implies", "true", "false"};
  std::string lower;
  for (char c : out) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (reserved.count(lower)) out += '_';
  return out;
}

DatasetDescription scaffold_description(const Table& table, const std::string& title) {
  DatasetDescription m;
  m.metadata.title = title;
  m.metadata.version = "v0001";
  m.metadata.unique_id = default_unique_id(title, m.metadata.version);
  DataInstance inst;
  inst.name = sanitize_identifier(table.name);
  inst.instance_type = InstanceType::RecordData;
  inst.size = static_cast<long long>(table.rows());
  std::set<std::string> used;
  for (const auto& col : table.columns) {
    std::string base = sanitize_identifier(col.name);
    std::string name = base;
    for (int k = 2; used.count(name); ++k) name = base + "_" + std::to_string(k);
    used.insert(name);
    Attribute a;
    a.name = name;
    a.attr_type = col.is_numeric() && col.present() > 0 ? AttributeType::Numerical
                                                        : AttributeType::Categorical;
    AttributeStatistics s = profile_attribute(col);
    if (s.categorical_distribution && s.categorical_distribution->size() > kMaxScaffoldCategories)
      s.categorical_distribution.reset();
    if (!s.empty()) a.statistics = std::move(s);
    inst.attributes.push_back(std::move(a));
  }
  m.composition = Composition{};
  m.composition->instances.push_back(std::move(inst));
  return m;
}

}  // namespace datadesc
