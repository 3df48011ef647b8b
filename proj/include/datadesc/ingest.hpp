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

#ifndef DATADESC_INGEST_HPP_
#define DATADESC_INGEST_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "datadesc/diagnostic.hpp"
#include "datadesc/model.hpp"

namespace datadesc {

struct Cell {
  enum class Kind { Missing, Number, Text };

  Kind kind = Kind::Missing;
  double number = 0;
  std::string text;  // raw cell text; empty when missing

  static Cell missing() { return {}; }
  static Cell of_number(double v, std::string raw);
  static Cell of_number(double v);
  static Cell of_text(std::string t) { return {Kind::Text, 0, std::move(t)}; }

  bool is_missing() const { return kind == Kind::Missing; }
  bool is_number() const { return kind == Kind::Number; }
  friend bool operator==(const Cell&, const Cell&) = default;
};

struct Column {
  std::string name;
  std::vector<Cell> cells;

  /// True when every non-missing cell is a number (vacuously for empty columns).
  bool is_numeric() const;
  size_t present() const;
};

struct Table {
  std::string name;
  std::vector<Column> columns;

  size_t rows() const { return columns.empty() ? 0 : columns.front().cells.size(); }
  const Column* find(std::string_view column) const;
};

enum class TableFormat { Csv };

/// Thrown for E040-E044; carries the diagnostic.
class IngestError : public std::runtime_error {
 public:
  explicit IngestError(Diagnostic d)
      : std::runtime_error(d.code + ": " + d.message), diagnostic_(std::move(d)) {}
  const Diagnostic& diagnostic() const { return diagnostic_; }

 private:
  Diagnostic diagnostic_;
};

/// Parses a cell the way the CSV loader does: empty is Missing, a full
/// decimal literal is a Number, anything else Text.
Cell classify_cell(std::string raw);

/// RFC-4180 CSV with a mandatory header row.
Table load_table(std::string_view bytes, TableFormat format = TableFormat::Csv,
                 std::string name = "");

/// Reads a file; the table is named after the file stem.
Table load_table_file(const std::string& path);

/// Statistics over non-missing cells. Percentages are rounded half-up to
/// two decimals; std_dev is the population deviation.
AttributeStatistics profile_attribute(const Column& column);

/// Pearson coefficient with pairwise deletion of missing cells.
double compute_pair_correlation(const Column& x, const Column& y);

/// Half-up rounding of 100 * part / whole to two decimals.
double percent_half_up(long long part, long long whole);

/// `[A-Za-z_][A-Za-z0-9_]*` form of arbitrary text.
std::string sanitize_identifier(std::string_view text);

/// Skeleton description with one instance holding one profiled attribute
/// per column.
DatasetDescription scaffold_description(const Table& table, const std::string& title);

}  // namespace datadesc

#endif  // DATADESC_INGEST_HPP_
