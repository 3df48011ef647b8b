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

#include "datadesc/cli.hpp"

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "datadesc/analysis.hpp"
#include "datadesc/docgen.hpp"
#include "datadesc/ingest.hpp"
#include "datadesc/langserver.hpp"
#include "datadesc/model_json.hpp"
#include "datadesc/printer.hpp"
#include "datadesc/registry.hpp"
#include "datadesc/semantics.hpp"
#include "datadesc/version.hpp"

namespace datadesc {

using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << content;
  if (!out) throw UsageError("cannot write '" + path + "'");
}

class Reporter {
 public:
  Reporter(CliStreams& io, bool as_json) : io_(io), json_(as_json) {}

  void add(const std::string& file, const Diagnostic& d) { items_.push_back({file, d}); }
  void add(const std::string& file, const std::vector<Diagnostic>& ds) {
    for (const auto& d : ds) add(file, d);
  }
  bool errors() const {
    for (const auto& [f, d] : items_)
      if (d.severity == Severity::Error) return true;
    return false;
  }

  json diagnostics_json() const {
    json arr = json::array();
    for (const auto& [file, d] : items_) {
      json j = diagnostic_to_json(d);
      j["file"] = file;
      arr.push_back(std::move(j));
    }
    return arr;
  }

  void print_human() const {
    for (const auto& [file, d] : items_) {
      std::string line = format_diagnostic(file, d);
      if (io_.color) {
        std::string tag = std::string(d.code) + " " + std::string(severity_name(d.severity));
        auto at = line.find(tag);
        if (at != std::string::npos) {
          const char* color = d.severity == Severity::Error ? "\033[31m" : "\033[33m";
          line = line.substr(0, at) + color + tag + "\033[0m" + line.substr(at + tag.size());
        }
      }
      io_.out << line << "\n";
    }
  }

  bool json_mode() const { return json_; }

 private:
  CliStreams& io_;
  bool json_;
  std::vector<std::pair<std::string, Diagnostic>> items_;
};

int finish(CliStreams& io, Reporter& r, json payload, const std::string& human_tail = "") {
  if (r.json_mode()) {
    payload["diagnostics"] = r.diagnostics_json();
    io.out << payload.dump(2) << "\n";
  } else {
    r.print_human();
    io.out << human_tail;
  }
  return r.errors() ? kExitFailure : kExitOk;
}

// Loads and analyzes a description; diagnostics go to the reporter.
std::optional<DocumentAnalysis> load_description(const std::string& path, Reporter& r) {
  DocumentAnalysis a = analyze_document(read_file(path));
  r.add(path, a.diagnostics);
  return a;
}

int cmd_check(CliStreams& io, bool as_json, const std::string& file, const std::string& data,
              const std::string& instance) {
  Reporter r(io, as_json);
  auto a = load_description(file, r);
  json payload = {{"file", file}};
  if (!data.empty() && a->model()) {
    payload["data"] = data;
    try {
      Table table = load_table_file(data);
      std::optional<std::string> inst;
      if (!instance.empty()) inst = instance;
      r.add(file, check_statistics(*a->model(), table, &a->build.source_map, inst));
    } catch (const IngestError& e) {
      r.add(data, e.diagnostic());
    } catch (const SchemaMismatch& e) {
      r.add(data, make_diagnostic("E045", e.what(), SourceSpan::point(1, 1)));
    }
  }
  int errors = 0, warnings = 0;
  for (const auto& d : r.diagnostics_json()) (d["severity"] == "error" ? errors : warnings)++;
  payload["errors"] = errors;
  payload["warnings"] = warnings;
  std::string tail = file + ": " + std::to_string(errors) + " error(s), " + std::to_string(warnings) +
                     " warning(s)\n";
  return finish(io, r, payload, tail);
}

int cmd_report(CliStreams& io, bool as_json, const std::string& file) {
  Reporter r(io, as_json);
  auto a = load_description(file, r);
  if (!a->model()) return finish(io, r, {{"file", file}});
  CompletenessReport report = completeness_report(*a->model());
  json payload = to_json(report);
  payload["file"] = file;
  return finish(io, r, payload, format_report(report));
}

int cmd_diff(CliStreams& io, bool as_json, const std::string& left, const std::string& right) {
  Reporter r(io, as_json);
  auto a = load_description(left, r);
  auto b = load_description(right, r);
  if (!a->model() || !b->model()) return finish(io, r, {{"left", left}, {"right", right}});
  DiffReport diff = compare(*a->model(), *b->model());
  json payload = to_json(diff);
  payload["left"] = left;
  payload["right"] = right;
  return finish(io, r, payload, format_diff(diff));
}

int cmd_import(CliStreams& io, bool as_json, const std::string& csv, const std::string& title,
               const std::string& output) {
  Reporter r(io, as_json);
  json payload = {{"input", csv}};
  try {
    Table table = load_table_file(csv);
    DatasetDescription model = scaffold_description(table, title);
    std::string text = pretty_print(model);
    if (output.empty() || output == "-") {
      if (!as_json) io.out << text;
      else payload["description"] = text;
    } else {
      write_file(output, text);
      payload["output"] = output;
    }
    payload["dataset_id"] = model.metadata.unique_id;
  } catch (const IngestError& e) {
    r.add(csv, e.diagnostic());
  }
  return finish(io, r, payload);
}

int cmd_docgen(CliStreams& io, bool as_json, const std::string& file, const std::string& format,
               const std::string& output) {
  Reporter r(io, as_json);
  auto a = load_description(file, r);
  json payload = {{"file", file}, {"format", format}};
  if (a->model()) {
    std::string doc = format == "html" ? to_html(*a->model()) : to_markdown(*a->model());
    if (output.empty() || output == "-") {
      if (!as_json) io.out << doc;
      else payload["document"] = doc;
    } else {
      write_file(output, doc);
      payload["output"] = output;
    }
  }
  return finish(io, r, payload);
}

int cmd_search(CliStreams& io, bool as_json, const std::string& dir, const std::string& query_text) {
  Reporter r(io, as_json);
  json payload = {{"directory", dir}, {"query", query_text}};
  Query query;
  try {
    query = parse_query(query_text);
  } catch (const QueryError& e) {
    r.add("<query>", e.diagnostic());
    return finish(io, r, payload);
  }
  Registry registry;
  for (const auto& [path, ds] : registry.load_directory(dir)) r.add(path, ds);
  try {
    registry.write_index(dir);
  } catch (const std::exception&) {
  }
  SearchResult result = registry.search(query);
  payload["matches"] = to_json(result)["matches"];
  std::string tail;
  for (const auto& m : result.matches) tail += m.dataset_id + "\t" + m.title + "\n";
  // Unparseable registry files are reported but do not fail the search.
  finish(io, r, payload, tail);
  return kExitOk;
}

std::string leading_comments(const std::string& text) {
  std::string out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line.compare(first, 2, "//") != 0) break;
    out += line.substr(first) + "\n";
  }
  return out;
}

int cmd_fmt(CliStreams& io, bool as_json, const std::string& file, bool check_only) {
  Reporter r(io, as_json);
  std::string original = read_file(file);
  DocumentAnalysis a = analyze_document(original);
  r.add(file, a.diagnostics);
  json payload = {{"file", file}};
  if (!a.model()) return finish(io, r, payload);
  std::string formatted = leading_comments(original) + pretty_print(*a.model());
  bool changed = formatted != original;
  payload["changed"] = changed;
  if (check_only) {
    finish(io, r, payload, changed ? file + ": would reformat\n" : "");
    return changed ? kExitFailure : (r.errors() ? kExitFailure : kExitOk);
  }
  if (changed) write_file(file, formatted);
  return finish(io, r, payload, changed ? file + ": formatted\n" : "");
}

}  // namespace

bool color_enabled_for_stdout() {
  return std::getenv("DATADESC_NO_COLOR") == nullptr && ::isatty(STDOUT_FILENO) != 0;
}

int run_cli(const std::vector<std::string>& args, CliStreams io) {
  if (std::getenv("DATADESC_NO_COLOR") != nullptr) io.color = false;

  CLI::App app{"Toolchain for dataset description documents (" + std::string(kFileExtension) + ")",
               "datadesc"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable output")->configurable(false);

  std::string file, file_b, data, instance, title, output, format = "md", query;
  bool check_only = false;

  auto* check = app.add_subcommand("check", "Parse, build and validate a description");
  check->add_option("FILE", file, "Description file")->required()->check(CLI::ExistingFile);
  check->add_option("--data", data, "CSV file to check statistics and rules against")
      ->check(CLI::ExistingFile);
  check->add_option("--instance", instance, "Data instance the CSV file holds");

  auto* report = app.add_subcommand("report", "Completeness report");
  report->add_option("FILE", file, "Description file")->required()->check(CLI::ExistingFile);

  auto* diff = app.add_subcommand("diff", "Structural differences between two descriptions");
  diff->add_option("A", file, "First description")->required()->check(CLI::ExistingFile);
  diff->add_option("B", file_b, "Second description")->required()->check(CLI::ExistingFile);

  auto* import = app.add_subcommand("import", "Scaffold a description from a CSV file");
  import->add_option("CSV", file, "CSV file")->required()->check(CLI::ExistingFile);
  import->add_option("--title", title, "Dataset title")->required();
  import->add_option("-o,--output", output, "Output description file (default: stdout)");

  auto* docgen = app.add_subcommand("docgen", "Generate documentation");
  docgen->add_option("FILE", file, "Description file")->required()->check(CLI::ExistingFile);
  docgen->add_option("--format", format, "md or html")->check(CLI::IsMember({"md", "html"}));
  docgen->add_option("-o,--output", output, "Output file (default: stdout)");

  auto* search = app.add_subcommand("search", "Search a registry directory");
  search->add_option("DIR", file, "Registry directory")->required()->check(CLI::ExistingDirectory);
  search->add_option("QUERY", query, "Query, e.g. 'tag=Melanoma AND min_size>=100'");

  auto* fmt = app.add_subcommand("fmt", "Pretty-print a description in place");
  fmt->add_option("FILE", file, "Description file")->required()->check(CLI::ExistingFile);
  fmt->add_flag("--check", check_only, "Only report whether the file would change");

  auto* lsp = app.add_subcommand("lsp", "Run the language server on stdio");

  for (auto* sub : {check, report, diff, import, docgen, search, fmt, lsp})
    sub->add_flag("--json", as_json, "Machine-readable output");

  std::vector<const char*> argv = {"datadesc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, io.out, io.err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(io, as_json, file, data, instance);
    if (report->parsed()) return cmd_report(io, as_json, file);
    if (diff->parsed()) return cmd_diff(io, as_json, file, file_b);
    if (import->parsed()) return cmd_import(io, as_json, file, title, output);
    if (docgen->parsed()) return cmd_docgen(io, as_json, file, format, output);
    if (search->parsed()) return cmd_search(io, as_json, file, query);
    if (fmt->parsed()) return cmd_fmt(io, as_json, file, check_only);
    if (lsp->parsed()) return run_language_server(io.in, io.out);
  } catch (const UsageError& e) {
    io.err << "datadesc: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    io.err << "datadesc: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace datadesc
