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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "datadesc/analysis.hpp"
#include "datadesc/docgen.hpp"
#include "datadesc/ingest.hpp"
#include "datadesc/model_json.hpp"
#include "datadesc/printer.hpp"
#include "datadesc/registry.hpp"
#include "datadesc/semantics.hpp"
#include "datadesc/version.hpp"

namespace py = pybind11;
namespace dd = datadesc;

namespace {

// Raised with the diagnostics JSON as its message.
dd::DatasetDescription build_or_throw(const std::string& text) {
  dd::DocumentAnalysis a = dd::analyze_document(text);
  if (!a.model() || dd::has_errors(a.diagnostics))
    throw py::value_error(dd::diagnostics_to_json(a.diagnostics).dump());
  return *a.model();
}

std::string check(const std::string& text, const std::string& csv) {
  dd::DocumentAnalysis a = dd::analyze_document(text);
  std::vector<dd::Diagnostic> ds = a.diagnostics;
  if (!csv.empty() && a.model()) {
    try {
      auto more = dd::check_statistics(*a.model(), dd::load_table(csv), &a.build.source_map);
      ds.insert(ds.end(), more.begin(), more.end());
    } catch (const dd::IngestError& e) {
      ds.push_back(e.diagnostic());
    } catch (const dd::SchemaMismatch& e) {
      ds.push_back(dd::make_diagnostic("E045", e.what(), dd::SourceSpan::point(1, 1)));
    }
  }
  return dd::diagnostics_to_json(ds).dump();
}

class PyRegistry {
 public:
  std::string add(const std::string& text) { return registry_.index_add(build_or_throw(text)); }
  std::string search(const std::string& query) {
    try {
      return dd::to_json(registry_.search(dd::parse_query(query))).dump();
    } catch (const dd::QueryError& e) {
      throw py::value_error(dd::diagnostic_to_json(e.diagnostic()).dump());
    }
  }
  size_t size() const { return registry_.size(); }

 private:
  dd::Registry registry_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of the datadesc toolchain. Structured results are JSON strings.";
  m.attr("__version__") = dd::kVersion;

  m.def("check", &check, py::arg("text"), py::arg("csv") = "",
        "Diagnostics for a description, optionally checked against CSV data.");
  m.def("model_json", [](const std::string& text) { return dd::to_json_string(build_or_throw(text)); },
        py::arg("text"));
  m.def("format", [](const std::string& text) { return dd::pretty_print(build_or_throw(text)); }, py::arg("text"));
  m.def("to_markdown", [](const std::string& text) { return dd::to_markdown(build_or_throw(text)); },
        py::arg("text"));
  m.def("to_html", [](const std::string& text) { return dd::to_html(build_or_throw(text)); }, py::arg("text"));
  m.def("completeness", [](const std::string& text) {
    return dd::to_json(dd::completeness_report(build_or_throw(text))).dump();
  }, py::arg("text"));
  m.def("diff", [](const std::string& a, const std::string& b) {
    return dd::to_json(dd::compare(build_or_throw(a), build_or_throw(b))).dump();
  }, py::arg("a"), py::arg("b"));
  m.def("scaffold", [](const std::string& csv, const std::string& title, const std::string& name) {
    try {
      return dd::pretty_print(dd::scaffold_description(dd::load_table(csv, dd::TableFormat::Csv, name), title));
    } catch (const dd::IngestError& e) {
      throw py::value_error(dd::diagnostic_to_json(e.diagnostic()).dump());
    }
  }, py::arg("csv"), py::arg("title"), py::arg("name") = "data");

  py::class_<PyRegistry>(m, "Registry")
      .def(py::init<>())
      .def("add", &PyRegistry::add, py::arg("text"))
      .def("search", &PyRegistry::search, py::arg("query"))
      .def("__len__", &PyRegistry::size);
}
