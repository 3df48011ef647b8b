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

#ifndef DATADESC_SEMANTICS_HPP_
#define DATADESC_SEMANTICS_HPP_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "datadesc/diagnostic.hpp"
#include "datadesc/model.hpp"
#include "datadesc/syntax.hpp"

namespace datadesc {

enum class SymbolCategory {
  Instance,
  Attribute,
  GatheringProcess,
  LabelingProcess,
  SocialIssue,
};

std::string_view to_string(SymbolCategory category);

struct Declaration {
  SymbolCategory category;
  std::string name;  // attributes are qualified: instance.attribute
  SourceSpan span;   // header keyword through the name
  SourceSpan name_span;
};

/// A name written in the document that points at a declaration.
struct Reference {
  std::vector<SymbolCategory> expected;  // acceptable target categories
  std::string text;                      // as written
  std::optional<Declaration> target;     // set when resolved
  SourceSpan span;
};

/// Where model elements came from in the source.
struct SourceMap {
  std::vector<Declaration> declarations;
  std::vector<Reference> references;
  std::map<std::string, SourceSpan> element_spans;

  const Declaration* find(SymbolCategory category, std::string_view name) const;
  const Reference* reference_at(int line, int col) const;
  SourceSpan span_of(const std::string& key) const;  // 1:1 when unknown
};

struct BuildResult {
  std::optional<DatasetDescription> model;  // present iff no Error diagnostics
  std::vector<Diagnostic> diagnostics;
  SourceMap source_map;
};

/// Declares every named element, then resolves references against
/// per-category symbol tables.
BuildResult build_model(const SyntaxTree& tree);

/// Well-formedness checks beyond the grammar. Spans come from `map` when
/// given.
std::vector<Diagnostic> validate(const DatasetDescription& model,
                                 const SourceMap* map = nullptr);

using Element = std::variant<const DataInstance*, const Attribute*,
                             const GatheringProcess*, const LabelingProcess*,
                             const SocialIssue*>;

class ResolveError : public std::runtime_error {
 public:
  enum class Kind { NotFound, Ambiguous };
  ResolveError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Looks up `instance`, `instance.attribute`, a process or a social issue.
Element resolve(const DatasetDescription& model, std::string_view qualified_name);

/// parse + build_model + validate, as run by the CLI and the language server.
struct DocumentAnalysis {
  ParseResult parse;
  BuildResult build;
  std::vector<Diagnostic> diagnostics;  // all stages, sorted

  const std::optional<DatasetDescription>& model() const { return build.model; }
};

DocumentAnalysis analyze_document(std::string_view text);

}  // namespace datadesc

#endif  // DATADESC_SEMANTICS_HPP_
