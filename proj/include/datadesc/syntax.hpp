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

#ifndef DATADESC_SYNTAX_HPP_
#define DATADESC_SYNTAX_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "datadesc/diagnostic.hpp"

namespace datadesc {

enum class NodeKind {
  Interior,
  // Leaves.
  Keyword,
  Identifier,
  QualifiedName,
  String,
  Phrase,
  Number,
  Percentage,
  Date,
  Token,
  Expression,
  Punct,
  Elision,
};

std::string_view to_string(NodeKind kind);

/// One node of the concrete syntax tree. Interior nodes carry a production
/// tag ("Metadata", "Instance", "Title", ...). Leaves carry the exact source
/// slice in `text` and the decoded value (unescaped string, trimmed phrase)
/// in `value`.
struct SyntaxNode {
  NodeKind kind = NodeKind::Interior;
  std::string tag;
  SourceSpan span;
  std::string text;
  std::string value;
  std::vector<SyntaxNode> children;

  bool is_leaf() const { return kind != NodeKind::Interior; }

  /// First direct child with the given tag, or nullptr.
  const SyntaxNode* child(std::string_view child_tag) const;
  /// All direct children with the given tag.
  std::vector<const SyntaxNode*> children_tagged(std::string_view child_tag) const;
  /// First direct child leaf of the given kind, or nullptr.
  const SyntaxNode* leaf(NodeKind leaf_kind) const;
};

struct SyntaxTree {
  SyntaxNode root;  // tag "Document"
};

struct ParseResult {
  std::optional<SyntaxTree> tree;  // present iff no Error diagnostics
  std::vector<Diagnostic> diagnostics;
  /// Best-effort tree, also produced when errors were reported. Used by
  /// editor features on half-typed documents.
  SyntaxTree partial;
};

ParseResult parse(std::string_view source);

/// Every leaf in document order.
std::vector<const SyntaxNode*> leaves(const SyntaxTree& tree);

/// Top-level section keywords in canonical spelling.
const std::vector<std::string_view>& section_keywords();

}  // namespace datadesc

#endif  // DATADESC_SYNTAX_HPP_
