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

#ifndef DATADESC_LANGSERVER_HPP_
#define DATADESC_LANGSERVER_HPP_

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "datadesc/semantics.hpp"

namespace datadesc {

// LSP CompletionItemKind values used by the server.
enum class CompletionKind {
  Keyword = 14,
  Snippet = 15,
  Reference = 18,
  EnumMember = 20,
};

struct CompletionItem {
  std::string label;
  CompletionKind kind = CompletionKind::Keyword;
  std::string detail;
  std::string insert_text;  // snippet syntax when kind == Snippet

  friend bool operator==(const CompletionItem&, const CompletionItem&) = default;
};

struct HoverInfo {
  std::string markdown;
  SourceSpan span;
};

/// One open document. Positions are 1-based lines and code-point columns,
/// as in SourceSpan.
class DocumentState {
 public:
  DocumentState(std::string uri, std::string text, int version);

  /// Full reanalysis. Returns false (and keeps the state) when `version`
  /// is not newer than the stored one.
  bool on_change(std::string text, int version);

  const std::string& uri() const { return uri_; }
  const std::string& text() const { return text_; }
  int version() const { return version_; }
  const std::vector<Diagnostic>& diagnostics() const { return analysis_.diagnostics; }
  const std::optional<DatasetDescription>& model() const { return analysis_.model(); }
  const SourceMap& source_map() const { return analysis_.build.source_map; }

  std::vector<CompletionItem> completion_at(int line, int col) const;
  std::optional<SourceSpan> definition_at(int line, int col) const;
  std::optional<HoverInfo> hover_at(int line, int col) const;

  /// Text of a 1-based line without its terminator; empty past the end.
  std::string_view line_text(int line) const;

 private:
  void reanalyze();

  std::string uri_;
  std::string text_;
  int version_ = 0;
  std::vector<std::string_view> lines_;
  DocumentAnalysis analysis_;
};

/// Code-point column (1-based) for a UTF-16 offset (0-based) into `line`.
int utf16_to_column(std::string_view line, int utf16_offset);
/// UTF-16 offset (0-based) for a code-point column (1-based).
int column_to_utf16(std::string_view line, int column);

/// JSON-RPC dispatcher for the Language Server Protocol. Messages are
/// handled strictly in arrival order.
class LanguageServer {
 public:
  /// Returns the messages to send in response: at most one response plus
  /// any notifications.
  std::vector<nlohmann::json> handle(const nlohmann::json& message);

  bool exit_requested() const { return exit_requested_; }
  /// 0 when `shutdown` preceded `exit`.
  int exit_code() const { return shutdown_requested_ ? 0 : 1; }

  const DocumentState* document(const std::string& uri) const;

 private:
  nlohmann::json publish(const DocumentState& doc) const;
  nlohmann::json range_json(const DocumentState& doc, const SourceSpan& span) const;
  std::optional<std::pair<int, int>> position(const nlohmann::json& params) const;

  std::map<std::string, DocumentState> documents_;
  bool shutdown_requested_ = false;
  bool exit_requested_ = false;
};

/// Reads one Content-Length framed message. nullopt at end of input.
std::optional<std::string> read_lsp_message(std::istream& in);
void write_lsp_message(std::ostream& out, const nlohmann::json& message);

/// Serves LSP over the given streams until `exit` or end of input.
int run_language_server(std::istream& in, std::ostream& out);

}  // namespace datadesc

#endif  // DATADESC_LANGSERVER_HPP_
