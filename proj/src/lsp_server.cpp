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

#include <istream>
#include <ostream>

#include "datadesc/langserver.hpp"
#include "datadesc/version.hpp"

namespace datadesc {

using nlohmann::json;

namespace {

json response(const json& id, json result) {
  return {{"jsonrpc", "2.0"}, {"id", id}, {"result", std::move(result)}};
}

json error_response(const json& id, int code, const std::string& message) {
  return {{"jsonrpc", "2.0"}, {"id", id}, {"error", {{"code", code}, {"message", message}}}};
}

json capabilities() {
  return {
      {"textDocumentSync", {{"openClose", true}, {"change", 1}}},
      {"completionProvider", {{"triggerCharacters", {":", " ", ","}}}},
      {"hoverProvider", true},
      {"definitionProvider", true},
  };
}

}  // namespace

const DocumentState* LanguageServer::document(const std::string& uri) const {
  auto it = documents_.find(uri);
  return it == documents_.end() ? nullptr : &it->second;
}

json LanguageServer::range_json(const DocumentState& doc, const SourceSpan& span) const {
  auto pos = [&](int line, int col) {
    return json{{"line", std::max(0, line - 1)},
                {"character", column_to_utf16(doc.line_text(line), col)}};
  };
  return {{"start", pos(span.start_line, span.start_col)}, {"end", pos(span.end_line, span.end_col)}};
}

json LanguageServer::publish(const DocumentState& doc) const {
  json diags = json::array();
  for (const auto& d : doc.diagnostics()) {
    diags.push_back({{"range", range_json(doc, d.span)},
                     {"severity", d.severity == Severity::Error ? 1 : 2},
                     {"code", d.code},
                     {"source", kLanguageId},
                     {"message", d.message}});
  }
  return {{"jsonrpc", "2.0"},
          {"method", "textDocument/publishDiagnostics"},
          {"params", {{"uri", doc.uri()}, {"version", doc.version()}, {"diagnostics", diags}}}};
}

std::optional<std::pair<int, int>> LanguageServer::position(const json& params) const {
  const DocumentState* doc = document(params.at("textDocument").at("uri").get<std::string>());
  if (!doc) return std::nullopt;
  int line = params.at("position").at("line").get<int>() + 1;
  int character = params.at("position").at("character").get<int>();
  return std::make_pair(line, utf16_to_column(doc->line_text(line), character));
}

std::vector<json> LanguageServer::handle(const json& message) {
  std::vector<json> out;
  if (!message.is_object() || !message.contains("method")) {
    if (message.is_object() && message.contains("id")) return out;  // a response from the client
    out.push_back(error_response(nullptr, -32600, "invalid request"));
    return out;
  }
  const std::string method = message.at("method").get<std::string>();
  const bool is_request = message.contains("id");
  const json id = is_request ? message.at("id") : json();
  const json params = message.value("params", json::object());

  try {
    if (method == "initialize") {
      out.push_back(response(id, {{"capabilities", capabilities()},
                                  {"serverInfo", {{"name", kLanguageId}, {"version", kVersion}}}}));
    } else if (method == "initialized") {
    } else if (method == "shutdown") {
      shutdown_requested_ = true;
      out.push_back(response(id, nullptr));
    } else if (method == "exit") {
      exit_requested_ = true;
    } else if (method == "textDocument/didOpen") {
      const json& td = params.at("textDocument");
      std::string uri = td.at("uri").get<std::string>();
      documents_.erase(uri);
      auto [it, _] = documents_.emplace(
          uri, DocumentState(uri, td.at("text").get<std::string>(), td.value("version", 0)));
      out.push_back(publish(it->second));
    } else if (method == "textDocument/didChange") {
      std::string uri = params.at("textDocument").at("uri").get<std::string>();
      int version = params.at("textDocument").value("version", 0);
      auto it = documents_.find(uri);
      const json& changes = params.at("contentChanges");
      if (it != documents_.end() && !changes.empty() &&
          it->second.on_change(changes.back().at("text").get<std::string>(), version))
        out.push_back(publish(it->second));
    } else if (method == "textDocument/didClose") {
      std::string uri = params.at("textDocument").at("uri").get<std::string>();
      documents_.erase(uri);
      out.push_back({{"jsonrpc", "2.0"},
                     {"method", "textDocument/publishDiagnostics"},
                     {"params", {{"uri", uri}, {"diagnostics", json::array()}}}});
    } else if (method == "textDocument/completion") {
      json items = json::array();
      if (auto pos = position(params)) {
        const DocumentState* doc = document(params.at("textDocument").at("uri").get<std::string>());
        for (const auto& item : doc->completion_at(pos->first, pos->second)) {
          json j = {{"label", item.label}, {"kind", static_cast<int>(item.kind)},
                    {"insertText", item.insert_text}};
          if (!item.detail.empty()) j["detail"] = item.detail;
          if (item.kind == CompletionKind::Snippet) j["insertTextFormat"] = 2;
          items.push_back(std::move(j));
        }
      }
      out.push_back(response(id, {{"isIncomplete", false}, {"items", items}}));
    } else if (method == "textDocument/hover") {
      json result = nullptr;
      if (auto pos = position(params)) {
        const DocumentState* doc = document(params.at("textDocument").at("uri").get<std::string>());
        if (auto h = doc->hover_at(pos->first, pos->second))
          result = {{"contents", {{"kind", "markdown"}, {"value", h->markdown}}},
                    {"range", range_json(*doc, h->span)}};
      }
      out.push_back(response(id, result));
    } else if (method == "textDocument/definition") {
      json result = nullptr;
      if (auto pos = position(params)) {
        const DocumentState* doc = document(params.at("textDocument").at("uri").get<std::string>());
        if (auto span = doc->definition_at(pos->first, pos->second))
          result = {{"uri", doc->uri()}, {"range", range_json(*doc, *span)}};
      }
      out.push_back(response(id, result));
    } else if (is_request) {
      out.push_back(error_response(id, -32601, "method not found: " + method));
    }
  } catch (const json::exception& e) {
    if (is_request) out.push_back(error_response(id, -32602, std::string("invalid params: ") + e.what()));
  }
  return out;
}

std::optional<std::string> read_lsp_message(std::istream& in) {
  long long length = -1;
  std::string header;
  while (std::getline(in, header)) {
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header.empty()) {
      if (length >= 0) break;
      continue;
    }
    auto colon = header.find(':');
    if (colon == std::string::npos) continue;
    std::string name = header.substr(0, colon);
    for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (name == "content-length") {
      try {
        length = std::stoll(header.substr(colon + 1));
      } catch (const std::exception&) {
        length = -1;
      }
    }
  }
  if (!in || length < 0) return std::nullopt;
  std::string body(static_cast<size_t>(length), '\0');
  in.read(body.data(), length);
  if (in.gcount() != length) return std::nullopt;
  return body;
}

void write_lsp_message(std::ostream& out, const json& message) {
  std::string body = message.dump(-1, ' ', false, json::error_handler_t::replace);
  out << "Content-Length: " << body.size() << "\r\n\r\n" << body;
  out.flush();
}

int run_language_server(std::istream& in, std::ostream& out) {
  LanguageServer server;
  while (auto body = read_lsp_message(in)) {
    json message = json::parse(*body, nullptr, false);
    if (message.is_discarded()) {
      write_lsp_message(out, error_response(nullptr, -32700, "parse error"));
      continue;
    }
    for (const auto& reply : server.handle(message)) write_lsp_message(out, reply);
    if (server.exit_requested()) return server.exit_code();
  }
  return server.exit_code();
}

}  // namespace datadesc
