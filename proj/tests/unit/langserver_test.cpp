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

#include "datadesc/langserver.hpp"

#include <sstream>

#include "datadesc/printer.hpp"
#include "generators.hpp"
#include "test_util.hpp"

namespace datadesc {
namespace {

using testing::read_fixture;

std::vector<std::string> labels_of(const std::vector<CompletionItem>& items) {
  std::vector<std::string> out;
  for (const auto& i : items) out.push_back(i.label);
  return out;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

// 1-based line and code-point column of the first occurrence of `needle`.
std::pair<int, int> locate(const std::string& text, const std::string& needle) {
  size_t at = text.find(needle);
  EXPECT_NE(at, std::string::npos) << needle;
  int line = 1, col = 1;
  for (size_t i = 0; i < at; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
      ++col;
    }
  }
  return {line, col};
}

std::string replace_first(std::string text, const std::string& from, const std::string& to) {
  size_t at = text.find(from);
  EXPECT_NE(at, std::string::npos) << from;
  return text.replace(at, from.size(), to);
}

bool has_code_on_line(const std::vector<Diagnostic>& ds, const std::string& code, int line) {
  for (const auto& d : ds)
    if (d.code == code && d.span.start_line == line) return true;
  return false;
}

TEST(DocumentState, LiveDanglingReferenceAndRecovery) {
  std::string text = read_fixture("melanoma.ddesc");
  DocumentState doc("file:///m.ddesc", text, 1);
  EXPECT_FALSE(has_errors(doc.diagnostics())) << testing::dump(doc.diagnostics());

  std::string broken = replace_first(text, "Labels: skinImages.benignant_malignant", "Labels: skinImages.typo");
  ASSERT_TRUE(doc.on_change(broken, 2));
  int line = locate(broken, "Labels: skinImages.typo").first;
  EXPECT_TRUE(has_code_on_line(doc.diagnostics(), "E010", line)) << testing::dump(doc.diagnostics());

  ASSERT_TRUE(doc.on_change(text, 3));
  EXPECT_EQ(std::count_if(doc.diagnostics().begin(), doc.diagnostics().end(),
                          [](const Diagnostic& d) { return d.code == "E010"; }),
            0);
}

TEST(DocumentState, StaleVersionIgnored) {
  std::string text = read_fixture("melanoma.ddesc");
  DocumentState doc("file:///m.ddesc", text, 5);
  auto before = doc.diagnostics();
  EXPECT_FALSE(doc.on_change("garbage", 4));
  EXPECT_FALSE(doc.on_change("garbage", 5));
  EXPECT_EQ(doc.text(), text);
  EXPECT_EQ(doc.version(), 5);
  EXPECT_EQ(doc.diagnostics(), before);
}

TEST(DocumentState, BatchParity) {
  testgen::Gen g(77);
  std::vector<std::string> texts;
  for (const auto& f : testing::corpus()) texts.push_back(read_fixture(f));
  for (int i = 0; i < 50; ++i) {
    std::string t = pretty_print(testgen::random_model(g));
    // Damage some documents so parse and resolution errors are covered.
    if (i % 3 == 1 && t.size() > 10) t.erase(static_cast<size_t>(g.range(0, static_cast<int>(t.size()) - 5)), 3);
    texts.push_back(t);
  }
  int version = 0;
  DocumentState doc("file:///p.ddesc", "", version);
  for (const auto& t : texts) {
    ASSERT_TRUE(doc.on_change(t, ++version));
    EXPECT_EQ(doc.diagnostics(), analyze_document(t).diagnostics);
  }
}

TEST(Completion, LabellingProcessNames) {
  std::string text = read_fixture("melanoma.ddesc");
  std::string edited = replace_first(text, "Labelling process: DiagnosisLabel", "Labelling process: ");
  DocumentState doc("file:///m.ddesc", edited, 1);
  auto [line, col] = locate(edited, "Labelling process: ");
  auto labels = labels_of(doc.completion_at(line, col + 19));
  EXPECT_EQ(labels, std::vector<std::string>{"DiagnosisLabel"});
}

TEST(Completion, OfTypeExactlyTwo) {
  std::string text = read_fixture("melanoma.ddesc");
  std::string edited = replace_first(text, "OfType: Categorical", "OfType: ");
  DocumentState doc("file:///m.ddesc", edited, 1);
  auto [line, col] = locate(edited, "OfType: ");
  EXPECT_EQ(labels_of(doc.completion_at(line, col + 8)),
            (std::vector<std::string>{"Categorical", "Numerical"}));
}

TEST(Completion, EmptyDocumentOffersMetadataSnippet) {
  DocumentState doc("file:///e.ddesc", "", 1);
  auto items = doc.completion_at(1, 1);
  auto it = std::find_if(items.begin(), items.end(), [](const CompletionItem& i) { return i.label == "Metadata:"; });
  ASSERT_NE(it, items.end());
  EXPECT_EQ(it->kind, CompletionKind::Snippet);
  EXPECT_NE(it->insert_text.find("Title:"), std::string::npos);
}

TEST(Completion, AlphabeticalAndBlockAware) {
  std::string text = read_fixture("melanoma.ddesc");
  std::string edited = replace_first(text, "      Description: \"Skin images", "      \n      Description: \"Skin images");
  DocumentState doc("file:///m.ddesc", edited, 1);
  int line = locate(edited, "      \n      Description: \"Skin images").first;
  auto labels = labels_of(doc.completion_at(line, 7));
  EXPECT_TRUE(std::is_sorted(labels.begin(), labels.end()));
  EXPECT_TRUE(contains(labels, "Size:"));
  EXPECT_TRUE(contains(labels, "Attributes:"));
  EXPECT_FALSE(contains(labels, "Metadata:"));  // already present
}

TEST(Completion, RelatedAttributesQualified) {
  std::string text = read_fixture("melanoma.ddesc");
  std::string edited = replace_first(text, "Related Attributes: ImageId", "Related Attributes: ");
  DocumentState doc("file:///m.ddesc", edited, 1);
  auto [line, col] = locate(edited, "Related Attributes: ");
  auto labels = labels_of(doc.completion_at(line, col + 20));
  EXPECT_EQ(labels, (std::vector<std::string>{"skinImages.ImageId", "skinImages.ageGroup",
                                              "skinImages.benignant_malignant"}));
}

// Inserting any offered name must not produce a resolution error.
TEST(Completion, OfferedNamesResolve) {
  testgen::Gen g(2024);
  const std::vector<std::string> keywords = {"Labelling process: ", "Labels: ", "Social Issues: ",
                                             "Related Attributes: "};
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    std::string text = pretty_print(testgen::random_model(g));
    for (const auto& kw : keywords) {
      size_t at = text.find(kw);
      if (at == std::string::npos) continue;
      size_t eol = text.find('\n', at);
      std::string blank = text.substr(0, at + kw.size()) + text.substr(eol);
      DocumentState doc("file:///r.ddesc", blank, 1);
      auto [line, col] = locate(blank, kw);
      for (const auto& item : doc.completion_at(line, col + static_cast<int>(kw.size()))) {
        std::string filled = blank.substr(0, at + kw.size()) + item.insert_text + blank.substr(at + kw.size());
        auto ds = analyze_document(filled).diagnostics;
        EXPECT_FALSE(has_code_on_line(ds, "E010", line) || has_code_on_line(ds, "E012", line))
            << kw << item.label << "\n" << testing::dump(ds);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(Definition, LabellingProcessReference) {
  std::string text = read_fixture("melanoma.ddesc");
  DocumentState doc("file:///m.ddesc", text, 1);
  auto [line, col] = locate(text, "Labelling process: DiagnosisLabel");
  auto span = doc.definition_at(line, col + 22);
  ASSERT_TRUE(span.has_value());
  auto [dline, dcol] = locate(text, "Process: DiagnosisLabel");
  EXPECT_EQ(span->start_line, dline);
  EXPECT_EQ(span->start_col, dcol);
  EXPECT_EQ(span->end_line, dline);
  EXPECT_EQ(span->end_col, dcol + static_cast<int>(std::string("Process: DiagnosisLabel").size()));
}

TEST(Definition, KeywordAndUnresolvedAreAbsent) {
  std::string text = read_fixture("melanoma.ddesc");
  DocumentState doc("file:///m.ddesc", text, 1);
  auto [line, col] = locate(text, "Labelling process: DiagnosisLabel");
  EXPECT_FALSE(doc.definition_at(line, col + 2).has_value());
  std::string broken = replace_first(text, "Labelling process: DiagnosisLabel", "Labelling process: Nowhere");
  DocumentState bad("file:///m.ddesc", broken, 1);
  EXPECT_FALSE(bad.definition_at(line, col + 22).has_value());
}

TEST(Hover, ShowsCategoryAndDescription) {
  std::string text = read_fixture("melanoma.ddesc");
  DocumentState doc("file:///m.ddesc", text, 1);
  auto [line, col] = locate(text, "Labelling process: DiagnosisLabel");
  auto h = doc.hover_at(line, col + 22);
  ASSERT_TRUE(h.has_value());
  EXPECT_NE(h->markdown.find("labeling process"), std::string::npos);
  EXPECT_NE(h->markdown.find("Medical staff visualizing images"), std::string::npos);
  EXPECT_FALSE(doc.hover_at(line, col + 2).has_value());
}

TEST(Positions, Utf16Conversion) {
  std::string line = "a\xC3\xA9\xF0\x9F\x98\x80z";  // a, e-acute, emoji, z
  EXPECT_EQ(column_to_utf16(line, 1), 0);
  EXPECT_EQ(column_to_utf16(line, 3), 2);
  EXPECT_EQ(column_to_utf16(line, 4), 4);
  EXPECT_EQ(column_to_utf16(line, 5), 5);
  EXPECT_EQ(utf16_to_column(line, 4), 4);
  EXPECT_EQ(utf16_to_column(line, 5), 5);
  for (int c = 1; c <= 5; ++c) EXPECT_EQ(utf16_to_column(line, column_to_utf16(line, c)), c);
}

nlohmann::json request(int id, const std::string& method, nlohmann::json params) {
  return {{"jsonrpc", "2.0"}, {"id", id}, {"method", method}, {"params", std::move(params)}};
}

nlohmann::json notification(const std::string& method, nlohmann::json params) {
  return {{"jsonrpc", "2.0"}, {"method", method}, {"params", std::move(params)}};
}

TEST(LanguageServer, Session) {
  std::string text = read_fixture("melanoma.ddesc");
  std::string uri = "file:///melanoma.ddesc";
  std::ostringstream in;
  write_lsp_message(in, request(1, "initialize", {{"capabilities", nlohmann::json::object()}}));
  write_lsp_message(in, notification("initialized", nlohmann::json::object()));
  write_lsp_message(in, notification("textDocument/didOpen",
                                     {{"textDocument", {{"uri", uri}, {"languageId", "datadesc"},
                                                        {"version", 1}, {"text", text}}}}));
  auto [line, col] = locate(text, "Labelling process: DiagnosisLabel");
  nlohmann::json pos = {{"textDocument", {{"uri", uri}}},
                        {"position", {{"line", line - 1}, {"character", col - 1 + 22}}}};
  write_lsp_message(in, request(2, "textDocument/definition", pos));
  write_lsp_message(in, request(3, "textDocument/hover", pos));
  write_lsp_message(in, request(4, "textDocument/completion",
                                {{"textDocument", {{"uri", uri}}},
                                 {"position", {{"line", line - 1}, {"character", col - 1 + 19}}}}));
  write_lsp_message(in, notification("textDocument/didChange",
                                     {{"textDocument", {{"uri", uri}, {"version", 2}}},
                                      {"contentChanges", {{{"text", "Metadata:\n  Title: \"x\"\n"}}}}}));
  write_lsp_message(in, request(5, "bogus/method", nlohmann::json::object()));
  write_lsp_message(in, request(6, "shutdown", nullptr));
  write_lsp_message(in, notification("exit", nullptr));

  std::istringstream input(in.str());
  std::ostringstream output;
  EXPECT_EQ(run_language_server(input, output), 0);

  std::istringstream replies(output.str());
  std::vector<nlohmann::json> msgs;
  while (auto body = read_lsp_message(replies)) msgs.push_back(nlohmann::json::parse(*body));
  ASSERT_EQ(msgs.size(), 8u);
  EXPECT_EQ(msgs[0]["id"], 1);
  EXPECT_TRUE(msgs[0]["result"]["capabilities"]["hoverProvider"].get<bool>());
  EXPECT_EQ(msgs[1]["method"], "textDocument/publishDiagnostics");
  bool has_w020 = false;
  for (const auto& d : msgs[1]["params"]["diagnostics"]) has_w020 |= d["code"] == "W020";
  EXPECT_TRUE(has_w020);
  auto [dline, dcol] = locate(text, "Process: DiagnosisLabel");
  EXPECT_EQ(msgs[2]["result"]["range"]["start"]["line"], dline - 1);
  EXPECT_EQ(msgs[2]["result"]["range"]["start"]["character"], dcol - 1);
  EXPECT_EQ(msgs[2]["result"]["uri"], uri);
  EXPECT_EQ(msgs[3]["result"]["contents"]["kind"], "markdown");
  EXPECT_EQ(msgs[4]["result"]["items"][0]["label"], "DiagnosisLabel");
  EXPECT_EQ(msgs[5]["method"], "textDocument/publishDiagnostics");
  EXPECT_EQ(msgs[5]["params"]["version"], 2);
  EXPECT_EQ(msgs[6]["error"]["code"], -32601);
  EXPECT_EQ(msgs[7]["id"], 6);
}

TEST(LanguageServer, ExitWithoutShutdownFails) {
  std::ostringstream in;
  write_lsp_message(in, notification("exit", nullptr));
  std::istringstream input(in.str());
  std::ostringstream output;
  EXPECT_EQ(run_language_server(input, output), 1);
}

TEST(LanguageServer, MalformedJson) {
  std::string garbage = "{not json";
  std::istringstream input("Content-Length: " + std::to_string(garbage.size()) + "\r\n\r\n" + garbage);
  std::ostringstream output;
  run_language_server(input, output);
  std::istringstream replies(output.str());
  auto body = read_lsp_message(replies);
  ASSERT_TRUE(body.has_value());
  EXPECT_EQ(nlohmann::json::parse(*body)["error"]["code"], -32700);
}

}  // namespace
}  // namespace datadesc
