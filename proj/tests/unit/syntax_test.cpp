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

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <random>

#include "datadesc/syntax.hpp"
#include "test_util.hpp"

namespace datadesc {
namespace {

using testing::codes;
using testing::dump;
using testing::read_fixture;

const SyntaxNode* find_tag(const SyntaxNode& n, std::string_view tag) {
  if (n.tag == tag) return &n;
  for (const auto& c : n.children)
    if (const SyntaxNode* r = find_tag(c, tag)) return r;
  return nullptr;
}

TEST(Parse, MelanomaMetadata) {
  std::string src = read_fixture("melanoma.ddesc");
  auto r = parse(src);
  ASSERT_TRUE(r.tree) << dump(r.diagnostics);
  const SyntaxNode* md = r.tree->root.child("Metadata");
  ASSERT_NE(md, nullptr);
  const SyntaxNode* title = md->child("Title");
  ASSERT_NE(title, nullptr);
  EXPECT_EQ(title->leaf(NodeKind::String)->value, "2020 SIIM-ISIC Melanoma Classification ...");
  const SyntaxNode* version = md->child("Version");
  ASSERT_NE(version, nullptr);
  EXPECT_EQ(version->leaf(NodeKind::Token)->value, "v0001");
  const SyntaxNode* date = md->child("ReleaseDate");
  ASSERT_NE(date, nullptr);
  EXPECT_EQ(date->leaf(NodeKind::Date)->text, "08-10-2020");
}

TEST(Parse, EmptyInput) {
  auto r = parse("");
  EXPECT_FALSE(r.tree);
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].code, "E001");
  EXPECT_EQ(r.diagnostics[0].span.start_line, 1);
  EXPECT_EQ(r.diagnostics[0].span.start_col, 1);
  EXPECT_NE(r.diagnostics[0].message.find("expected 'Metadata:'"), std::string::npos);
}

TEST(Parse, DuplicateSection) {
  auto r = parse("Metadata: Title: \"X\" Version: v1 Metadata:");
  EXPECT_FALSE(r.tree);
  ASSERT_FALSE(r.diagnostics.empty());
  EXPECT_EQ(r.diagnostics[0].code, "E001");
  EXPECT_EQ(r.diagnostics[0].span.start_line, 1);
  EXPECT_EQ(r.diagnostics[0].span.start_col, 34);
}

TEST(Parse, SingleLineDocument) {
  auto r = parse("Metadata: Title: \"X\" Version: v1");
  ASSERT_TRUE(r.tree) << dump(r.diagnostics);
  EXPECT_EQ(r.tree->root.child("Metadata")->child("Version")->leaf(NodeKind::Token)->value, "v1");
}

TEST(Parse, UnterminatedString) {
  auto r = parse("Metadata:\n  Title: \"abc\n  Version: v1\n");
  EXPECT_FALSE(r.tree);
  ASSERT_FALSE(r.diagnostics.empty());
  EXPECT_EQ(r.diagnostics[0].code, "E002");
  EXPECT_EQ(r.diagnostics[0].span.start_line, 2);
}

TEST(Parse, MalformedLiterals) {
  auto bad_date = parse("Metadata:\n Title: \"t\"\n Version: v1\n Release Date: 31-02-2020\n");
  EXPECT_EQ(codes(bad_date.diagnostics), std::vector<std::string>{"E003"});
  auto bad_size = parse(
      "Metadata:\n Title: \"t\"\n Version: v1\nComposition:\n DataInstances:\n"
      "  Instance: a\n   Type: Record-Data\n   Size: 12x\n");
  EXPECT_EQ(codes(bad_size.diagnostics), std::vector<std::string>{"E003"});
  auto bad_pct = parse(
      "Metadata:\n Title: \"t\"\n Version: v1\nComposition:\n DataInstances:\n"
      "  Instance: a\n   Type: Record-Data\n   Size: 1\n   Attributes:\n"
      "    Attribute: x\n     OfType: Numerical\n     Statistics:\n      Completeness: abc%\n");
  EXPECT_EQ(codes(bad_pct.diagnostics), std::vector<std::string>{"E003"});
}

TEST(Parse, RecoversAtNextSection) {
  std::string src =
      "Metadata:\n Title: \"t\"\n Version: v1\n Bogus: 1\n"
      "Composition:\n Nonsense here\n"
      "Social Concerns:\n Rationale: \"r\"\n";
  auto r = parse(src);
  EXPECT_FALSE(r.tree);
  ASSERT_EQ(r.diagnostics.size(), 2u) << dump(r.diagnostics);
  EXPECT_EQ(r.diagnostics[0].span.start_line, 4);
  EXPECT_EQ(r.diagnostics[1].span.start_line, 6);
}

TEST(Parse, CaseInsensitiveKeywordsAndComments) {
  auto r = parse("// header\nmetadata:\n  TITLE: \"x\"\n  // note\n  version: 2\n");
  ASSERT_TRUE(r.tree) << dump(r.diagnostics);
}

TEST(Parse, StringEscapes) {
  auto r = parse("Metadata:\n Title: \"a \\\"q\\\" \\\\ b\"\n Version: v1\n");
  ASSERT_TRUE(r.tree) << dump(r.diagnostics);
  EXPECT_EQ(r.tree->root.child("Metadata")->child("Title")->leaf(NodeKind::String)->value,
            "a \"q\" \\ b");
}

TEST(Parse, MultiWordPhrases) {
  std::string src = read_fixture("melanoma.ddesc");
  auto r = parse(src);
  ASSERT_TRUE(r.tree);
  const SyntaxNode* gp = find_tag(r.tree->root, "GatheringProcess");
  ASSERT_NE(gp, nullptr);
  EXPECT_EQ(gp->child("Type")->leaf(NodeKind::Phrase)->value, "Manual Human Curators");
  const SyntaxNode* lp = find_tag(r.tree->root, "LabelingProcess");
  ASSERT_NE(lp, nullptr);
  EXPECT_EQ(lp->child("Type")->leaf(NodeKind::Phrase)->value, "Image & video annotations");
}

TEST(Parse, SpellingAliases) {
  const char* base =
      "Metadata:\n Title: \"t\"\n Version: v1\nComposition:\n DataInstances:\n"
      "  Instance: a\n   Type: Record-Data\n   Size: 1\n   Attributes:\n"
      "    Attribute: x\n     %s process: P\n     OfType: Categorical\n";
  for (const char* spelling : {"Labelling", "Labeling", "labeling"}) {
    char buf[512];
    std::snprintf(buf, sizeof buf, base, spelling);
    auto r = parse(buf);
    EXPECT_TRUE(r.tree) << spelling << "\n" << dump(r.diagnostics);
  }
}

TEST(Parse, Deterministic) {
  std::string src = read_fixture("melanoma.ddesc") + "\nBroken:\n";
  auto a = parse(src);
  auto b = parse(src);
  EXPECT_EQ(dump(a.diagnostics), dump(b.diagnostics));
  auto la = leaves(a.partial);
  auto lb = leaves(b.partial);
  ASSERT_EQ(la.size(), lb.size());
  for (size_t i = 0; i < la.size(); ++i) {
    EXPECT_EQ(la[i]->text, lb[i]->text);
    EXPECT_EQ(la[i]->span, lb[i]->span);
  }
}

std::string strip_insignificant(std::string_view s) {
  std::string out;
  bool line_start = true;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (line_start) {
      size_t j = i;
      while (j < s.size() && (s[j] == ' ' || s[j] == '\t')) ++j;
      if (s.compare(j, 2, "//") == 0) {
        while (j < s.size() && s[j] != '\n') ++j;
        i = j;
        continue;
      }
    }
    line_start = c == '\n';
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    ++i;
  }
  return out;
}

TEST(Parse, LeafConcatenationReproducesInput) {
  for (const auto& name : testing::corpus()) {
    std::string src = read_fixture(name);
    auto r = parse(src);
    ASSERT_TRUE(r.tree) << name << dump(r.diagnostics);
    std::string joined;
    for (const SyntaxNode* leaf : leaves(*r.tree)) joined += leaf->text;
    EXPECT_EQ(strip_insignificant(joined), strip_insignificant(src)) << name;
  }
}

void check_spans(const SyntaxNode& n, int lines) {
  EXPECT_GE(n.span.start_line, 1);
  EXPECT_GE(n.span.start_col, 1);
  EXPECT_LE(n.span.end_line, lines + 1);
  bool ordered = n.span.start_line < n.span.end_line ||
                 (n.span.start_line == n.span.end_line && n.span.start_col <= n.span.end_col);
  EXPECT_TRUE(ordered) << n.tag;
  for (const auto& c : n.children) check_spans(c, lines);
}

TEST(Parse, SpansInsideInput) {
  for (const auto& name : testing::corpus()) {
    std::string src = read_fixture(name);
    int lines = static_cast<int>(std::count(src.begin(), src.end(), '\n')) + 1;
    auto r = parse(src);
    ASSERT_TRUE(r.tree);
    check_spans(r.tree->root, lines);
  }
}

// Random truncations and byte edits never yield out-of-bounds diagnostics.
TEST(Parse, ErrorSpansWithinBounds) {
  std::string src = read_fixture("melanoma.ddesc");
  std::mt19937 rng(7);
  for (int iter = 0; iter < 300; ++iter) {
    std::string text = src;
    std::uniform_int_distribution<size_t> pos(0, text.size() - 1);
    int edits = 1 + iter % 4;
    for (int e = 0; e < edits; ++e) {
      size_t p = pos(rng);
      const char junk[] = "\":%(@[\n x9-";
      text[p] = junk[rng() % (sizeof junk - 1)];
    }
    if (iter % 5 == 0) text.resize(pos(rng));
    auto r = parse(text);
    int lines = static_cast<int>(std::count(text.begin(), text.end(), '\n')) + 1;
    for (const auto& d : r.diagnostics) {
      EXPECT_GE(d.span.start_line, 1);
      EXPECT_LE(d.span.end_line, lines) << d.message;
      EXPECT_FALSE(d.message.empty());
    }
    EXPECT_EQ(r.tree.has_value(), !has_errors(r.diagnostics));
  }
}

}  // namespace
}  // namespace datadesc
