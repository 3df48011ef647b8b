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
#include <regex>
#include <sstream>

#include "test_util.hpp"

namespace datadesc {
namespace {

using testing::fixture_path;
using testing::read_fixture;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args, bool color = false, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = run_cli(args, {in, out, err, color});
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("datadesc_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(path_ / name, std::ios::binary) << content;
    return file(name);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  std::filesystem::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> human_codes(const std::string& out) {
  std::vector<std::string> codes;
  std::regex line(R"(^[^\n]*:\d+:\d+: ([EW]\d{3}) (error|warning): )");
  std::istringstream in(out);
  std::string l;
  while (std::getline(in, l)) {
    std::smatch m;
    if (std::regex_search(l, m, line)) codes.push_back(m[1]);
  }
  return codes;
}

std::vector<std::string> json_codes(const std::string& out) {
  std::vector<std::string> codes;
  nlohmann::json j = nlohmann::json::parse(out);
  for (const auto& d : j["diagnostics"]) codes.push_back(d["code"]);
  return codes;
}

TEST(Cli, CheckMelanomaPassesWithWarning) {
  CliRun r = run({"check", fixture_path("melanoma.ddesc")});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(human_codes(r.out), std::vector<std::string>{"W020"});
}

TEST(Cli, CheckDanglingReferenceFails) {
  TempDir dir;
  std::string text = read_fixture("melanoma.ddesc");
  text.replace(text.find("Labels: skinImages.benignant_malignant"), 38, "Labels: skinImages.typo");
  std::string path = dir.write("bad.ddesc", text);
  CliRun r = run({"check", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(std::regex_search(r.out, std::regex(std::regex_replace(path, std::regex(R"([.\\/])"), R"(\$&)") +
                                                  R"(:\d+:\d+: E010 error: )")))
      << r.out;
}

TEST(Cli, CheckWithDataEvaluatesRules) {
  CliRun r = run({"check", fixture_path("melanoma.ddesc"), "--data", fixture_path("skin_sample.csv")});
  EXPECT_EQ(r.code, 1);
  auto codes = human_codes(r.out);
  EXPECT_NE(std::find(codes.begin(), codes.end(), "E031"), codes.end()) << r.out;
}

TEST(Cli, CheckWithMismatchedDataReportsSchemaError) {
  TempDir dir;
  std::string csv = dir.write("other.csv", "x,y\n1,2\n");
  CliRun r = run({"check", fixture_path("melanoma.ddesc"), "--data", csv, "--instance", "skinImages"});
  EXPECT_EQ(r.code, 1);
  auto codes = human_codes(r.out);
  EXPECT_NE(std::find(codes.begin(), codes.end(), "E045"), codes.end()) << r.out;
}

TEST(Cli, DiffIdentity) {
  std::string f = fixture_path("melanoma.ddesc");
  CliRun r = run({"diff", f, f});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("no differences"), std::string::npos);
}

TEST(Cli, DiffReportsChanges) {
  TempDir dir;
  std::string text = read_fixture("melanoma.ddesc");
  text.replace(text.find("Size: 33126"), 11, "Size: 40000");
  std::string b = dir.write("b.ddesc", text);
  CliRun r = run({"diff", fixture_path("melanoma.ddesc"), b});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("~ composition/skinImages/size: 33126 -> 40000"), std::string::npos) << r.out;
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"check"}).code, 2);
  EXPECT_EQ(run({"check", "/nonexistent/file.ddesc"}).code, 2);
  EXPECT_EQ(run({"docgen", fixture_path("melanoma.ddesc"), "--format", "pdf"}).code, 2);
  EXPECT_EQ(run({"import", fixture_path("skin_sample.csv")}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, JsonOnEverySubcommand) {
  TempDir dir;
  TempDir registry;
  for (const auto& f : testing::corpus()) registry.write(f, read_fixture(f));
  std::string m = fixture_path("melanoma.ddesc");
  std::vector<std::vector<std::string>> commands = {
      {"check", m},
      {"check", m, "--data", fixture_path("skin_sample.csv")},
      {"report", m},
      {"diff", m, fixture_path("movie_reviews.ddesc")},
      {"import", fixture_path("skin_sample.csv"), "--title", "Skin", "-o", dir.file("s.ddesc")},
      {"docgen", m, "--format", "html", "-o", dir.file("m.html")},
      {"search", registry.path().string(), "issue_type=Bias"},
  };
  for (auto args : commands) {
    CliRun human = run(args);
    args.push_back("--json");
    CliRun machine = run(args);
    EXPECT_EQ(human.code, machine.code) << args[0];
    nlohmann::json j;
    ASSERT_NO_THROW(j = nlohmann::json::parse(machine.out)) << args[0] << "\n" << machine.out;
    EXPECT_TRUE(j.contains("diagnostics")) << args[0];
    EXPECT_EQ(human_codes(human.out), json_codes(machine.out)) << args[0];
  }
  std::string copy = dir.write("fmt.ddesc", read_fixture("movie_reviews.ddesc"));
  CliRun f = run({"--json", "fmt", copy});
  EXPECT_NO_THROW(nlohmann::json::parse(f.out));
}

TEST(Cli, ImportThenCheckIsClean) {
  TempDir dir;
  std::string out = dir.file("skin.ddesc");
  CliRun r = run({"import", fixture_path("skin_sample.csv"), "--title", "Skin sample", "-o", out});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  CliRun c = run({"check", out});
  EXPECT_EQ(c.code, 0) << c.out;
  EXPECT_TRUE(human_codes(c.out).empty()) << c.out;
  CliRun d = run({"check", out, "--data", fixture_path("skin_sample.csv")});
  EXPECT_EQ(d.code, 0) << d.out;
  EXPECT_TRUE(human_codes(d.out).empty()) << d.out;
}

TEST(Cli, ImportRaggedCsvFails) {
  TempDir dir;
  std::string csv = dir.write("bad.csv", "a\n1\n1,2\n");
  CliRun r = run({"import", csv, "--title", "Bad"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(human_codes(r.out), std::vector<std::string>{"E040"});
}

TEST(Cli, DocgenFormats) {
  TempDir dir;
  CliRun md = run({"docgen", fixture_path("melanoma.ddesc"), "--format", "md", "-o", dir.file("m.md")});
  EXPECT_EQ(md.code, 0);
  EXPECT_NE(slurp(dir.file("m.md")).find("| ageGroup | Categorical |"), std::string::npos);
  CliRun html = run({"docgen", fixture_path("melanoma.ddesc"), "--format", "html"});
  EXPECT_EQ(html.code, 0);
  EXPECT_NE(html.out.find("<!DOCTYPE html>"), std::string::npos);
}

TEST(Cli, SearchDirectory) {
  TempDir dir;
  for (const auto& f : testing::corpus()) dir.write(f, read_fixture(f));
  CliRun r = run({"search", dir.path().string(), "task=Image-classification", "--json"});
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["matches"].size(), 1u);
  EXPECT_EQ(j["matches"][0]["title"], "2020 SIIM-ISIC Melanoma Classification ...");
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "index.json"));
  CliRun all = run({"search", dir.path().string(), "--json"});
  EXPECT_EQ(nlohmann::json::parse(all.out)["matches"].size(), 3u);
  CliRun bad = run({"search", dir.path().string(), "bogus=1"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(human_codes(bad.out), std::vector<std::string>{"E050"});
}

TEST(Cli, FmtIsIdempotentAndKeepsHeaderComment) {
  TempDir dir;
  std::string path = dir.write("g.ddesc", read_fixture("gender_inclusive_coreference.ddesc"));
  CliRun first = run({"fmt", path});
  EXPECT_EQ(first.code, 0) << first.out;
  std::string once = slurp(path);
  EXPECT_EQ(once.rfind("// Gender Inclusive Coreference\n", 0), 0u);
  CliRun second = run({"fmt", path, "--check"});
  EXPECT_EQ(second.code, 0) << second.out;
  EXPECT_EQ(slurp(path), once);
  EXPECT_EQ(testing::load_model("gender_inclusive_coreference.ddesc"),
            analyze_document(once).model().value());
}

TEST(Cli, FmtRefusesBrokenFile) {
  TempDir dir;
  std::string path = dir.write("b.ddesc", "Metadata:\n  Title: \"unterminated\n");
  CliRun r = run({"fmt", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(slurp(path), "Metadata:\n  Title: \"unterminated\n");
}

TEST(Cli, NoColorEnvironment) {
  std::string f = fixture_path("melanoma.ddesc");
  CliRun colored = run({"check", f}, true);
  EXPECT_NE(colored.out.find("\033["), std::string::npos);
  ::setenv("DATADESC_NO_COLOR", "1", 1);
  CliRun plain = run({"check", f}, true);
  ::unsetenv("DATADESC_NO_COLOR");
  EXPECT_EQ(plain.out.find("\033["), std::string::npos);
}

TEST(Cli, LspSubcommandServesStdio) {
  std::string body = R"({"jsonrpc":"2.0","id":1,"method":"initialize","params":{}})";
  std::string exit_body = R"({"jsonrpc":"2.0","method":"exit"})";
  std::string shutdown = R"({"jsonrpc":"2.0","id":2,"method":"shutdown"})";
  std::string input;
  for (const auto& b : {body, shutdown, exit_body})
    input += "Content-Length: " + std::to_string(b.size()) + "\r\n\r\n" + b;
  CliRun r = run({"lsp"}, false, input);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"capabilities\""), std::string::npos);
}

}  // namespace
}  // namespace datadesc
