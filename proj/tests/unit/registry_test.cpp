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

#include "datadesc/registry.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <thread>

#include "generators.hpp"
#include "test_util.hpp"

namespace datadesc {
namespace {

using testing::corpus;
using testing::load_model;

// Direct walk over the model, independent of extract_index_entry.
std::vector<std::string> oracle_values(const DatasetDescription& m, QueryField f) {
  std::vector<std::string> out;
  switch (f) {
    case QueryField::Tag: out = m.metadata.tags; break;
    case QueryField::Task: out = m.metadata.description.tasks; break;
    case QueryField::Category: out = m.metadata.categories; break;
    case QueryField::License: out = m.metadata.licenses; break;
    case QueryField::InstanceType:
      if (m.composition)
        for (const auto& i : m.composition->instances) out.emplace_back(to_string(i.instance_type));
      break;
    case QueryField::AttributeType:
      if (m.composition)
        for (const auto& i : m.composition->instances)
          for (const auto& a : i.attributes) out.emplace_back(to_string(a.attr_type));
      break;
    case QueryField::IssueType:
      if (m.social_concerns)
        for (const auto& i : m.social_concerns->issues) {
          out.push_back(issue_type_text(i.issue_type));
          if (i.issue_type.kind == IssueKind::Other) out.push_back("Other");
        }
      break;
    case QueryField::Country:
      if (m.provenance) {
        auto add = [&](const std::optional<Demographics>& d) {
          if (d) out.insert(out.end(), d->countries.begin(), d->countries.end());
        };
        for (const auto& g : m.provenance->gathering) add(g.demographics);
        for (const auto& l : m.provenance->labeling) {
          add(l.demographics);
          if (l.team) add(l.team->demographics);
        }
      }
      break;
    case QueryField::TeamType:
      if (m.provenance)
        for (const auto& l : m.provenance->labeling)
          if (l.team) out.emplace_back(to_string(l.team->team_type));
      break;
    case QueryField::MinSize: break;
  }
  return out;
}

std::string fold(std::string s, bool enum_like) {
  std::string out;
  for (char c : s) {
    char l = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (enum_like && (l == '-' || l == '_' || l == ' ')) continue;
    out += l;
  }
  return out;
}

bool oracle_clause(const DatasetDescription& m, const Clause& c) {
  if (c.field == QueryField::MinSize) {
    long long total = 0;
    if (m.composition)
      for (const auto& i : m.composition->instances) total += i.size;
    return total >= c.number;
  }
  bool enum_like = c.field == QueryField::InstanceType || c.field == QueryField::AttributeType ||
                   c.field == QueryField::IssueType || c.field == QueryField::TeamType;
  bool found = false;
  for (const auto& v : oracle_values(m, c.field))
    if (fold(v, enum_like) == fold(c.value, enum_like)) found = true;
  return c.op == QueryOp::Eq ? found : !found;
}

std::vector<std::string> oracle_search(const std::vector<DatasetDescription>& models, const Query& q) {
  std::vector<std::pair<std::string, std::string>> hits;
  for (const auto& m : models)
    if (std::all_of(q.clauses.begin(), q.clauses.end(), [&](const Clause& c) { return oracle_clause(m, c); }))
      hits.emplace_back(m.metadata.title, m.metadata.unique_id);
  std::sort(hits.begin(), hits.end());
  std::vector<std::string> ids;
  for (const auto& h : hits) ids.push_back(h.second);
  return ids;
}

std::vector<std::string> ids_of(const SearchResult& r) {
  std::vector<std::string> out;
  for (const auto& m : r.matches) out.push_back(m.dataset_id);
  return out;
}

std::vector<DatasetDescription> corpus_models() {
  std::vector<DatasetDescription> out;
  for (const auto& f : corpus()) out.push_back(load_model(f));
  return out;
}

struct QueryGen {
  std::mt19937 rng;
  std::vector<std::pair<QueryField, std::string>> pool;

  explicit QueryGen(unsigned seed, const std::vector<DatasetDescription>& models) : rng(seed) {
    const QueryField fields[] = {QueryField::Tag, QueryField::Task, QueryField::Category,
                                 QueryField::License, QueryField::InstanceType,
                                 QueryField::AttributeType, QueryField::IssueType,
                                 QueryField::Country, QueryField::TeamType};
    for (const auto& m : models)
      for (auto f : fields)
        for (const auto& v : oracle_values(m, f)) pool.emplace_back(f, v);
    for (auto f : fields) pool.emplace_back(f, "nothing-matches-this");
  }

  int range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  std::string mangle_case(std::string s) {
    for (auto& c : s)
      if (range(0, 1)) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
  }

  std::string clause_text() {
    if (range(0, 5) == 0) return "min_size >= " + std::to_string(range(0, 12) * 1000);
    auto [f, v] = pool[static_cast<size_t>(range(0, static_cast<int>(pool.size()) - 1))];
    std::string field(to_string(f));
    std::string op = range(0, 3) == 0 ? "!=" : "=";
    std::string sp = range(0, 1) ? " " : "";
    return mangle_case(field) + sp + op + sp + "\"" + mangle_case(v) + "\"";
  }

  std::string query_text(int max_clauses) {
    int n = range(0, max_clauses);
    std::string out;
    for (int i = 0; i < n; ++i) {
      if (i) out += range(0, 1) ? " AND " : "  and  ";
      out += clause_text();
    }
    return out;
  }
};

TEST(ParseQuery, TwoClauses) {
  Query q = parse_query("tag=Melanoma AND min_size>=10000");
  ASSERT_EQ(q.clauses.size(), 2u);
  EXPECT_EQ(q.clauses[0], (Clause{QueryField::Tag, QueryOp::Eq, "Melanoma", 0}));
  EXPECT_EQ(q.clauses[1], (Clause{QueryField::MinSize, QueryOp::Gte, "10000", 10000}));
}

TEST(ParseQuery, EmptyIsMatchAll) {
  EXPECT_TRUE(parse_query("").clauses.empty());
  EXPECT_TRUE(parse_query("   ").clauses.empty());
}

TEST(ParseQuery, WhitespaceAndCaseInsensitive) {
  Query a = parse_query("tag=Melanoma AND min_size>=10000");
  Query b = parse_query("  TAG =  Melanoma   and\tMin_Size >= 10000 ");
  EXPECT_EQ(a.clauses, b.clauses);
}

TEST(ParseQuery, QuotedValues) {
  Query q = parse_query("license=\"CC BY-NC 4.0\" AND tag=\"R AND D\"");
  ASSERT_EQ(q.clauses.size(), 2u);
  EXPECT_EQ(q.clauses[0].value, "CC BY-NC 4.0");
  EXPECT_EQ(q.clauses[1].value, "R AND D");
}

std::string error_code(const std::string& text) {
  try {
    parse_query(text);
  } catch (const QueryError& e) {
    return e.diagnostic().code;
  }
  return "";
}

TEST(ParseQuery, Errors) {
  EXPECT_EQ(error_code("bogus=1"), "E050");
  EXPECT_EQ(error_code("tag"), "E051");
  EXPECT_EQ(error_code("tag="), "E051");
  EXPECT_EQ(error_code("tag>=3"), "E051");
  EXPECT_EQ(error_code("min_size=3"), "E051");
  EXPECT_EQ(error_code("min_size>=-3"), "E051");
  EXPECT_EQ(error_code("min_size>=ten"), "E051");
  EXPECT_EQ(error_code("tag=a AND"), "E051");
  EXPECT_EQ(error_code("AND tag=a"), "E051");
  EXPECT_EQ(error_code("=x"), "E051");
  EXPECT_EQ(error_code("tag=\"open"), "E051");
}

TEST(ParseQuery, ClauseLimit) {
  std::string text;
  for (size_t i = 0; i < kMaxQueryClauses; ++i) text += (i ? " AND " : "") + std::string("tag=x");
  EXPECT_EQ(parse_query(text).clauses.size(), kMaxQueryClauses);
  EXPECT_EQ(error_code(text + " AND tag=y"), "E051");
}

TEST(Registry, IdFromTitleAndVersion) {
  Registry r;
  auto m = load_model("melanoma.ddesc");
  EXPECT_EQ(r.index_add(m), default_unique_id(m.metadata.title, m.metadata.version));
}

TEST(Registry, ReAddReplaces) {
  Registry r;
  auto m = load_model("melanoma.ddesc");
  r.index_add(m);
  r.index_add(m);
  EXPECT_EQ(r.size(), 1u);
  m.metadata.tags.push_back("Extra");
  r.index_add(m);
  EXPECT_EQ(r.size(), 1u);
  EXPECT_EQ(ids_of(r.search(parse_query("tag=extra"))).size(), 1u);
}

class CorpusRegistry : public ::testing::Test {
 protected:
  void SetUp() override {
    models = corpus_models();
    for (const auto& m : models) registry.index_add(m);
  }
  std::string id_of(size_t i) const { return models[i].metadata.unique_id; }
  std::vector<DatasetDescription> models;
  Registry registry;
};

TEST_F(CorpusRegistry, ThreeDistinctIds) { EXPECT_EQ(registry.size(), 3u); }

TEST_F(CorpusRegistry, TaskImageClassification) {
  EXPECT_EQ(ids_of(registry.search(parse_query("task=Image-classification"))),
            std::vector<std::string>{id_of(0)});
}

TEST_F(CorpusRegistry, IssueTypeBias) {
  auto got = ids_of(registry.search(parse_query("issue_type=Bias")));
  std::sort(got.begin(), got.end());
  std::vector<std::string> want = {id_of(0), id_of(1)};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(got, want);
}

TEST_F(CorpusRegistry, EmptyQueryMatchesAll) {
  auto r = registry.search(parse_query(""));
  EXPECT_EQ(r.matches.size(), 3u);
  for (size_t i = 1; i < r.matches.size(); ++i) EXPECT_LE(r.matches[i - 1].title, r.matches[i].title);
}

TEST_F(CorpusRegistry, CaseInsensitive) {
  EXPECT_EQ(ids_of(registry.search(parse_query("TASK=image-CLASSIFICATION"))),
            std::vector<std::string>{id_of(0)});
  EXPECT_EQ(ids_of(registry.search(parse_query("instance_type=record data"))).size(),
            ids_of(registry.search(parse_query("instance_type=Record-Data"))).size());
}

TEST_F(CorpusRegistry, MatchedClausesCountsClauses) {
  auto r = registry.search(parse_query("issue_type=Bias AND min_size>=0"));
  for (const auto& m : r.matches) EXPECT_EQ(m.matched_clauses, 2);
}

TEST_F(CorpusRegistry, OracleEquivalenceFiftyQueries) {
  QueryGen gen(20261016, models);
  for (int i = 0; i < 50; ++i) {
    std::string text = gen.query_text(4);
    Query q = parse_query(text);
    EXPECT_EQ(ids_of(registry.search(q)), oracle_search(models, q)) << text;
  }
}

TEST_F(CorpusRegistry, MonotoneUnderAddedClauses) {
  QueryGen gen(7, models);
  for (int i = 0; i < 100; ++i) {
    Query q = parse_query(gen.query_text(3));
    auto before = ids_of(registry.search(q));
    q.clauses.push_back(parse_query(gen.clause_text()).clauses[0]);
    auto after = ids_of(registry.search(q));
    std::set<std::string> b(before.begin(), before.end());
    for (const auto& id : after) EXPECT_TRUE(b.count(id)) << id;
    EXPECT_LE(after.size(), before.size());
  }
}

TEST(Registry, OracleEquivalenceRandomModels) {
  testgen::Gen g(99);
  std::vector<DatasetDescription> models;
  Registry r;
  for (int i = 0; i < 30; ++i) {
    auto m = testgen::random_model(g);
    m.metadata.unique_id = "ds" + std::to_string(i);
    models.push_back(m);
    r.index_add(m);
  }
  QueryGen gen(3, models);
  for (int i = 0; i < 200; ++i) {
    Query q = parse_query(gen.query_text(3));
    EXPECT_EQ(ids_of(r.search(q)), oracle_search(models, q));
  }
}

TEST(Registry, ConcurrentReadersAndWriters) {
  auto models = corpus_models();
  Registry r;
  for (const auto& m : models) r.index_add(m);
  Query q = parse_query("");
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t)
    threads.emplace_back([&] {
      for (int i = 0; i < 200; ++i) EXPECT_EQ(r.search(q).matches.size(), 3u);
    });
  threads.emplace_back([&] {
    for (int i = 0; i < 200; ++i) r.index_add(models[static_cast<size_t>(i % 3)]);
  });
  for (auto& t : threads) t.join();
  EXPECT_EQ(r.size(), 3u);
}

TEST(Registry, DirectoryRoundTrip) {
  auto dir = std::filesystem::temp_directory_path() / "datadesc_registry_test";
  std::filesystem::remove_all(dir);
  auto models = corpus_models();
  Registry r;
  for (const auto& m : models) r.index_add(m);
  r.save_directory(dir);
  EXPECT_TRUE(std::filesystem::exists(dir / "index.json"));
  for (const auto& m : models)
    EXPECT_TRUE(std::filesystem::exists(dir / registry_file_name(m.metadata.unique_id)));

  std::filesystem::remove(dir / "index.json");
  Registry reloaded;
  auto problems = reloaded.load_directory(dir);
  EXPECT_TRUE(problems.empty());
  EXPECT_EQ(reloaded.size(), 3u);
  EXPECT_EQ(reloaded.index_json(), r.index_json());
  for (const auto& m : models) EXPECT_EQ(reloaded.get(m.metadata.unique_id), m);

  std::ofstream(dir / "broken.ddesc") << "Metadata:\n  Title \"x\n";
  Registry partial;
  problems = partial.load_directory(dir);
  EXPECT_EQ(problems.size(), 1u);
  EXPECT_EQ(partial.size(), 3u);
  std::filesystem::remove_all(dir);
}

TEST(Registry, FileNamesAreSafe) {
  EXPECT_EQ(registry_file_name("melanoma-v0001"), "melanoma-v0001.ddesc");
  EXPECT_EQ(registry_file_name("a/b"), "a%2Fb.ddesc");
  EXPECT_EQ(registry_file_name(".."), "%2E..ddesc");
}

}  // namespace
}  // namespace datadesc
