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

#include <doctest.h>

#include <sstream>

#include "casplit/preprocess.hpp"
#include "test_util.hpp"

using namespace casplit;

namespace {

/// One-modifier fixture: "haupt" + {ziel, ader, mann} are exact analogies;
/// "hauptwein" is in the vocabulary but off-pattern.
struct PreFixture {
  EmbeddingStore store;
  NeighborIndex index;  // holds a pointer into `store`: built after it
  SplitModel model;
  InductionConfig config;

  PreFixture()
      : store(make_store()), index(NeighborIndex::build(store, IndexMode::Exact)) {
    config.t_minsupport = 2;
    config.t_rank = 1;
    config.t_cosine = 0.9;
    model = induce_prototypes(extract_candidates(store, PrefixIndex(store.words(), 4)),
                              store, index, config);
  }

  static EmbeddingStore make_store() {
    const int d = 8;
    std::vector<std::string> words = {"haupt", "ziel", "ader", "mann", "wein",
                                      "hauptziel", "hauptader", "hauptmann", "hauptwein"};
    Matrix m = Matrix::Zero(9, d);
    m(0, 5) = 1.0;
    for (int i = 0; i < 4; ++i) m(1 + i, i) = 1.0;
    Vector dir = Vector::Zero(d);
    dir[6] = 10.0;
    for (int i = 0; i < 3; ++i) m.row(5 + i) = m.row(1 + i) + dir.transpose();
    m(8, 0) = m(8, 1) = 1.0;  // hauptwein, unrelated to the pattern

    return EmbeddingStore(words, m);
  }

  PreprocessReport run(const std::string& corpus, std::string& out, std::string& manifest,
                       const SplitPolicy& policy, const FrequencyTable* freq = nullptr,
                       const std::unordered_set<std::string>* tvocab = nullptr) {
    std::istringstream in(corpus);
    std::ostringstream o, man;
    PreprocessReport r = preprocess_corpus(in, o, man, model, store, index, config,
                                           freq, policy, tvocab);
    out = o.str();
    manifest = man.str();
    return r;
  }
};

}  // namespace

TEST_CASE("split-everything policy rewrites compounds and logs a manifest") {
  PreFixture fx;
  std::string out, man;
  SplitPolicy policy;  // scope All, no backoff
  auto r = fx.run("hauptziel und hauptader\nhauptwein bleibt\n", out, man, policy);

  CHECK(out == "haupt ziel und haupt ader\nhauptwein bleibt\n");
  CHECK(man ==
        "1:0\thauptziel\thaupt ziel\n"
        "1:2\thauptader\thaupt ader\n");
  CHECK(r.tokens_seen == 5);
  CHECK(r.tokens_in_scope == 5);
  CHECK(r.tokens_split == 2);
  CHECK(r.types_split.size() == 2);
}

TEST_CASE("the manifest reconstructs the original corpus exactly") {
  PreFixture fx;
  const std::string corpus = "hauptziel hauptziel und\nhauptmann\n\nhauptwein hauptader\n";
  std::string out, man;
  SplitPolicy policy;
  auto r = fx.run(corpus, out, man, policy);
  CHECK(r.tokens_split == 4);
  CHECK(r.types_split.size() == 3);  // hauptziel counted once at type level

  std::istringstream man_in(man);
  auto entries = load_manifest(man_in);
  REQUIRE(entries.size() == 4);
  CHECK(entries[0].line == 1);
  CHECK(entries[0].token == 0);
  CHECK(entries[1].token == 1);
  CHECK(entries[0].original == "hauptziel");
  CHECK(entries[0].rendering == "haupt ziel");

  std::istringstream split_in(out);
  std::ostringstream rebuilt;
  reconstruct_corpus(split_in, entries, rebuilt);
  CHECK(rebuilt.str() == corpus);
}

TEST_CASE("preprocessing is deterministic across runs") {
  PreFixture fx;
  const std::string corpus = "hauptziel hauptader hauptmann hauptwein und\n";
  std::string out1, man1, out2, man2;
  SplitPolicy policy;
  fx.run(corpus, out1, man1, policy);
  fx.run(corpus, out2, man2, policy);
  CHECK(out1 == out2);
  CHECK(man1 == man2);
}

TEST_CASE("rare-word scope leaves frequent tokens alone") {
  PreFixture fx;
  FrequencyTable freq;
  freq.add("hauptziel", 50);  // frequent: out of scope
  freq.add("hauptader", 1);   // rare: in scope

  SplitPolicy policy;
  policy.scope = SplitPolicy::Scope::RareBelow;
  policy.count_threshold = 20;
  std::string out, man;
  auto r = fx.run("hauptziel hauptader\n", out, man, policy, &freq);
  CHECK(out == "hauptziel haupt ader\n");
  CHECK(r.tokens_in_scope == 1);
  CHECK(r.tokens_split == 1);

  // the policy needs its counts
  std::string o2, m2;
  CHECK_THROWS_AS(fx.run("hauptziel\n", o2, m2, policy, nullptr), std::invalid_argument);
}

TEST_CASE("oov scope splits only tokens missing from the translation vocabulary") {
  PreFixture fx;
  std::unordered_set<std::string> tvocab = {"hauptziel", "und"};
  SplitPolicy policy;
  policy.scope = SplitPolicy::Scope::OovOnly;
  std::string out, man;
  auto r = fx.run("hauptziel und hauptader\n", out, man, policy, nullptr, &tvocab);
  CHECK(out == "hauptziel und haupt ader\n");
  CHECK(r.tokens_in_scope == 1);

  std::string o2, m2;
  CHECK_THROWS_AS(fx.run("hauptziel\n", o2, m2, policy, nullptr, nullptr),
                  std::invalid_argument);
}

TEST_CASE("tokens split under the oov scope are a subset of those split under all") {
  PreFixture fx;
  const std::string corpus = "hauptziel hauptader hauptmann hauptwein und\n";
  std::unordered_set<std::string> tvocab = {"hauptziel"};

  SplitPolicy all;
  SplitPolicy oov;
  oov.scope = SplitPolicy::Scope::OovOnly;
  std::string out_a, man_a, out_b, man_b;
  auto ra = fx.run(corpus, out_a, man_a, all);
  auto rb = fx.run(corpus, out_b, man_b, oov, nullptr, &tvocab);
  CHECK(rb.tokens_split <= ra.tokens_split);
  for (const std::string& t : rb.types_split) {
    CHECK(ra.types_split.count(t) == 1);
  }
}

TEST_CASE("a malformed manifest line is rejected") {
  std::istringstream bad("1:0\tonly-two-fields\n");
  CHECK_THROWS_AS(load_manifest(bad), std::runtime_error);
  std::istringstream badpos("10\ta\tb c\n");
  CHECK_THROWS_AS(load_manifest(badpos), std::runtime_error);
}
