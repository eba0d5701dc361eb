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

#include <algorithm>

#include "casplit/candidates.hpp"
#include "test_util.hpp"

using namespace casplit;

namespace {

EmbeddingStore store_for(const std::vector<std::string>& vocab) {
  Matrix m(vocab.size(), 2);
  for (size_t i = 0; i < vocab.size(); ++i) {
    m(i, 0) = static_cast<double>(i + 1);
    m(i, 1) = 1.0;
  }
  return EmbeddingStore(vocab, m);
}

}  // namespace

TEST_CASE("prefix enumeration returns exactly the matching vocabulary words") {
  std::vector<std::string> vocab = {"haupt", "ziel", "hauptziel"};
  PrefixIndex pidx(vocab, 4);
  CHECK(pidx.prefixes_of("hauptziel") == std::vector<std::string>{"haupt"});
  CHECK(pidx.prefixes_of("zielhaupt") == std::vector<std::string>{"ziel"});
  CHECK(pidx.prefixes_of("abc").empty());
}

TEST_CASE("spurious prefixes are still enumerated (meaning filtering happens later)") {
  PrefixIndex pidx({"para", "dies", "paradies"}, 4);
  CHECK(pidx.prefixes_of("paradies") == std::vector<std::string>{"para"});
}

TEST_CASE("short words and the min-length floor") {
  PrefixIndex pidx({"abc", "abcd", "abcde"}, 4);
  CHECK(pidx.prefixes_of("abc").empty());           // shorter than min length
  CHECK(pidx.prefixes_of("abcd").empty());          // proper prefixes only
  CHECK(pidx.prefixes_of("abcde") == std::vector<std::string>{"abcd"});
  CHECK(pidx.prefixes_of("abcdef") == (std::vector<std::string>{"abcd", "abcde"}));
  CHECK_THROWS_AS(PrefixIndex({"x"}, 0), std::invalid_argument);
}

TEST_CASE("head variants enumerate interfix and casing combinations") {
  auto vs = head_variants("herrengarderobe", "herren");
  REQUIRE(vs.size() == 1);  // "s"/"es" do not match the following characters
  CHECK(vs[0].interfix == "");
  CHECK(vs[0].slice == "garderobe");
  CHECK(vs[0].lookup_forms == (std::vector<std::string>{"garderobe", "Garderobe"}));

  // "herr" leaves the invalid slice "engarderobe"; the "en" interfix is
  // not in the set, so only that slice is offered.
  auto vs2 = head_variants("herrengarderobe", "herr");
  REQUIRE(vs2.size() == 1);
  CHECK(vs2[0].slice == "engarderobe");

  auto vs3 = head_variants("bundesliga", "bund");
  REQUIRE(vs3.size() == 2);
  CHECK(vs3[0].interfix == "");
  CHECK(vs3[0].slice == "esliga");
  CHECK(vs3[1].interfix == "es");
  CHECK(vs3[1].slice == "liga");

  CHECK_THROWS_AS(head_variants("haus", "xyz"), std::invalid_argument);
}

TEST_CASE("candidate extraction with support filtering") {
  auto store = store_for({"haupt", "ziel", "ader", "hauptziel", "hauptader"});
  PrefixIndex pidx(store.words(), 4);
  CandidateStats stats;
  auto cands = extract_candidates(store, pidx, kDefaultInterfixes, &stats);
  REQUIRE(cands.size() == 1);
  CHECK(cands[0].modifier == "haupt");
  REQUIRE(cands[0].support.size() == 2);
  CHECK(cands[0].support[0] == SupportPair{"ader", "", "hauptader"});
  CHECK(cands[0].support[1] == SupportPair{"ziel", "", "hauptziel"});
  CHECK(stats.raw_modifiers == 1);
  CHECK(stats.mean_support == 2.0);
}

TEST_CASE("a modifier supported by a single compound is filtered out") {
  auto store = store_for({"haupt", "ziel", "hauptziel"});
  PrefixIndex pidx(store.words(), 4);
  CandidateStats stats;
  CHECK(extract_candidates(store, pidx, kDefaultInterfixes, &stats).empty());
  CHECK(stats.raw_modifiers == 1);
  CHECK(stats.retained_modifiers == 0);
}

TEST_CASE("interfix and casing variants enter the support set") {
  auto store = store_for({"bund", "liga", "Liga", "bundesliga", "wehr", "bundeswehr"});
  PrefixIndex pidx(store.words(), 4);
  auto cands = extract_candidates(store, pidx);
  REQUIRE(cands.size() == 1);
  const auto& support = cands[0].support;
  // both casings of "liga" resolve, plus "wehr"
  CHECK(std::count(support.begin(), support.end(), SupportPair{"liga", "es", "bundesliga"}) == 1);
  CHECK(std::count(support.begin(), support.end(), SupportPair{"Liga", "es", "bundesliga"}) == 1);
  CHECK(std::count(support.begin(), support.end(), SupportPair{"wehr", "es", "bundeswehr"}) == 1);
}

TEST_CASE("support pairs reconstruct their compound") {
  auto store = store_for({"bund", "Wehr", "liga", "bundesliga", "bundeswehr", "haupt",
                          "mann", "hauptmann", "ader", "hauptader"});
  PrefixIndex pidx(store.words(), 4);
  for (const auto& cand : extract_candidates(store, pidx)) {
    for (const auto& p : cand.support) {
      std::string slice = p.compound.substr(cand.modifier.size() + p.interfix.size());
      CHECK(cand.modifier + p.interfix + slice == p.compound);
      // head_surface equals the slice up to first-letter casing
      REQUIRE(slice.size() == p.head_surface.size());
      CHECK(slice.substr(1) == p.head_surface.substr(1));
      CHECK(std::tolower(slice[0]) == std::tolower(p.head_surface[0]));
      CHECK(store.contains(p.head_surface));
      CHECK(store.contains(p.compound));
    }
    CHECK(store.contains(cand.modifier));
  }
}

TEST_CASE("adding prefix-free words leaves the candidate set unchanged") {
  std::vector<std::string> base = {"haupt", "ziel", "ader", "hauptziel", "hauptader"};
  auto cands1 = extract_candidates(store_for(base), PrefixIndex(base, 4));
  std::vector<std::string> extended = base;
  for (int i = 0; i < 5; ++i) extended.push_back("zzz" + std::to_string(i) + "qqq");
  auto cands2 = extract_candidates(store_for(extended), PrefixIndex(extended, 4));
  REQUIRE(cands1.size() == cands2.size());
  for (size_t i = 0; i < cands1.size(); ++i) {
    CHECK(cands1[i].modifier == cands2[i].modifier);
    CHECK(cands1[i].support == cands2[i].support);
  }
}

TEST_CASE("candidate TSV round-trips") {
  auto store = store_for({"bund", "liga", "bundesliga", "wehr", "bundeswehr"});
  PrefixIndex pidx(store.words(), 4);
  auto cands = extract_candidates(store, pidx);
  auto path = testutil::temp_path("cands.tsv");
  save_candidates_tsv(cands, path);
  auto reloaded = load_candidates_tsv(path);
  REQUIRE(reloaded.size() == cands.size());
  for (size_t i = 0; i < cands.size(); ++i) {
    CHECK(reloaded[i].modifier == cands[i].modifier);
    CHECK(reloaded[i].support == cands[i].support);
  }
}
