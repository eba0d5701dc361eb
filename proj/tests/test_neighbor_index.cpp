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

#include "casplit/neighbor_index.hpp"
#include "test_util.hpp"

using namespace casplit;
using testutil::brute_force_neighbors;
using testutil::random_store;

TEST_CASE("exact query with k=n returns the full vocabulary in brute-force order") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    EmbeddingStore store = random_store(120, 6, seed);
    NeighborIndex index = NeighborIndex::build(store, IndexMode::Exact);
    std::mt19937_64 rng(seed + 100);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector q(6);
    for (int j = 0; j < 6; ++j) q[j] = gauss(rng);

    auto got = index.query_neighbors(q, static_cast<int>(store.size()));
    auto want = brute_force_neighbors(store, q);
    REQUIRE(got.size() == want.size());
    for (size_t i = 0; i < got.size(); ++i) CHECK(got[i].row == want[i].first);
  }
}

TEST_CASE("equal-cosine ties break by ascending row index") {
  // rows 1 and 3 are identical
  Matrix m(4, 2);
  m << 1, 0, 0, 1, -1, 0, 0, 1;
  EmbeddingStore store({"a", "b", "c", "d"}, m);
  NeighborIndex index = NeighborIndex::build(store, IndexMode::Exact);
  Vector q(2);
  q << 0, 1;
  auto got = index.query_neighbors(q, 4);
  CHECK(got[0].row == 1);
  CHECK(got[1].row == 3);
  CHECK(index.rank_of(q, "d", 4) == 2);
}

TEST_CASE("query at a cluster centroid returns that cluster first") {
  const int d = 8;
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector ca = Vector::Zero(d), cb = Vector::Zero(d);
  ca[0] = 10.0;
  cb[1] = 10.0;
  std::vector<std::string> words;
  Matrix m(40, d);
  for (int i = 0; i < 40; ++i) {
    words.push_back((i < 20 ? "a" : "b") + std::to_string(i));
    Vector noise(d);
    for (int j = 0; j < d; ++j) noise[j] = 0.1 * gauss(rng);
    m.row(i) = ((i < 20 ? ca : cb) + noise).transpose();
  }
  EmbeddingStore store(words, m);
  NeighborIndex index = NeighborIndex::build(store, IndexMode::Exact);
  for (const auto& nb : index.query_neighbors(ca, 20)) CHECK(nb.row < 20);
}

TEST_CASE("identity and over-long queries") {
  EmbeddingStore store = random_store(15, 5, 9);
  NeighborIndex index = NeighborIndex::build(store, IndexMode::Exact);
  Vector q = *store.vector("word7");
  CHECK(index.query_neighbors(q, 1)[0].row == 7);
  CHECK(index.rank_of(q, "word7", 1) == 1);
  CHECK(index.query_neighbors(q, 100).size() == 15);
  CHECK_THROWS_AS(index.rank_of(q, "nothere", 5), std::invalid_argument);
  CHECK_THROWS_AS(index.query_neighbors(Vector::Zero(5), 3), std::invalid_argument);
}

TEST_CASE("build rejects bad parameters") {
  EmbeddingStore store = random_store(10, 4, 1);
  CHECK_THROWS_AS(NeighborIndex::build(store, IndexMode::Approximate, {.tree_count = 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(NeighborIndex::build(store, IndexMode::Approximate,
                                       {.tree_count = 2, .search_breadth = 0}),
                  std::invalid_argument);
}

TEST_CASE("synthetic analogy: exact offset lands at rank 1") {
  Matrix m(4, 3);
  Vector owner(3), dir(3);
  owner << 1, 0, 0;
  dir << 0, 2, 0;
  m.row(0) = owner.transpose();
  m.row(1) = (owner + dir).transpose();  // dogowner
  m.row(2) << 0, 0, 5;
  m.row(3) << -3, 0, 0;
  EmbeddingStore store({"owner", "dogowner", "x", "y"}, m);
  NeighborIndex index = NeighborIndex::build(store, IndexMode::Exact);
  CHECK(index.rank_of(owner + dir, "dogowner", 1) == 1);
}

TEST_CASE("rank_of is consistent with query_neighbors") {
  EmbeddingStore store = random_store(60, 5, 21);
  NeighborIndex index = NeighborIndex::build(store, IndexMode::Exact);
  Vector q = 0.5 * (*store.vector("word3") + *store.vector("word14"));
  auto list = index.query_neighbors(q, 60);
  for (int r = 1; r <= 60; r += 7) {
    const std::string& w = store.words()[list[r - 1].row];
    CHECK(index.rank_of(q, w, r) == r);
    if (r > 1) CHECK(!index.rank_of(q, w, r - 1).has_value());
  }
}

TEST_CASE("approximate recall@10 is high with generous breadth and monotone in breadth") {
  EmbeddingStore store = random_store(1000, 16, 5);
  NeighborIndex exact = NeighborIndex::build(store, IndexMode::Exact);
  std::mt19937_64 rng(99);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<Vector> queries;
  for (int t = 0; t < 20; ++t) {
    Vector q(16);
    for (int j = 0; j < 16; ++j) q[j] = gauss(rng);
    queries.push_back(q);
  }
  auto recall_at_10 = [&](const NeighborIndex& idx) {
    int hits = 0;
    for (const Vector& q : queries) {
      auto truth = exact.query_neighbors(q, 10);
      auto approx = idx.query_neighbors(q, 10);
      for (const auto& t : truth) {
        for (const auto& a : approx) {
          if (a.row == t.row) {
            ++hits;
            break;
          }
        }
      }
    }
    return hits / (10.0 * queries.size());
  };

  double prev = -1.0;
  for (int breadth : {32, 128, 512, 2048}) {
    NeighborIndex approx = NeighborIndex::build(
        store, IndexMode::Approximate, {.tree_count = 8, .search_breadth = breadth, .seed = 7});
    double r = recall_at_10(approx);
    CHECK(r >= prev);
    prev = r;
    if (breadth == 2048) CHECK(r >= 0.9);
  }
}

TEST_CASE("approximate rank can disagree with exact; disagreement rate is measured") {
  EmbeddingStore store = random_store(500, 12, 31);
  NeighborIndex exact = NeighborIndex::build(store, IndexMode::Exact);
  NeighborIndex approx = NeighborIndex::build(
      store, IndexMode::Approximate, {.tree_count = 1, .search_breadth = 24, .seed = 3});
  std::mt19937_64 rng(8);
  std::normal_distribution<double> gauss(0.0, 1.0);
  int disagreements = 0, total = 0;
  for (int t = 0; t < 50; ++t) {
    Vector q(12);
    for (int j = 0; j < 12; ++j) q[j] = gauss(rng);
    const std::string& target = store.words()[t * 7 % 500];
    auto re = exact.rank_of(q, target, 20);
    auto ra = approx.rank_of(q, target, 20);
    ++total;
    if (re != ra) ++disagreements;
  }
  INFO("approximate/exact rank disagreements: ", disagreements, "/", total);
  CHECK(disagreements > 0);  // small breadth must actually be lossy
}
