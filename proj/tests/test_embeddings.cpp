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

#include "casplit/embeddings.hpp"
#include "test_util.hpp"

using namespace casplit;
using testutil::random_store;
using testutil::write_file;

TEST_CASE("text loader accepts a well-formed file") {
  auto path = write_file("emb.txt",
                         "3 4\n"
                         "haus 1 2 3 4\n"
                         "baum 0.5 -1 0 2\n"
                         "hund -1 -2 -3 -4\n");
  EmbeddingStore store = EmbeddingStore::load(path);
  CHECK(store.size() == 3);
  CHECK(store.dim() == 4);
  CHECK(store.contains("baum"));
  CHECK((*store.vector("haus"))[2] == 3.0);
  CHECK(store.duplicates_dropped() == 0);
}

TEST_CASE("row with wrong dimension is a load failure naming the line") {
  auto path = write_file("bad.txt",
                         "3 4\n"
                         "a 1 2 3 4\n"
                         "b 1 2 3 4 5\n"
                         "c 1 2 3 4\n");
  CHECK_THROWS_WITH_AS(EmbeddingStore::load(path), doctest::Contains(":3:"), std::runtime_error);
}

TEST_CASE("malformed header and non-finite values are rejected") {
  CHECK_THROWS_AS(EmbeddingStore::load(write_file("h1.txt", "x y\na 1\n")), std::runtime_error);
  CHECK_THROWS_AS(EmbeddingStore::load(write_file("h2.txt", "1\na 1\n")), std::runtime_error);
  CHECK_THROWS_AS(EmbeddingStore::load(write_file("h3.txt", "1 2\na 1 nan\n")), std::runtime_error);
}

TEST_CASE("duplicate word keeps the first vector and is reported") {
  auto path = write_file("dup.txt",
                         "3 2\n"
                         "haus 1 0\n"
                         "haus 9 9\n"
                         "baum 0 1\n");
  EmbeddingStore store = EmbeddingStore::load(path);
  CHECK(store.size() == 2);
  CHECK(store.duplicates_dropped() == 1);
  CHECK((*store.vector("haus"))[0] == 1.0);
}

TEST_CASE("vector lookup: absence is a value") {
  EmbeddingStore store = random_store(5, 3, 7);
  CHECK(store.vector("word2").has_value());
  CHECK(!store.vector("unseen").has_value());
}

TEST_CASE("difference of stored vectors matches hand computation on a 2-d fixture") {
  EmbeddingStore store({"Ziel", "Hauptziel"}, (Matrix(2, 2) << 1.0, 2.0, 4.0, 6.0).finished());
  Vector d = *store.vector("Hauptziel") - *store.vector("Ziel");
  CHECK(d[0] == 3.0);
  CHECK(d[1] == 4.0);
}

TEST_CASE("text format round-trips bit-exact") {
  EmbeddingStore store = random_store(20, 7, 42);
  auto path = testutil::temp_path("roundtrip.txt");
  store.save(path);
  EmbeddingStore reloaded = EmbeddingStore::load(path);
  REQUIRE(reloaded.size() == store.size());
  CHECK(reloaded.words() == store.words());
  CHECK((reloaded.matrix() - store.matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("binary format round-trips through float32") {
  std::vector<std::string> words = {"eins", "zwei"};
  Matrix m(2, 3);
  m << 1.5, -0.25, 3.0, 0.0, 2.0, -8.0;  // exactly representable as float
  EmbeddingStore store(words, m);
  auto path = testutil::temp_path("roundtrip.bin");
  store.save(path, EmbeddingFormat::Binary);
  EmbeddingStore reloaded = EmbeddingStore::load(path, EmbeddingFormat::Binary);
  CHECK(reloaded.words() == words);
  CHECK((reloaded.matrix() - m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("cosine basics") {
  Vector x(3), y(3);
  x << 1, 2, 3;
  y << 4, 5, 6;
  CHECK(cosine(x, x) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cosine(x, y) == doctest::Approx(0.9746).epsilon(1e-4));  // 32/(sqrt(14)*sqrt(77))
  Vector e1(2), e2(2);
  e1 << 1, 0;
  e2 << 0, 1;
  CHECK(cosine(e1, e2) == 0.0);
  Vector zero = Vector::Zero(3);
  CHECK_THROWS_AS(cosine(x, zero), std::invalid_argument);
  CHECK_THROWS_AS(cosine(e1, x), std::invalid_argument);
}

TEST_CASE("cosine is symmetric and scale-invariant") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> scale(0.001, 1000.0);
  for (int it = 0; it < 200; ++it) {
    Vector a(10), b(10);
    for (int j = 0; j < 10; ++j) {
      a[j] = gauss(rng);
      b[j] = gauss(rng);
    }
    const double c = cosine(a, b);
    CHECK(std::abs(c - cosine(b, a)) <= 1e-9);
    CHECK(std::abs(c - cosine(Vector(scale(rng) * a), b)) <= 1e-9);
    CHECK(c >= -1.0);
    CHECK(c <= 1.0);
  }
}
