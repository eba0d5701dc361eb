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

#include "casplit/embeddings.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

namespace casplit {

namespace {

[[noreturn]] void load_error(const std::string& path, long line, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

EmbeddingStore::EmbeddingStore(std::vector<std::string> words, Matrix matrix)
    : words_(std::move(words)), matrix_(std::move(matrix)) {
  if (words_.empty() || static_cast<Eigen::Index>(words_.size()) != matrix_.rows()) {
    throw std::invalid_argument("embedding store: word count does not match matrix rows");
  }
  index_.reserve(words_.size());
  for (Eigen::Index i = 0; i < matrix_.rows(); ++i) {
    if (!index_.emplace(words_[i], i).second) {
      throw std::invalid_argument("embedding store: duplicate word '" + words_[i] + "'");
    }
  }
}

std::optional<Eigen::Index> EmbeddingStore::row_of(const std::string& word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<Vector> EmbeddingStore::vector(const std::string& word) const {
  auto row = row_of(word);
  if (!row) return std::nullopt;
  return matrix_.row(*row).transpose();
}

EmbeddingStore EmbeddingStore::load(const std::string& path, EmbeddingFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open embedding file: " + path);

  std::string header;
  if (!std::getline(in, header)) load_error(path, 1, "missing header");
  long n = 0, d = 0;
  {
    std::istringstream hs(header);
    std::string extra;
    if (!(hs >> n >> d) || (hs >> extra) || n < 1 || d < 1) {
      load_error(path, 1, "malformed header, expected 'n d'");
    }
  }

  std::vector<std::string> words;
  Matrix matrix(n, d);
  words.reserve(n);
  int dropped = 0;
  std::unordered_map<std::string, Eigen::Index> seen;
  Eigen::Index out = 0;

  if (format == EmbeddingFormat::Text) {
    std::string line;
    for (long r = 0; r < n; ++r) {
      if (!std::getline(in, line)) load_error(path, r + 2, "unexpected end of file");
      std::istringstream ls(line);
      std::string word;
      if (!(ls >> word)) load_error(path, r + 2, "empty row");
      Vector v(d);
      for (long j = 0; j < d; ++j) {
        double x;
        if (!(ls >> x)) load_error(path, r + 2, "row has fewer than " + std::to_string(d) + " values");
        if (!std::isfinite(x)) load_error(path, r + 2, "non-finite value");
        v[j] = x;
      }
      double extra;
      if (ls >> extra) load_error(path, r + 2, "row has more than " + std::to_string(d) + " values");
      if (seen.count(word)) {
        ++dropped;
        continue;
      }
      seen.emplace(word, out);
      words.push_back(word);
      matrix.row(out++) = v.transpose();
    }
  } else {
    for (long r = 0; r < n; ++r) {
      std::string word;
      char c;
      while (in.get(c) && c != ' ') {
        if (c == '\n') load_error(path, r + 2, "unexpected newline in word");
        word.push_back(c);
      }
      if (word.empty()) load_error(path, r + 2, "empty word");
      Vector v(d);
      for (long j = 0; j < d; ++j) {
        float f;
        if (!in.read(reinterpret_cast<char*>(&f), sizeof f)) {
          load_error(path, r + 2, "truncated vector");
        }
        if (!std::isfinite(f)) load_error(path, r + 2, "non-finite value");
        v[j] = f;
      }
      if (in.peek() == '\n') in.get();
      if (seen.count(word)) {
        ++dropped;
        continue;
      }
      seen.emplace(word, out);
      words.push_back(word);
      matrix.row(out++) = v.transpose();
    }
  }

  matrix.conservativeResize(out, d);
  EmbeddingStore store(std::move(words), std::move(matrix));
  store.duplicates_dropped_ = dropped;
  return store;
}

void EmbeddingStore::save(const std::string& path, EmbeddingFormat format) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write embedding file: " + path);
  out << size() << ' ' << dim() << '\n';
  if (format == EmbeddingFormat::Text) {
    char buf[64];
    for (Eigen::Index i = 0; i < size(); ++i) {
      out << words_[i];
      for (int j = 0; j < dim(); ++j) {
        // max_digits10 so text round-trips bit-exact
        std::snprintf(buf, sizeof buf, "%.17g", matrix_(i, j));
        out << ' ' << buf;
      }
      out << '\n';
    }
  } else {
    for (Eigen::Index i = 0; i < size(); ++i) {
      out << words_[i] << ' ';
      for (int j = 0; j < dim(); ++j) {
        float f = static_cast<float>(matrix_(i, j));
        out.write(reinterpret_cast<const char*>(&f), sizeof f);
      }
      out << '\n';
    }
  }
  if (!out) throw std::runtime_error("write failure: " + path);
}

double cosine(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("cosine: dimension mismatch");
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("cosine: zero-norm vector");
  double c = a.dot(b) / (na * nb);
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  return c;
}

}  // namespace casplit
