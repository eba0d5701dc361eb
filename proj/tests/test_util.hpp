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

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "casplit/embeddings.hpp"

namespace testutil {

inline std::string temp_path(const std::string& name) {
  static int counter = 0;
  auto dir = std::filesystem::temp_directory_path() / "casplit_tests";
  std::filesystem::create_directories(dir);
  return (dir / (std::to_string(counter++) + "_" + name)).string();
}

inline std::string write_file(const std::string& name, const std::string& content) {
  std::string path = temp_path(name);
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Random store with distinct auto-named words.
inline casplit::EmbeddingStore random_store(int n, int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::string> words;
  casplit::Matrix m(n, d);
  for (int i = 0; i < n; ++i) {
    words.push_back("word" + std::to_string(i));
    for (int j = 0; j < d; ++j) m(i, j) = gauss(rng);
  }
  return casplit::EmbeddingStore(std::move(words), std::move(m));
}

/// Independent oracle: full cosine sort, ties by ascending row index.
inline std::vector<std::pair<Eigen::Index, double>> brute_force_neighbors(
    const casplit::EmbeddingStore& store, const casplit::Vector& q) {
  std::vector<std::pair<Eigen::Index, double>> out;
  const double qn = q.norm();
  for (Eigen::Index i = 0; i < store.size(); ++i) {
    const Eigen::RowVectorXd row = store.matrix().row(i);
    const double rn = row.norm();
    double c = 0.0;
    if (rn > 0.0 && qn > 0.0) {
      double dot = 0.0;
      for (Eigen::Index j = 0; j < row.size(); ++j) dot += row[j] * (q[j] / qn);
      c = dot / rn;
    }
    out.emplace_back(i, c);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second > b.second || (a.second == b.second && a.first < b.first);
  });
  return out;
}

}  // namespace testutil
