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

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "casplit/embeddings.hpp"

namespace casplit {

enum class IndexMode { Exact, Approximate };

struct Neighbor {
  Eigen::Index row;
  double cosine;
};

/// k-NN and rank queries under cosine similarity. Exact mode scans the
/// full (unit-normalized) matrix; approximate mode searches a seeded
/// forest of random-projection trees with a shared priority queue, so a
/// larger search breadth always inspects a superset of candidates.
/// Immutable after build; the index must not outlive its store.
class NeighborIndex {
public:
  struct ApproxParams {
    int tree_count = 8;
    int search_breadth = 1024;
    std::uint64_t seed = 0;
  };

  static NeighborIndex build(const EmbeddingStore& store, IndexMode mode,
                             ApproxParams params);
  static NeighborIndex build(const EmbeddingStore& store, IndexMode mode);

  IndexMode mode() const { return mode_; }
  const EmbeddingStore& store() const { return *store_; }

  /// Top-k rows by cosine with q, non-increasing; ties broken by
  /// ascending row index. Exact mode is globally correct.
  std::vector<Neighbor> query_neighbors(const Eigen::Ref<const Vector>& q, int k) const;

  /// As query_neighbors but resolving rows to words.
  std::vector<std::pair<std::string, double>> query_words(
      const Eigen::Ref<const Vector>& q, int k) const;

  /// 1-based position of `target` in the neighbor list of q, or nullopt
  /// if it falls beyond max_rank. Throws on an unknown target word.
  std::optional<int> rank_of(const Eigen::Ref<const Vector>& q,
                             const std::string& target, int max_rank) const;

private:
  struct Node {
    // leaf when items non-empty
    std::vector<int32_t> items;
    Vector plane;
    double threshold = 0.0;
    int32_t left = -1;
    int32_t right = -1;
  };

  NeighborIndex() = default;
  void build_forest(std::uint64_t seed);
  int32_t build_node(std::vector<int32_t>& items, size_t begin, size_t end,
                     std::mt19937_64& rng);
  std::vector<int32_t> candidates(const Vector& unit_q) const;
  std::vector<Neighbor> rank_candidates(const Eigen::Ref<const Vector>& q,
                                        const std::vector<int32_t>& rows, int k) const;

  const EmbeddingStore* store_ = nullptr;
  IndexMode mode_ = IndexMode::Exact;
  ApproxParams params_;
  Matrix unit_rows_;
  std::vector<Node> nodes_;
  std::vector<int32_t> roots_;
};

}  // namespace casplit
