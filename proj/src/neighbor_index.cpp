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

#include "casplit/neighbor_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

namespace casplit {

namespace {

constexpr size_t kLeafSize = 16;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  // splitmix64 step
  std::uint64_t z = seed + salt * 0x9e3779b97f4a7c15ULL + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

NeighborIndex NeighborIndex::build(const EmbeddingStore& store, IndexMode mode) {
  return build(store, mode, ApproxParams{});
}

NeighborIndex NeighborIndex::build(const EmbeddingStore& store, IndexMode mode,
                                   ApproxParams params) {
  if (store.size() < 1) throw std::invalid_argument("neighbor index: empty store");
  if (mode == IndexMode::Approximate) {
    if (params.tree_count < 1) throw std::invalid_argument("neighbor index: tree_count must be >= 1");
    if (params.search_breadth < 1) throw std::invalid_argument("neighbor index: search_breadth must be >= 1");
  }
  NeighborIndex idx;
  idx.store_ = &store;
  idx.mode_ = mode;
  idx.params_ = params;
  idx.unit_rows_ = store.matrix();
  for (Eigen::Index i = 0; i < idx.unit_rows_.rows(); ++i) {
    double n = idx.unit_rows_.row(i).norm();
    if (n > 0.0) idx.unit_rows_.row(i) /= n;
  }
  if (mode == IndexMode::Approximate) idx.build_forest(params.seed);
  return idx;
}

void NeighborIndex::build_forest(std::uint64_t seed) {
  roots_.clear();
  nodes_.clear();
  const int32_t n = static_cast<int32_t>(store_->size());
  for (int t = 0; t < params_.tree_count; ++t) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
    std::vector<int32_t> items(n);
    std::iota(items.begin(), items.end(), 0);
    roots_.push_back(build_node(items, 0, items.size(), rng));
  }
}

int32_t NeighborIndex::build_node(std::vector<int32_t>& items, size_t begin, size_t end,
                                  std::mt19937_64& rng) {
  const int32_t id = static_cast<int32_t>(nodes_.size());
  nodes_.emplace_back();
  if (end - begin <= kLeafSize) {
    nodes_[id].items.assign(items.begin() + begin, items.begin() + end);
    return id;
  }
  // Random hyperplane, split at the median projection.
  Vector plane(unit_rows_.cols());
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (Eigen::Index j = 0; j < plane.size(); ++j) plane[j] = gauss(rng);
  double pn = plane.norm();
  if (pn > 0.0) plane /= pn;

  std::vector<double> proj(end - begin);
  for (size_t i = begin; i < end; ++i) proj[i - begin] = unit_rows_.row(items[i]).dot(plane);
  std::vector<double> sorted(proj);
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double median = sorted[sorted.size() / 2];

  // Stable partition keeps item order deterministic.
  std::vector<int32_t> left, right;
  for (size_t i = begin; i < end; ++i) {
    (proj[i - begin] < median ? left : right).push_back(items[i]);
  }
  if (left.empty() || right.empty()) {
    // Degenerate projection; fall back to a leaf.
    nodes_[id].items.assign(items.begin() + begin, items.begin() + end);
    return id;
  }
  std::copy(left.begin(), left.end(), items.begin() + begin);
  std::copy(right.begin(), right.end(), items.begin() + begin + left.size());

  Vector keep_plane = plane;  // nodes_ may reallocate during recursion
  int32_t l = build_node(items, begin, begin + left.size(), rng);
  int32_t r = build_node(items, begin + left.size(), end, rng);
  nodes_[id].plane = std::move(keep_plane);
  nodes_[id].threshold = median;
  nodes_[id].left = l;
  nodes_[id].right = r;
  return id;
}

std::vector<int32_t> NeighborIndex::candidates(const Vector& unit_q) const {
  // Priority-queue traversal shared across trees; higher margin first,
  // ties by node id for determinism.
  using Entry = std::pair<double, int32_t>;
  std::priority_queue<Entry> pq;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  for (int32_t root : roots_) pq.emplace(kInf, root);

  std::vector<int32_t> out;
  std::vector<char> seen(static_cast<size_t>(store_->size()), 0);
  const size_t breadth = static_cast<size_t>(params_.search_breadth);
  while (!pq.empty() && out.size() < breadth) {
    auto [margin, id] = pq.top();
    pq.pop();
    const Node& node = nodes_[id];
    if (!node.items.empty()) {
      for (int32_t item : node.items) {
        if (!seen[item]) {
          seen[item] = 1;
          out.push_back(item);
        }
      }
    } else {
      const double m = unit_q.dot(node.plane) - node.threshold;
      const int32_t near = m < 0 ? node.left : node.right;
      const int32_t far = m < 0 ? node.right : node.left;
      pq.emplace(std::min(margin, kInf), near);
      pq.emplace(std::min(margin, std::abs(m)) - 1e-12, far);
    }
  }
  return out;
}

std::vector<Neighbor> NeighborIndex::rank_candidates(const Eigen::Ref<const Vector>& q,
                                                     const std::vector<int32_t>& rows,
                                                     int k) const {
  const double qn = q.norm();
  if (qn == 0.0) throw std::invalid_argument("neighbor query: zero vector");
  Vector unit_q = q / qn;
  std::vector<Neighbor> scored;
  scored.reserve(rows.size());
  for (int32_t r : rows) scored.push_back({r, unit_rows_.row(r).dot(unit_q)});
  auto better = [](const Neighbor& a, const Neighbor& b) {
    return a.cosine > b.cosine || (a.cosine == b.cosine && a.row < b.row);
  };
  const size_t kk = std::min<size_t>(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + kk, scored.end(), better);
  scored.resize(kk);
  return scored;
}

std::vector<Neighbor> NeighborIndex::query_neighbors(const Eigen::Ref<const Vector>& q,
                                                     int k) const {
  if (k < 1) throw std::invalid_argument("neighbor query: k must be >= 1");
  if (mode_ == IndexMode::Exact) {
    std::vector<int32_t> all(static_cast<size_t>(store_->size()));
    std::iota(all.begin(), all.end(), 0);
    return rank_candidates(q, all, k);
  }
  const double qn = q.norm();
  if (qn == 0.0) throw std::invalid_argument("neighbor query: zero vector");
  return rank_candidates(q, candidates(q / qn), k);
}

std::vector<std::pair<std::string, double>> NeighborIndex::query_words(
    const Eigen::Ref<const Vector>& q, int k) const {
  std::vector<std::pair<std::string, double>> out;
  for (const Neighbor& nb : query_neighbors(q, k)) {
    out.emplace_back(store_->words()[nb.row], nb.cosine);
  }
  return out;
}

std::optional<int> NeighborIndex::rank_of(const Eigen::Ref<const Vector>& q,
                                          const std::string& target, int max_rank) const {
  if (max_rank < 1) throw std::invalid_argument("rank_of: max_rank must be >= 1");
  auto row = store_->row_of(target);
  if (!row) throw std::invalid_argument("rank_of: unknown target word '" + target + "'");

  if (mode_ == IndexMode::Exact) {
    const double qn = q.norm();
    if (qn == 0.0) throw std::invalid_argument("rank_of: zero vector");
    Vector unit_q = q / qn;
    const double ts = unit_rows_.row(*row).dot(unit_q);
    // Counting pass is equivalent to a full sort with (cosine desc, row asc).
    long rank = 1;
    for (Eigen::Index i = 0; i < unit_rows_.rows(); ++i) {
      if (i == *row) continue;
      const double s = unit_rows_.row(i).dot(unit_q);
      if (s > ts || (s == ts && i < *row)) {
        if (++rank > max_rank) return std::nullopt;
      }
    }
    return static_cast<int>(rank);
  }

  auto list = query_neighbors(q, max_rank);
  for (size_t i = 0; i < list.size(); ++i) {
    if (list[i].row == *row) return static_cast<int>(i + 1);
  }
  return std::nullopt;
}

}  // namespace casplit
