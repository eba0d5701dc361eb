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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "casplit/candidates.hpp"
#include "casplit/neighbor_index.hpp"

namespace casplit {

struct InductionConfig {
  int t_minsupport = 6;               // minimum evidence set size
  int t_rank = 80;                    // rank threshold for a hit
  std::optional<double> t_cosine;     // optional cosine threshold
  int evidence_cap = 500;             // evaluated pair pool cap per direction vector
  IndexMode eval_mode = IndexMode::Exact;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

struct EvalResult {
  std::optional<int> rank;  // absent if beyond t_rank
  double cosine = 0.0;
  bool hit = false;
};

/// A direction vector selected to represent one sense of a modifier,
/// together with the pairs it explains. The direction is always
/// recomputed from the source pair and the store, never persisted.
struct Prototype {
  std::string modifier;
  SupportPair source;
  Vector direction;                 // v(compound) - v(head)
  std::vector<SupportPair> evidence;
  double hit_rate = 0.0;            // over the pairs still unexplained at selection
  double mean_evidence_cosine = 0.0;
};

struct SplitModel {
  std::map<std::string, std::vector<Prototype>> modifiers;
  std::vector<std::string> interfixes = kDefaultInterfixes;
  InductionConfig config;
};

Vector direction_vector(const EmbeddingStore& store, const SupportPair& pair);

EvalResult evaluate_pair(const Eigen::Ref<const Vector>& direction, const SupportPair& pair,
                         const EmbeddingStore& store, const NeighborIndex& index,
                         const InductionConfig& config);

/// Recursive largest-evidence-set selection: per modifier, pick the
/// direction vector explaining the most pairs, remove them, repeat while
/// the best evidence set still has >= t_minsupport pairs.
SplitModel induce_prototypes(const std::vector<ModifierCandidate>& candidates,
                             const EmbeddingStore& store, const NeighborIndex& index,
                             const InductionConfig& config);

/// Fraction of `pairs` the prototype's direction explains, over the full
/// (unsampled) set. Throws on an empty set.
double hit_rate(const Prototype& prototype, const std::vector<SupportPair>& pairs,
                const EmbeddingStore& store, const NeighborIndex& index,
                const InductionConfig& config);

struct ModelStats {
  double mean_hit_rate = 0.0;                   // modifiers weighted equally
  double mean_hit_rate_support_weighted = 0.0;  // weighted by evidence size
  double mean_cosine = 0.0;
  double pct_with_prototypes = 0.0;             // of the candidate modifiers
  double mean_prototypes = 0.0;                 // per retained modifier
  std::map<std::string, double> per_modifier_hit_rate;
};

ModelStats model_stats(const SplitModel& model, const std::vector<ModifierCandidate>& candidates);

/// Versioned text container. Directions are recomputed from the store at
/// load time and therefore stay bit-exact with respect to the embeddings.
void save_model(const SplitModel& model, const std::string& path);
SplitModel load_model(const std::string& path, const EmbeddingStore& store);

}  // namespace casplit
