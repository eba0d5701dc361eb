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

#include <optional>
#include <string>
#include <vector>

#include "casplit/freq_splitter.hpp"
#include "casplit/induction.hpp"

namespace casplit {

enum class UnsplitReason { NoPrefix, WordOov, HeadOov, BelowThreshold };

const char* to_string(UnsplitReason reason);

struct SplitPoint {
  std::string modifier;
  std::string interfix;
  std::string head_surface;  // vocabulary form used for the analogy
  std::string head_slice;    // surface slice of the word
  double score_cosine = 0.0;
  int score_rank = 0;
  std::string prototype_id;  // "modifier#i"
};

struct SplitDecision {
  std::string word;
  std::optional<SplitPoint> split;
  UnsplitReason reason = UnsplitReason::NoPrefix;  // meaningful when !split
};

constexpr int kMinHeadLen = 4;
constexpr int kDefaultMaxDepth = 4;

/// Greedy analogy-based split at a single boundary. All failure modes
/// are Unsplit reasons, never errors.
SplitDecision decompound(const std::string& word, const SplitModel& model,
                         const EmbeddingStore& store, const NeighborIndex& index,
                         const InductionConfig& config);

/// Apply decompound recursively to both components.
std::vector<Component> decompound_recursive(const std::string& word, const SplitModel& model,
                                            const EmbeddingStore& store,
                                            const NeighborIndex& index,
                                            const InductionConfig& config,
                                            int max_depth = kDefaultMaxDepth);

struct SplitPolicy {
  enum class Scope { OovOnly, RareBelow, All };
  enum class Backoff { None, Frequency };
  Scope scope = Scope::All;
  int count_threshold = 20;  // used by RareBelow
  Backoff backoff = Backoff::None;
  int max_depth = kDefaultMaxDepth;
};

/// Analogy split with frequency backoff on vocabulary failures
/// (word_oov / head_oov). A below-threshold rejection is meaning-based
/// and never backs off.
std::vector<Component> split_with_backoff(const std::string& word, const SplitModel& model,
                                          const EmbeddingStore& store,
                                          const NeighborIndex& index,
                                          const InductionConfig& config,
                                          const FrequencyTable* freq_table,
                                          const SplitPolicy& policy);

/// "comp1 | comp2" rendering; interfixes shown as "(s)" markers when
/// requested, dropped otherwise.
std::string render_components(const std::vector<Component>& components, bool show_interfix);

/// Joins surfaces and interfixes back into the original word.
std::string reconstruct(const std::vector<Component>& components);

}  // namespace casplit
