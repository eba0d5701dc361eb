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

#include "casplit/splitter.hpp"

#include <algorithm>
#include <cctype>

namespace casplit {

const char* to_string(UnsplitReason reason) {
  switch (reason) {
    case UnsplitReason::NoPrefix: return "no_prefix";
    case UnsplitReason::WordOov: return "word_oov";
    case UnsplitReason::HeadOov: return "head_oov";
    case UnsplitReason::BelowThreshold: return "below_threshold";
  }
  return "?";
}

namespace {

/// Best-match ordering: cosine descending, rank ascending, longer
/// modifier, then lexicographic for full determinism.
bool better_split(const SplitPoint& a, const SplitPoint& b) {
  if (a.score_cosine != b.score_cosine) return a.score_cosine > b.score_cosine;
  if (a.score_rank != b.score_rank) return a.score_rank < b.score_rank;
  if (a.modifier.size() != b.modifier.size()) return a.modifier.size() > b.modifier.size();
  return std::tie(a.modifier, a.interfix, a.head_surface) <
         std::tie(b.modifier, b.interfix, b.head_surface);
}

}  // namespace

SplitDecision decompound(const std::string& word, const SplitModel& model,
                         const EmbeddingStore& store, const NeighborIndex& index,
                         const InductionConfig& config) {
  SplitDecision decision;
  decision.word = word;

  std::vector<std::string> modifiers;
  for (size_t len = kDefaultMinPrefixLen; len < word.size(); ++len) {
    std::string prefix = word.substr(0, len);
    if (model.modifiers.count(prefix)) modifiers.push_back(std::move(prefix));
  }
  if (modifiers.empty()) {
    decision.reason = UnsplitReason::NoPrefix;
    return decision;
  }
  auto word_vec = store.vector(word);
  if (!word_vec) {
    decision.reason = UnsplitReason::WordOov;
    return decision;
  }

  bool any_head_in_vocab = false;
  std::optional<SplitPoint> best;
  for (const std::string& modifier : modifiers) {
    const std::vector<Prototype>& protos = model.modifiers.at(modifier);
    for (const HeadVariant& hv : head_variants(word, modifier, model.interfixes)) {
      if (hv.slice.size() < static_cast<size_t>(kMinHeadLen)) continue;  // condition (c) failure
      for (const std::string& head : hv.lookup_forms) {
        auto head_vec = store.vector(head);
        if (!head_vec) continue;
        any_head_in_vocab = true;
        for (size_t pi = 0; pi < protos.size(); ++pi) {
          Vector predicted = *head_vec + protos[pi].direction;
          auto rank = index.rank_of(predicted, word, config.t_rank);
          if (!rank) continue;
          const double cos = cosine(predicted, *word_vec);
          if (config.t_cosine && cos < *config.t_cosine) continue;
          SplitPoint sp;
          sp.modifier = modifier;
          sp.interfix = hv.interfix;
          sp.head_surface = head;
          sp.head_slice = hv.slice;
          sp.score_cosine = cos;
          sp.score_rank = *rank;
          sp.prototype_id = modifier + "#" + std::to_string(pi);
          if (!best || better_split(sp, *best)) best = std::move(sp);
        }
      }
    }
  }
  if (best) {
    decision.split = std::move(best);
  } else {
    decision.reason = any_head_in_vocab ? UnsplitReason::BelowThreshold : UnsplitReason::HeadOov;
  }
  return decision;
}

namespace {

void recase_first(std::string& s, char like) {
  if (!s.empty()) s[0] = like;
}

std::vector<Component> recurse(const std::string& word, const SplitModel& model,
                               const EmbeddingStore& store, const NeighborIndex& index,
                               const InductionConfig& config, int depth) {
  if (depth < 1) return {{word, ""}};
  SplitDecision d = decompound(word, model, store, index, config);
  if (!d.split) return {{word, ""}};
  const SplitPoint& sp = *d.split;

  std::vector<Component> left = recurse(sp.modifier, model, store, index, config, depth - 1);
  // Recurse on the vocabulary form of the head, then restore the slice's
  // first-letter casing so the components still rejoin to the input.
  std::vector<Component> right = recurse(sp.head_surface, model, store, index, config, depth - 1);
  recase_first(right.front().surface, sp.head_slice[0]);

  left.back().interfix_after = sp.interfix;
  left.insert(left.end(), std::make_move_iterator(right.begin()),
              std::make_move_iterator(right.end()));
  return left;
}

}  // namespace

std::vector<Component> decompound_recursive(const std::string& word, const SplitModel& model,
                                            const EmbeddingStore& store,
                                            const NeighborIndex& index,
                                            const InductionConfig& config, int max_depth) {
  if (max_depth < 1) throw std::invalid_argument("decompound_recursive: max_depth must be >= 1");
  return recurse(word, model, store, index, config, max_depth);
}

std::vector<Component> split_with_backoff(const std::string& word, const SplitModel& model,
                                          const EmbeddingStore& store,
                                          const NeighborIndex& index,
                                          const InductionConfig& config,
                                          const FrequencyTable* freq_table,
                                          const SplitPolicy& policy) {
  SplitDecision d = decompound(word, model, store, index, config);
  if (d.split) return decompound_recursive(word, model, store, index, config, policy.max_depth);
  if (policy.backoff == SplitPolicy::Backoff::Frequency &&
      (d.reason == UnsplitReason::WordOov || d.reason == UnsplitReason::HeadOov)) {
    if (!freq_table) throw std::invalid_argument("split_with_backoff: frequency backoff requires a count table");
    return geometric_split(word, *freq_table, kDefaultMinPrefixLen, model.interfixes);
  }
  return {{word, ""}};
}

std::string render_components(const std::vector<Component>& components, bool show_interfix) {
  std::string out;
  for (size_t i = 0; i < components.size(); ++i) {
    if (i > 0) out += " | ";
    out += components[i].surface;
    if (show_interfix && !components[i].interfix_after.empty()) {
      out += " (" + components[i].interfix_after + ")";
    }
  }
  return out;
}

std::string reconstruct(const std::vector<Component>& components) {
  std::string out;
  for (const Component& c : components) {
    out += c.surface;
    out += c.interfix_after;
  }
  return out;
}

}  // namespace casplit
