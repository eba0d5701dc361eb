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
#include <string>
#include <tuple>
#include <vector>

#include "casplit/embeddings.hpp"

namespace casplit {

/// Default linking elements between modifier and head. '-' stands for
/// the empty interfix in file formats.
inline const std::vector<std::string> kDefaultInterfixes = {"", "s", "es"};

constexpr int kDefaultMinPrefixLen = 4;

/// One (head, compound) observation supporting a modifier candidate.
/// compound = modifier + interfix + head slice, where the slice equals
/// head_surface up to first-letter casing.
struct SupportPair {
  std::string head_surface;  // as found in the vocabulary
  std::string interfix;      // "", "s" or "es"
  std::string compound;      // as found in the vocabulary

  friend bool operator==(const SupportPair&, const SupportPair&) = default;
  friend auto operator<=>(const SupportPair& a, const SupportPair& b) {
    return std::tie(a.compound, a.interfix, a.head_surface) <=>
           std::tie(b.compound, b.interfix, b.head_surface);
  }
};

struct ModifierCandidate {
  std::string modifier;
  std::vector<SupportPair> support;  // sorted by (compound, interfix, head)
};

/// Trie over the vocabulary answering proper-prefix enumeration in time
/// linear in word length plus matches.
class PrefixIndex {
public:
  PrefixIndex(const std::vector<std::string>& vocab, int min_prefix_len = kDefaultMinPrefixLen);

  int min_prefix_len() const { return min_prefix_len_; }

  /// Vocabulary words of length >= min_prefix_len that are proper string
  /// prefixes of `word`, shortest first.
  std::vector<std::string> prefixes_of(const std::string& word) const;

  /// Lengths of the matching prefixes, shortest first.
  std::vector<int> prefix_lengths_of(const std::string& word) const;

private:
  struct Node {
    std::vector<std::pair<char, int32_t>> children;  // sorted by char
    bool terminal = false;
  };
  int32_t child(int32_t node, char c) const;

  std::vector<Node> nodes_;
  int min_prefix_len_;
};

/// One way of carving `word` after `modifier`: the interfix consumed,
/// the remaining head slice and the vocabulary lookup forms to try
/// (the slice as-is and with its first letter uppercased).
struct HeadVariant {
  std::string interfix;
  std::string slice;
  std::vector<std::string> lookup_forms;
};

std::vector<HeadVariant> head_variants(const std::string& word, const std::string& modifier,
                                       const std::vector<std::string>& interfixes = kDefaultInterfixes);

struct CandidateStats {
  std::size_t raw_modifiers = 0;       // before the support >= 2 filter
  std::size_t retained_modifiers = 0;
  double mean_support = 0.0;           // over retained candidates
};

/// Enumerate modifier candidates with their support sets. Compounds are
/// not re-split recursively; output sorted by modifier then compound.
std::vector<ModifierCandidate> extract_candidates(
    const EmbeddingStore& store, const PrefixIndex& pidx,
    const std::vector<std::string>& interfixes = kDefaultInterfixes,
    CandidateStats* stats = nullptr);

void save_candidates_tsv(const std::vector<ModifierCandidate>& candidates,
                         const std::string& path);
std::vector<ModifierCandidate> load_candidates_tsv(const std::string& path);

/// First letter uppercased (ASCII).
std::string ucfirst(const std::string& s);

}  // namespace casplit
