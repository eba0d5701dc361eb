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

#include <istream>
#include <ostream>
#include <string>
#include <unordered_set>
#include <vector>

#include "casplit/splitter.hpp"

namespace casplit {

struct ManifestEntry {
  std::size_t line = 0;   // 1-based
  std::size_t token = 0;  // 0-based token index within the original line
  std::string original;
  std::string rendering;  // space-separated components
};

struct PreprocessReport {
  std::size_t tokens_seen = 0;
  std::size_t tokens_in_scope = 0;
  std::size_t tokens_split = 0;                 // token-level split count
  std::unordered_set<std::string> types_split;  // type-level split count
};

/// Pass every in-scope token through split_with_backoff; out-of-scope
/// tokens stream through unchanged. Manifest lines are TSV
/// "line:token TAB original TAB rendering", one per split performed,
/// sufficient to reconstruct the original corpus exactly.
PreprocessReport preprocess_corpus(std::istream& corpus, std::ostream& out,
                                   std::ostream& manifest, const SplitModel& model,
                                   const EmbeddingStore& store, const NeighborIndex& index,
                                   const InductionConfig& config,
                                   const FrequencyTable* freq_table, const SplitPolicy& policy,
                                   const std::unordered_set<std::string>* translation_vocab);

std::vector<ManifestEntry> load_manifest(std::istream& manifest);

/// Inverse of preprocess_corpus for audit: split corpus + manifest back
/// to the original corpus.
void reconstruct_corpus(std::istream& split_corpus, const std::vector<ManifestEntry>& manifest,
                        std::ostream& out);

}  // namespace casplit
