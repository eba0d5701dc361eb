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
#include <string>
#include <vector>

#include "casplit/candidates.hpp"
#include "casplit/splitter.hpp"

namespace casplit {

/// A binary gold split: modifier + interfix + head reconstructs the
/// compound (head casing normalized at the boundary).
struct GoldEntry {
  std::string compound;
  std::string modifier;
  std::string head;
  std::string interfix;  // may be empty
};

struct GoldLoadStats {
  std::size_t total_lines = 0;
  std::size_t filtered_short_modifier = 0;
  std::size_t rejected_malformed = 0;
};

/// TSV "compound TAB modifier TAB head [TAB interfix]". Entries whose
/// modifier is shorter than min_prefix_len are filtered out. A line
/// failing the reconstruction invariant is fatal when `strict`,
/// otherwise skipped with a diagnostic counted in stats.
std::vector<GoldEntry> load_gold(const std::string& path,
                                 int min_prefix_len = kDefaultMinPrefixLen,
                                 bool strict = true, GoldLoadStats* stats = nullptr);

struct EvalReport {
  double accuracy = 0.0;  // n_correct / n_total
  double coverage = 0.0;  // n_split / n_total
  std::size_t n_total = 0;
  std::size_t n_split = 0;
  std::size_t n_correct = 0;
  // keyed by ambiguity bucket when bucketing is requested
  std::map<int, EvalReport> buckets;
};

/// A decision is correct iff it splits at the gold binary boundary;
/// assigning boundary characters to the interfix rather than the
/// modifier counts as correct as long as the head starts at the same
/// offset. Decisions must cover exactly the gold compounds.
EvalReport score(const std::vector<SplitDecision>& decisions,
                 const std::vector<GoldEntry>& gold);

/// As score, with per-ambiguity sub-reports (bucket = ambiguity_count).
EvalReport score_bucketed(const std::vector<SplitDecision>& decisions,
                          const std::vector<GoldEntry>& gold, const PrefixIndex& vocab_index,
                          const std::vector<std::string>& interfixes = kDefaultInterfixes);

/// Number of potential split points: vocabulary prefixes of length
/// >= min_prefix_len. A prefix followed by an interfix counts once, at
/// the prefix boundary.
int ambiguity_count(const std::string& word, const PrefixIndex& vocab_index,
                    const std::vector<std::string>& interfixes = kDefaultInterfixes);

/// Paper-scale reference values, reported alongside desk-scale results
/// but never asserted.
struct PaperReference {
  const char* label;
  double accuracy;
  double coverage;
};
inline constexpr PaperReference kPaperFullTestSet{"full test set (analogy)", 27.43, 58.45};
inline constexpr PaperReference kPaperMosesPartial{"full test set (frequency, partial corpus)", 18.04, 31.41};
inline constexpr PaperReference kPaperMosesFull{"full test set (frequency, full corpus)", 6.57, 13.75};

}  // namespace casplit
