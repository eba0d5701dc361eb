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
#include <istream>
#include <string>
#include <unordered_map>
#include <vector>

#include "casplit/candidates.hpp"

namespace casplit {

/// One component of a split word. `surface` is the exact slice of the
/// input; joining surface + interfix_after over all components
/// reproduces the word.
struct Component {
  std::string surface;
  std::string interfix_after;  // between this component and the next

  friend bool operator==(const Component&, const Component&) = default;
};

/// Unigram counts; absent words count 0. Immutable by convention after
/// build, splitting is a pure function over it.
class FrequencyTable {
public:
  FrequencyTable() = default;

  static FrequencyTable count_corpus(std::istream& tokens);
  static FrequencyTable load_tsv(const std::string& path);
  void save_tsv(const std::string& path) const;

  void add(const std::string& word, std::uint64_t n = 1);
  std::uint64_t count(const std::string& word) const;
  std::uint64_t total_tokens() const { return total_; }
  std::size_t distinct_words() const { return counts_.size(); }

private:
  std::unordered_map<std::string, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

/// Frequency baseline: among all segmentations into up to max_parts
/// parts (each >= min_part_len, optional interfix between parts), pick
/// the one maximizing the geometric mean of part counts; split only if
/// that mean strictly beats the count of the whole word. Ties prefer
/// fewer parts, then the leftmost-longest first part.
std::vector<Component> geometric_split(const std::string& word, const FrequencyTable& table,
                                       int min_part_len = 4,
                                       const std::vector<std::string>& interfixes = kDefaultInterfixes,
                                       int max_parts = 4);

}  // namespace casplit
