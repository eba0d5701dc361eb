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

#include "casplit/freq_splitter.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <fstream>
#include <map>
#include <sstream>

namespace casplit {

using boost::multiprecision::cpp_int;

FrequencyTable FrequencyTable::count_corpus(std::istream& tokens) {
  FrequencyTable t;
  std::string tok;
  while (tokens >> tok) t.add(tok);
  return t;
}

void FrequencyTable::add(const std::string& word, std::uint64_t n) {
  counts_[word] += n;
  total_ += n;
}

std::uint64_t FrequencyTable::count(const std::string& word) const {
  auto it = counts_.find(word);
  return it == counts_.end() ? 0 : it->second;
}

FrequencyTable FrequencyTable::load_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open count file: " + path);
  FrequencyTable t;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 'word TAB count'");
    }
    t.add(line.substr(0, tab), std::stoull(line.substr(tab + 1)));
  }
  return t;
}

void FrequencyTable::save_tsv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write count file: " + path);
  std::map<std::string, std::uint64_t> sorted(counts_.begin(), counts_.end());
  for (const auto& [word, n] : sorted) out << word << '\t' << n << '\n';
}

namespace {

struct Segmentation {
  std::vector<Component> parts;
  cpp_int product = 0;  // product of part counts; 0 vetoes the split
};

// geomean(a) > geomean(b)  <=>  prod_a^|b| > prod_b^|a|  (exact integers,
// so tie handling is deterministic).
int compare_geomean(const Segmentation& a, const Segmentation& b) {
  if (a.product == 0 || b.product == 0) {
    return (a.product == 0) == (b.product == 0) ? 0 : (a.product == 0 ? -1 : 1);
  }
  cpp_int lhs = pow(a.product, static_cast<unsigned>(b.parts.size()));
  cpp_int rhs = pow(b.product, static_cast<unsigned>(a.parts.size()));
  return lhs == rhs ? 0 : (lhs < rhs ? -1 : 1);
}

/// Equal geometric means prefer fewer parts, then the leftmost-longest
/// first part (then second part, and so on).
bool better_segmentation(const Segmentation& a, const Segmentation& b) {
  if (b.parts.empty()) return true;
  const int c = compare_geomean(a, b);
  if (c != 0) return c > 0;
  if (a.parts.size() != b.parts.size()) return a.parts.size() < b.parts.size();
  for (size_t i = 0; i < a.parts.size(); ++i) {
    if (a.parts[i].surface.size() != b.parts[i].surface.size()) {
      return a.parts[i].surface.size() > b.parts[i].surface.size();
    }
  }
  return false;
}

void enumerate(const std::string& word, size_t pos, int parts_left, int min_part_len,
               const std::vector<std::string>& interfixes, const FrequencyTable& table,
               std::vector<Component>& prefix, const cpp_int& product, Segmentation& best) {
  const size_t n = word.size();
  if (pos == n) {
    if (prefix.size() < 2) return;
    Segmentation cand{prefix, product};
    if (better_segmentation(cand, best)) best = std::move(cand);
    return;
  }
  if (parts_left == 0) return;
  if (n - pos < static_cast<size_t>(min_part_len)) return;
  for (size_t len = n - pos; len >= static_cast<size_t>(min_part_len); --len) {
    const std::string part = word.substr(pos, len);
    const cpp_int p = product * table.count(part);
    const size_t end = pos + len;
    if (end == n) {
      prefix.push_back({part, ""});
      enumerate(word, end, parts_left - 1, min_part_len, interfixes, table, prefix, p, best);
      prefix.pop_back();
      continue;
    }
    for (const std::string& ifx : interfixes) {
      if (end + ifx.size() >= n) continue;
      if (!ifx.empty() && word.compare(end, ifx.size(), ifx) != 0) continue;
      prefix.push_back({part, ifx});
      enumerate(word, end + ifx.size(), parts_left - 1, min_part_len, interfixes, table,
                prefix, p, best);
      prefix.pop_back();
    }
  }
}

}  // namespace

std::vector<Component> geometric_split(const std::string& word, const FrequencyTable& table,
                                       int min_part_len,
                                       const std::vector<std::string>& interfixes,
                                       int max_parts) {
  if (min_part_len < 1) throw std::invalid_argument("geometric_split: min_part_len must be >= 1");
  if (max_parts < 2) throw std::invalid_argument("geometric_split: max_parts must be >= 2");

  Segmentation best;
  std::vector<Component> prefix;
  enumerate(word, 0, max_parts, min_part_len, interfixes, table, prefix, 1, best);

  if (best.parts.empty() || best.product == 0) return {{word, ""}};
  // geomean > c(word)  <=>  product > c(word)^parts
  cpp_int word_count = table.count(word);
  if (best.product > pow(word_count, static_cast<unsigned>(best.parts.size()))) {
    return best.parts;
  }
  return {{word, ""}};
}

}  // namespace casplit
