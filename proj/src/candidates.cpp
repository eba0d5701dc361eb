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

#include "casplit/candidates.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace casplit {

std::string ucfirst(const std::string& s) {
  if (s.empty()) return s;
  std::string out = s;
  out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

PrefixIndex::PrefixIndex(const std::vector<std::string>& vocab, int min_prefix_len)
    : min_prefix_len_(min_prefix_len) {
  if (min_prefix_len < 1) throw std::invalid_argument("prefix index: min_prefix_len must be >= 1");
  nodes_.emplace_back();
  for (const std::string& w : vocab) {
    int32_t cur = 0;
    for (char c : w) {
      int32_t next = child(cur, c);
      if (next < 0) {
        next = static_cast<int32_t>(nodes_.size());
        auto& children = nodes_[cur].children;
        auto it = std::lower_bound(children.begin(), children.end(), c,
                                   [](const auto& p, char ch) { return p.first < ch; });
        children.insert(it, {c, next});
        nodes_.emplace_back();
      }
      cur = next;
    }
    nodes_[cur].terminal = true;
  }
}

int32_t PrefixIndex::child(int32_t node, char c) const {
  const auto& children = nodes_[node].children;
  auto it = std::lower_bound(children.begin(), children.end(), c,
                             [](const auto& p, char ch) { return p.first < ch; });
  if (it == children.end() || it->first != c) return -1;
  return it->second;
}

std::vector<int> PrefixIndex::prefix_lengths_of(const std::string& word) const {
  std::vector<int> out;
  int32_t cur = 0;
  const int n = static_cast<int>(word.size());
  for (int i = 0; i < n; ++i) {
    cur = child(cur, word[i]);
    if (cur < 0) break;
    const int len = i + 1;
    if (len >= n) break;  // proper prefixes only
    if (nodes_[cur].terminal && len >= min_prefix_len_) out.push_back(len);
  }
  return out;
}

std::vector<std::string> PrefixIndex::prefixes_of(const std::string& word) const {
  std::vector<std::string> out;
  for (int len : prefix_lengths_of(word)) out.push_back(word.substr(0, len));
  return out;
}

std::vector<HeadVariant> head_variants(const std::string& word, const std::string& modifier,
                                       const std::vector<std::string>& interfixes) {
  if (word.compare(0, modifier.size(), modifier) != 0) {
    throw std::invalid_argument("head_variants: modifier is not a prefix of word");
  }
  std::vector<HeadVariant> out;
  for (const std::string& ifx : interfixes) {
    const size_t off = modifier.size() + ifx.size();
    if (off >= word.size()) continue;
    if (!ifx.empty() && word.compare(modifier.size(), ifx.size(), ifx) != 0) continue;
    HeadVariant v;
    v.interfix = ifx;
    v.slice = word.substr(off);
    v.lookup_forms.push_back(v.slice);
    std::string upper = ucfirst(v.slice);
    if (upper != v.slice) v.lookup_forms.push_back(upper);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<ModifierCandidate> extract_candidates(const EmbeddingStore& store,
                                                  const PrefixIndex& pidx,
                                                  const std::vector<std::string>& interfixes,
                                                  CandidateStats* stats) {
  std::map<std::string, std::set<SupportPair>> support;
  for (const std::string& word : store.words()) {
    for (const std::string& modifier : pidx.prefixes_of(word)) {
      for (const HeadVariant& hv : head_variants(word, modifier, interfixes)) {
        for (const std::string& head : hv.lookup_forms) {
          if (store.contains(head)) {
            support[modifier].insert({head, hv.interfix, word});
          }
        }
      }
    }
  }

  std::vector<ModifierCandidate> out;
  std::size_t total_support = 0;
  for (auto& [modifier, pairs] : support) {
    if (pairs.size() < 2) continue;
    ModifierCandidate c;
    c.modifier = modifier;
    c.support.assign(pairs.begin(), pairs.end());
    total_support += c.support.size();
    out.push_back(std::move(c));
  }
  if (stats) {
    stats->raw_modifiers = support.size();
    stats->retained_modifiers = out.size();
    stats->mean_support = out.empty() ? 0.0 : static_cast<double>(total_support) / out.size();
  }
  return out;
}

void save_candidates_tsv(const std::vector<ModifierCandidate>& candidates,
                         const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write candidate file: " + path);
  for (const auto& c : candidates) {
    for (const auto& p : c.support) {
      out << c.modifier << '\t' << (p.interfix.empty() ? "-" : p.interfix) << '\t'
          << p.head_surface << '\t' << p.compound << '\n';
    }
  }
}

std::vector<ModifierCandidate> load_candidates_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open candidate file: " + path);
  std::map<std::string, std::vector<SupportPair>> by_modifier;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string modifier, ifx, head, compound;
    if (!std::getline(ls, modifier, '\t') || !std::getline(ls, ifx, '\t') ||
        !std::getline(ls, head, '\t') || !std::getline(ls, compound)) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed candidate line");
    }
    if (ifx == "-") ifx.clear();
    by_modifier[modifier].push_back({head, ifx, compound});
  }
  std::vector<ModifierCandidate> out;
  for (auto& [modifier, pairs] : by_modifier) {
    std::sort(pairs.begin(), pairs.end());
    out.push_back({modifier, std::move(pairs)});
  }
  return out;
}

}  // namespace casplit
