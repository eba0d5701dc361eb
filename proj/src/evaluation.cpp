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

#include "casplit/evaluation.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_map>

namespace casplit {

namespace {

bool equal_ignoring_first_case(const std::string& a, const std::string& b) {
  if (a.size() != b.size() || a.empty()) return a == b;
  if (std::tolower(static_cast<unsigned char>(a[0])) !=
      std::tolower(static_cast<unsigned char>(b[0]))) {
    return false;
  }
  return a.compare(1, std::string::npos, b, 1, std::string::npos) == 0;
}

bool reconstructs(const GoldEntry& e) {
  const std::string prefix = e.modifier + e.interfix;
  if (e.compound.size() != prefix.size() + e.head.size()) return false;
  if (e.compound.compare(0, prefix.size(), prefix) != 0) return false;
  return equal_ignoring_first_case(e.compound.substr(prefix.size()), e.head);
}

}  // namespace

std::vector<GoldEntry> load_gold(const std::string& path, int min_prefix_len, bool strict,
                                 GoldLoadStats* stats) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open gold file: " + path);
  std::vector<GoldEntry> out;
  GoldLoadStats local;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    ++local.total_lines;
    std::istringstream ls(line);
    GoldEntry e;
    std::string diag;
    if (!std::getline(ls, e.compound, '\t') || !std::getline(ls, e.modifier, '\t') ||
        !std::getline(ls, e.head, '\t')) {
      // head may be the last field when no interfix column is present
      std::istringstream retry(line);
      if (!std::getline(retry, e.compound, '\t') || !std::getline(retry, e.modifier, '\t') ||
          !std::getline(retry, e.head)) {
        diag = "expected 'compound TAB modifier TAB head [TAB interfix]'";
      }
    } else {
      std::getline(ls, e.interfix);
    }
    if (diag.empty() && !reconstructs(e)) {
      diag = "entry does not reconstruct its compound";
    }
    if (!diag.empty()) {
      if (strict) throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + diag);
      std::cerr << path << ":" << lineno << ": skipped: " << diag << "\n";
      ++local.rejected_malformed;
      continue;
    }
    if (e.modifier.size() < static_cast<size_t>(min_prefix_len)) {
      ++local.filtered_short_modifier;
      continue;
    }
    out.push_back(std::move(e));
  }
  if (stats) *stats = local;
  return out;
}

namespace {

bool decision_correct(const SplitDecision& d, const GoldEntry& g) {
  if (!d.split) return false;
  // Correct iff the head starts at the gold offset: characters on the
  // boundary may sit in the interfix or the modifier interchangeably.
  return d.split->modifier.size() + d.split->interfix.size() ==
         g.modifier.size() + g.interfix.size();
}

void tally(EvalReport& r, bool split, bool correct) {
  ++r.n_total;
  if (split) ++r.n_split;
  if (correct) ++r.n_correct;
}

void finalize(EvalReport& r) {
  r.accuracy = r.n_total ? static_cast<double>(r.n_correct) / r.n_total : 0.0;
  r.coverage = r.n_total ? static_cast<double>(r.n_split) / r.n_total : 0.0;
}

const SplitDecision& decision_for(const std::unordered_map<std::string, const SplitDecision*>& by_word,
                                  const GoldEntry& g) {
  auto it = by_word.find(g.compound);
  if (it == by_word.end()) {
    throw std::invalid_argument("score: no decision for gold compound '" + g.compound + "'");
  }
  return *it->second;
}

std::unordered_map<std::string, const SplitDecision*> index_decisions(
    const std::vector<SplitDecision>& decisions, size_t n_gold) {
  std::unordered_map<std::string, const SplitDecision*> by_word;
  for (const SplitDecision& d : decisions) by_word.emplace(d.word, &d);
  if (by_word.size() != n_gold) {
    throw std::invalid_argument("score: decisions do not cover exactly the gold compounds");
  }
  return by_word;
}

}  // namespace

EvalReport score(const std::vector<SplitDecision>& decisions, const std::vector<GoldEntry>& gold) {
  auto by_word = index_decisions(decisions, gold.size());
  EvalReport r;
  for (const GoldEntry& g : gold) {
    const SplitDecision& d = decision_for(by_word, g);
    tally(r, d.split.has_value(), decision_correct(d, g));
  }
  finalize(r);
  return r;
}

EvalReport score_bucketed(const std::vector<SplitDecision>& decisions,
                          const std::vector<GoldEntry>& gold, const PrefixIndex& vocab_index,
                          const std::vector<std::string>& interfixes) {
  auto by_word = index_decisions(decisions, gold.size());
  EvalReport r;
  for (const GoldEntry& g : gold) {
    const SplitDecision& d = decision_for(by_word, g);
    const bool split = d.split.has_value();
    const bool correct = decision_correct(d, g);
    tally(r, split, correct);
    tally(r.buckets[ambiguity_count(g.compound, vocab_index, interfixes)], split, correct);
  }
  finalize(r);
  for (auto& [amb, sub] : r.buckets) finalize(sub);
  return r;
}

int ambiguity_count(const std::string& word, const PrefixIndex& vocab_index,
                    const std::vector<std::string>& interfixes) {
  std::vector<int> lens = vocab_index.prefix_lengths_of(word);
  int count = 0;
  for (size_t i = 0; i < lens.size(); ++i) {
    bool interfix_extension = false;
    for (size_t j = 0; j < i && !interfix_extension; ++j) {
      const int gap = lens[i] - lens[j];
      for (const std::string& ifx : interfixes) {
        if (!ifx.empty() && static_cast<int>(ifx.size()) == gap &&
            word.compare(lens[j], ifx.size(), ifx) == 0) {
          interfix_extension = true;
          break;
        }
      }
    }
    if (!interfix_extension) ++count;
  }
  return count;
}

}  // namespace casplit
