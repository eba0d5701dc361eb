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

#include "casplit/preprocess.hpp"

#include <sstream>

namespace casplit {

namespace {

bool in_scope(const std::string& token, const SplitPolicy& policy,
              const FrequencyTable* freq_table,
              const std::unordered_set<std::string>* translation_vocab) {
  switch (policy.scope) {
    case SplitPolicy::Scope::All:
      return true;
    case SplitPolicy::Scope::OovOnly:
      if (!translation_vocab) {
        throw std::invalid_argument("preprocess: oov_only policy requires a translation vocabulary");
      }
      return translation_vocab->count(token) == 0;
    case SplitPolicy::Scope::RareBelow:
      if (!freq_table) {
        throw std::invalid_argument("preprocess: rare_below policy requires a count table");
      }
      return freq_table->count(token) < static_cast<std::uint64_t>(policy.count_threshold);
  }
  return false;
}

std::string render_tokens(const std::vector<Component>& components) {
  std::string out;
  for (size_t i = 0; i < components.size(); ++i) {
    if (i > 0) out += ' ';
    out += components[i].surface;
  }
  return out;
}

}  // namespace

PreprocessReport preprocess_corpus(std::istream& corpus, std::ostream& out,
                                   std::ostream& manifest, const SplitModel& model,
                                   const EmbeddingStore& store, const NeighborIndex& index,
                                   const InductionConfig& config,
                                   const FrequencyTable* freq_table, const SplitPolicy& policy,
                                   const std::unordered_set<std::string>* translation_vocab) {
  PreprocessReport report;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(corpus, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string token;
    std::size_t tokno = 0;
    bool first = true;
    while (ls >> token) {
      ++report.tokens_seen;
      std::string rendering = token;
      if (in_scope(token, policy, freq_table, translation_vocab)) {
        ++report.tokens_in_scope;
        auto components = split_with_backoff(token, model, store, index, config,
                                             freq_table, policy);
        if (components.size() > 1) {
          rendering = render_tokens(components);
          ++report.tokens_split;
          report.types_split.insert(token);
          manifest << lineno << ':' << tokno << '\t' << token << '\t' << rendering << '\n';
        }
      }
      if (!first) out << ' ';
      out << rendering;
      first = false;
      ++tokno;
    }
    out << '\n';
  }
  return report;
}

std::vector<ManifestEntry> load_manifest(std::istream& manifest) {
  std::vector<ManifestEntry> entries;
  std::string line;
  long lineno = 0;
  while (std::getline(manifest, line)) {
    ++lineno;
    if (line.empty()) continue;
    ManifestEntry e;
    std::istringstream ls(line);
    std::string pos;
    if (!std::getline(ls, pos, '\t') || !std::getline(ls, e.original, '\t') ||
        !std::getline(ls, e.rendering)) {
      throw std::runtime_error("manifest:" + std::to_string(lineno) + ": malformed entry");
    }
    auto colon = pos.find(':');
    if (colon == std::string::npos) {
      throw std::runtime_error("manifest:" + std::to_string(lineno) + ": malformed position");
    }
    e.line = std::stoull(pos.substr(0, colon));
    e.token = std::stoull(pos.substr(colon + 1));
    entries.push_back(std::move(e));
  }
  return entries;
}

void reconstruct_corpus(std::istream& split_corpus, const std::vector<ManifestEntry>& manifest,
                        std::ostream& out) {
  size_t next = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(split_corpus, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);

    std::vector<std::string> original;
    std::size_t orig_tokno = 0;
    size_t i = 0;
    while (i < tokens.size()) {
      if (next < manifest.size() && manifest[next].line == lineno &&
          manifest[next].token == orig_tokno) {
        std::istringstream rs(manifest[next].rendering);
        size_t n_parts = 0;
        while (rs >> tok) ++n_parts;
        original.push_back(manifest[next].original);
        i += n_parts;
        ++next;
      } else {
        original.push_back(tokens[i]);
        ++i;
      }
      ++orig_tokno;
    }
    for (size_t j = 0; j < original.size(); ++j) {
      if (j > 0) out << ' ';
      out << original[j];
    }
    out << '\n';
  }
}

}  // namespace casplit
