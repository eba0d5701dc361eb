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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "casplit/evaluation.hpp"
#include "casplit/pca.hpp"
#include "casplit/preprocess.hpp"

using namespace casplit;

namespace {

// Input errors the user can fix map to exit 2, like flag errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOpts {
  std::string embeddings_path;
  std::string format = "text";
  std::string model_path;
  std::string eval_mode = "exact";
  int trees = 8;
  int search_breadth = 1024;
  std::uint64_t seed = 0;
};

EmbeddingFormat parse_format(const std::string& f) {
  if (f == "text") return EmbeddingFormat::Text;
  if (f == "binary") return EmbeddingFormat::Binary;
  throw UsageError("unknown embedding format: " + f);
}

IndexMode parse_mode(const std::string& m) {
  if (m == "exact") return IndexMode::Exact;
  if (m == "approx" || m == "approximate") return IndexMode::Approximate;
  throw UsageError("unknown eval mode: " + m);
}

NeighborIndex build_index(const EmbeddingStore& store, const CommonOpts& opts, IndexMode mode) {
  NeighborIndex::ApproxParams params;
  params.tree_count = opts.trees;
  params.search_breadth = opts.search_breadth;
  params.seed = opts.seed;
  return NeighborIndex::build(store, mode, params);
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open file: " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

void print_stats(const ModelStats& s, const SplitModel& model) {
  std::cout << "mean_hit_rate\t" << s.mean_hit_rate << "\n"
            << "mean_hit_rate_support_weighted\t" << s.mean_hit_rate_support_weighted << "\n"
            << "mean_cosine\t" << s.mean_cosine << "\n"
            << "pct_modifiers_with_prototypes\t" << s.pct_with_prototypes << "\n"
            << "mean_prototypes_per_modifier\t" << s.mean_prototypes << "\n"
            << "retained_modifiers\t" << model.modifiers.size() << "\n";
  std::cout << "# paper reference, not asserted at desk scale:\n"
               "#   t=10,rank=80: mean hit rate 36%, mean cosine 0.45, "
               "2.91% with prototypes, 2.25 prototypes/modifier\n"
               "#   t=6,rank=80: hit rate 85.9% (approximate) vs 60.9% (exact)\n";
}

int run(int argc, char** argv) {
  CLI::App app{"Compound splitting by word-embedding analogy"};
  app.require_subcommand(1);
  CommonOpts opts;

  // ---- extract ----
  auto* extract = app.add_subcommand("extract", "Enumerate modifier candidates and support sets");
  std::string out_path, candidates_path;
  int min_prefix_len = kDefaultMinPrefixLen;
  extract->add_option("--embeddings", opts.embeddings_path, "embedding file")
      ->required()->check(CLI::ExistingFile);
  extract->add_option("--format", opts.format, "embedding format: text|binary");
  extract->add_option("--min-prefix-len", min_prefix_len, "minimum modifier length");
  extract->add_option("--out", out_path, "candidate TSV output")->required();

  // ---- induce ----
  auto* induce = app.add_subcommand("induce", "Induce prototype direction vectors");
  InductionConfig icfg;
  double cosine_threshold = -1.0;
  induce->add_option("--embeddings", opts.embeddings_path)->required()->check(CLI::ExistingFile);
  induce->add_option("--format", opts.format);
  induce->add_option("--candidates", candidates_path, "reuse a candidate TSV instead of re-extracting")
      ->check(CLI::ExistingFile);
  induce->add_option("--min-support", icfg.t_minsupport, "minimum evidence set size");
  induce->add_option("--rank", icfg.t_rank, "rank threshold");
  induce->add_option("--cosine-threshold", cosine_threshold, "optional cosine threshold (unset if < 0)");
  induce->add_option("--evidence-cap", icfg.evidence_cap, "evaluated pair pool cap");
  induce->add_option("--eval-mode", opts.eval_mode, "exact|approx");
  induce->add_option("--trees", opts.trees, "approximate index trees");
  induce->add_option("--search-breadth", opts.search_breadth, "approximate search breadth");
  induce->add_option("--seed", opts.seed, "RNG seed");
  induce->add_option("--min-prefix-len", min_prefix_len);
  induce->add_option("--out", out_path, "model output file")->required();

  // ---- stats ----
  auto* stats = app.add_subcommand("stats", "Report model statistics");
  stats->add_option("--embeddings", opts.embeddings_path)->required()->check(CLI::ExistingFile);
  stats->add_option("--format", opts.format);
  stats->add_option("--model", opts.model_path)->required()->check(CLI::ExistingFile);
  stats->add_option("--candidates", candidates_path)->check(CLI::ExistingFile);
  stats->add_option("--min-prefix-len", min_prefix_len);

  // ---- split ----
  auto* split = app.add_subcommand("split", "Split words with a trained model");
  std::vector<std::string> words;
  std::string input_path;
  bool show_interfix = false;
  int max_depth = kDefaultMaxDepth;
  split->add_option("--embeddings", opts.embeddings_path)->required()->check(CLI::ExistingFile);
  split->add_option("--format", opts.format);
  split->add_option("--model", opts.model_path)->required()->check(CLI::ExistingFile);
  split->add_option("--word", words, "word(s) to split");
  split->add_option("--input", input_path, "file with one word per line")->check(CLI::ExistingFile);
  split->add_option("--max-depth", max_depth, "recursion depth cap");
  split->add_flag("--show-interfix", show_interfix, "render interfix markers");
  split->add_option("--eval-mode", opts.eval_mode);
  split->add_option("--trees", opts.trees);
  split->add_option("--search-breadth", opts.search_breadth);
  split->add_option("--seed", opts.seed);

  // ---- evaluate ----
  auto* evaluate = app.add_subcommand("evaluate", "Score splits against a gold standard");
  std::string gold_path;
  bool buckets = false;
  evaluate->add_option("--embeddings", opts.embeddings_path)->required()->check(CLI::ExistingFile);
  evaluate->add_option("--format", opts.format);
  evaluate->add_option("--model", opts.model_path)->required()->check(CLI::ExistingFile);
  evaluate->add_option("--gold", gold_path, "gold TSV")->required()->check(CLI::ExistingFile);
  evaluate->add_flag("--buckets", buckets, "report per-ambiguity buckets");
  evaluate->add_option("--min-prefix-len", min_prefix_len);
  evaluate->add_option("--eval-mode", opts.eval_mode);
  evaluate->add_option("--trees", opts.trees);
  evaluate->add_option("--search-breadth", opts.search_breadth);
  evaluate->add_option("--seed", opts.seed);

  // ---- baseline ----
  auto* baseline = app.add_subcommand("baseline", "Frequency-based geometric-mean splitter");
  std::string counts_path, corpus_path;
  int min_part_len = 4, max_parts = 4;
  baseline->add_option("--counts", counts_path, "count TSV")->check(CLI::ExistingFile);
  baseline->add_option("--corpus", corpus_path, "tokenized corpus to count")->check(CLI::ExistingFile);
  baseline->add_option("--word", words);
  baseline->add_option("--input", input_path)->check(CLI::ExistingFile);
  baseline->add_option("--min-part-len", min_part_len);
  baseline->add_option("--max-parts", max_parts);
  baseline->add_flag("--show-interfix", show_interfix);

  // ---- preprocess ----
  auto* preprocess = app.add_subcommand("preprocess", "Split a corpus under a splitting policy");
  std::string policy_str = "all", backoff_str = "none", manifest_path, tvocab_path;
  preprocess->add_option("--embeddings", opts.embeddings_path)->required()->check(CLI::ExistingFile);
  preprocess->add_option("--format", opts.format);
  preprocess->add_option("--model", opts.model_path)->required()->check(CLI::ExistingFile);
  preprocess->add_option("--corpus", corpus_path)->required()->check(CLI::ExistingFile);
  preprocess->add_option("--counts", counts_path)->check(CLI::ExistingFile);
  preprocess->add_option("--policy", policy_str, "oov | rare:N | all");
  preprocess->add_option("--backoff", backoff_str, "none | freq");
  preprocess->add_option("--translation-vocab", tvocab_path, "vocabulary file for the oov policy")
      ->check(CLI::ExistingFile);
  preprocess->add_option("--max-depth", max_depth);
  preprocess->add_option("--out", out_path)->required();
  preprocess->add_option("--manifest", manifest_path)->required();
  preprocess->add_option("--eval-mode", opts.eval_mode);
  preprocess->add_option("--trees", opts.trees);
  preprocess->add_option("--search-breadth", opts.search_breadth);
  preprocess->add_option("--seed", opts.seed);

  // ---- project ----
  auto* project = app.add_subcommand("project", "2-d PCA projection of selected words");
  std::string words_file;
  project->add_option("--embeddings", opts.embeddings_path)->required()->check(CLI::ExistingFile);
  project->add_option("--format", opts.format);
  project->add_option("--word", words, "word(s) to project");
  project->add_option("--words-file", words_file, "file with one word per line")->check(CLI::ExistingFile);
  project->add_option("--out", out_path, "projection TSV output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  auto load_store = [&]() {
    return EmbeddingStore::load(opts.embeddings_path, parse_format(opts.format));
  };
  auto gather_words = [&](const std::string& file) {
    std::vector<std::string> all = words;
    if (!file.empty()) {
      auto more = read_lines(file);
      all.insert(all.end(), more.begin(), more.end());
    }
    if (all.empty()) throw UsageError("no input words; use --word or --input");
    return all;
  };

  if (*extract) {
    EmbeddingStore store = load_store();
    PrefixIndex pidx(store.words(), min_prefix_len);
    CandidateStats cstats;
    auto candidates = extract_candidates(store, pidx, kDefaultInterfixes, &cstats);
    save_candidates_tsv(candidates, out_path);
    std::cerr << "raw modifiers: " << cstats.raw_modifiers
              << ", retained (support >= 2): " << cstats.retained_modifiers
              << ", mean support: " << cstats.mean_support << "\n"
              << "note: casing variants of a head count as distinct support pairs\n";
  } else if (*induce) {
    EmbeddingStore store = load_store();
    if (cosine_threshold >= 0.0) icfg.t_cosine = cosine_threshold;
    icfg.eval_mode = parse_mode(opts.eval_mode);
    icfg.rng_seed = opts.seed;
    icfg.validate();
    std::vector<ModifierCandidate> candidates;
    if (!candidates_path.empty()) {
      candidates = load_candidates_tsv(candidates_path);
    } else {
      PrefixIndex pidx(store.words(), min_prefix_len);
      candidates = extract_candidates(store, pidx);
    }
    NeighborIndex index = build_index(store, opts, icfg.eval_mode);
    SplitModel model = induce_prototypes(candidates, store, index, icfg);
    save_model(model, out_path);
    std::cerr << "modifiers with prototypes: " << model.modifiers.size() << " of "
              << candidates.size() << "\n";
  } else if (*stats) {
    EmbeddingStore store = load_store();
    SplitModel model = load_model(opts.model_path, store);
    std::vector<ModifierCandidate> candidates;
    if (!candidates_path.empty()) {
      candidates = load_candidates_tsv(candidates_path);
    } else {
      PrefixIndex pidx(store.words(), min_prefix_len);
      candidates = extract_candidates(store, pidx, model.interfixes);
    }
    print_stats(model_stats(model, candidates), model);
  } else if (*split) {
    EmbeddingStore store = load_store();
    SplitModel model = load_model(opts.model_path, store);
    NeighborIndex index = build_index(store, opts, parse_mode(opts.eval_mode));
    for (const std::string& w : gather_words(input_path)) {
      auto components = decompound_recursive(w, model, store, index, model.config, max_depth);
      std::cout << w << '\t' << render_components(components, show_interfix) << '\n';
    }
  } else if (*evaluate) {
    EmbeddingStore store = load_store();
    SplitModel model = load_model(opts.model_path, store);
    GoldLoadStats gstats;
    auto gold = load_gold(gold_path, min_prefix_len, /*strict=*/false, &gstats);
    if (gold.empty()) throw UsageError("gold file has no usable entries: " + gold_path);
    std::cerr << "gold entries: " << gstats.total_lines << " lines, "
              << gstats.filtered_short_modifier << " filtered (modifier < "
              << min_prefix_len << " chars), " << gstats.rejected_malformed << " rejected\n";
    NeighborIndex index = build_index(store, opts, parse_mode(opts.eval_mode));
    std::vector<SplitDecision> decisions;
    decisions.reserve(gold.size());
    for (const GoldEntry& g : gold) {
      decisions.push_back(decompound(g.compound, model, store, index, model.config));
    }
    PrefixIndex pidx(store.words(), min_prefix_len);
    EvalReport report = buckets ? score_bucketed(decisions, gold, pidx, model.interfixes)
                                : score(decisions, gold);
    std::cout << "accuracy\t" << report.accuracy << "\ncoverage\t" << report.coverage
              << "\nn_total\t" << report.n_total << "\nn_split\t" << report.n_split
              << "\nn_correct\t" << report.n_correct << "\n";
    for (const auto& [amb, sub] : report.buckets) {
      std::cout << "bucket\t" << amb << "\t" << sub.accuracy << "\t" << sub.coverage
                << "\t" << sub.n_total << "\n";
    }
    for (const PaperReference& ref : {kPaperFullTestSet, kPaperMosesPartial, kPaperMosesFull}) {
      std::cout << "# paper reference, not asserted at desk scale: " << ref.label
                << " acc " << ref.accuracy << " cov " << ref.coverage << "\n";
    }
  } else if (*baseline) {
    if (counts_path.empty() == corpus_path.empty()) {
      throw UsageError("baseline needs exactly one of --counts or --corpus");
    }
    FrequencyTable table;
    if (!counts_path.empty()) {
      table = FrequencyTable::load_tsv(counts_path);
    } else {
      std::ifstream corpus(corpus_path);
      table = FrequencyTable::count_corpus(corpus);
    }
    for (const std::string& w : gather_words(input_path)) {
      auto components = geometric_split(w, table, min_part_len, kDefaultInterfixes, max_parts);
      std::cout << w << '\t' << render_components(components, show_interfix) << '\n';
    }
  } else if (*preprocess) {
    EmbeddingStore store = load_store();
    SplitModel model = load_model(opts.model_path, store);
    NeighborIndex index = build_index(store, opts, parse_mode(opts.eval_mode));

    SplitPolicy policy;
    policy.max_depth = max_depth;
    if (policy_str == "all") {
      policy.scope = SplitPolicy::Scope::All;
    } else if (policy_str == "oov") {
      policy.scope = SplitPolicy::Scope::OovOnly;
    } else if (policy_str.rfind("rare:", 0) == 0) {
      policy.scope = SplitPolicy::Scope::RareBelow;
      policy.count_threshold = std::stoi(policy_str.substr(5));
      if (policy.count_threshold < 1) throw UsageError("rare:N requires N >= 1");
    } else {
      throw UsageError("unknown policy: " + policy_str + " (use oov | rare:N | all)");
    }
    if (backoff_str == "freq") {
      policy.backoff = SplitPolicy::Backoff::Frequency;
    } else if (backoff_str != "none") {
      throw UsageError("unknown backoff: " + backoff_str + " (use none | freq)");
    }

    std::optional<FrequencyTable> table;
    if (!counts_path.empty()) table = FrequencyTable::load_tsv(counts_path);
    if ((policy.scope == SplitPolicy::Scope::RareBelow ||
         policy.backoff == SplitPolicy::Backoff::Frequency) && !table) {
      throw UsageError("this policy requires --counts");
    }
    std::optional<std::unordered_set<std::string>> tvocab;
    if (policy.scope == SplitPolicy::Scope::OovOnly) {
      if (tvocab_path.empty()) throw UsageError("policy oov requires --translation-vocab");
      auto lines = read_lines(tvocab_path);
      tvocab.emplace(lines.begin(), lines.end());
    }

    std::ifstream corpus(corpus_path);
    std::ofstream out(out_path);
    std::ofstream manifest(manifest_path);
    if (!out || !manifest) throw std::runtime_error("cannot open output files");
    auto report = preprocess_corpus(corpus, out, manifest, model, store, index, model.config,
                                    table ? &*table : nullptr, policy,
                                    tvocab ? &*tvocab : nullptr);
    std::cerr << "tokens: " << report.tokens_seen << ", in scope: " << report.tokens_in_scope
              << ", splits (tokens): " << report.tokens_split
              << ", splits (types): " << report.types_split.size() << "\n";
  } else if (*project) {
    EmbeddingStore store = load_store();
    auto report = project_words(store, gather_words(words_file));
    save_projection_tsv(report, out_path);
    for (const auto& w : report.duplicates_dropped) {
      std::cerr << "warning: duplicate word dropped: " << w << "\n";
    }
    for (const auto& w : report.missing_words) {
      std::cerr << "warning: word not in vocabulary: " << w << "\n";
    }
    std::cerr << "explained variance (2 components): " << report.explained_variance << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
