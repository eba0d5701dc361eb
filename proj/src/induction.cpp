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

#include "casplit/induction.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace casplit {

void InductionConfig::validate() const {
  if (t_minsupport < 2) throw std::invalid_argument("config: t_minsupport must be >= 2");
  if (t_rank < 1) throw std::invalid_argument("config: t_rank must be >= 1");
  if (t_cosine && (*t_cosine <= 0.0 || *t_cosine > 1.0)) {
    throw std::invalid_argument("config: t_cosine must be in (0, 1]");
  }
  if (evidence_cap < t_minsupport) {
    throw std::invalid_argument("config: evidence_cap must be >= t_minsupport");
  }
}

Vector direction_vector(const EmbeddingStore& store, const SupportPair& pair) {
  auto compound = store.vector(pair.compound);
  auto head = store.vector(pair.head_surface);
  if (!compound) throw std::invalid_argument("direction_vector: missing vector for '" + pair.compound + "'");
  if (!head) throw std::invalid_argument("direction_vector: missing vector for '" + pair.head_surface + "'");
  return *compound - *head;
}

EvalResult evaluate_pair(const Eigen::Ref<const Vector>& direction, const SupportPair& pair,
                         const EmbeddingStore& store, const NeighborIndex& index,
                         const InductionConfig& config) {
  auto head = store.vector(pair.head_surface);
  auto compound = store.vector(pair.compound);
  if (!head) throw std::invalid_argument("evaluate_pair: missing vector for '" + pair.head_surface + "'");
  if (!compound) throw std::invalid_argument("evaluate_pair: missing vector for '" + pair.compound + "'");
  Vector predicted = *head + direction;

  EvalResult r;
  r.cosine = cosine(predicted, *compound);
  r.rank = index.rank_of(predicted, pair.compound, config.t_rank);
  r.hit = r.rank.has_value() && (!config.t_cosine || r.cosine >= *config.t_cosine);
  return r;
}

namespace {

std::uint64_t stable_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

/// Pool of pairs a direction vector is evaluated against: the remaining
/// support, sampled down to evidence_cap when larger. The RNG is seeded
/// from the run seed plus the source pair, so results do not depend on
/// evaluation order or worker count.
std::vector<SupportPair> evaluation_pool(const std::vector<SupportPair>& remaining,
                                         const SupportPair& source,
                                         const std::string& modifier,
                                         const InductionConfig& config) {
  if (remaining.size() <= static_cast<size_t>(config.evidence_cap)) return remaining;
  std::seed_seq seq{config.rng_seed, stable_hash(modifier), stable_hash(source.compound),
                    stable_hash(source.interfix + "|" + source.head_surface)};
  std::mt19937_64 rng(seq);
  std::vector<SupportPair> pool;
  pool.reserve(config.evidence_cap);
  std::sample(remaining.begin(), remaining.end(), std::back_inserter(pool),
              config.evidence_cap, rng);
  return pool;
}

struct DirectionEval {
  const SupportPair* source = nullptr;
  Vector direction;
  std::vector<SupportPair> evidence;
  double mean_cosine = 0.0;
};

bool better(const DirectionEval& a, const DirectionEval& b) {
  if (a.evidence.size() != b.evidence.size()) return a.evidence.size() > b.evidence.size();
  if (a.mean_cosine != b.mean_cosine) return a.mean_cosine > b.mean_cosine;
  return *a.source < *b.source;  // lexicographically smallest compound
}

}  // namespace

SplitModel induce_prototypes(const std::vector<ModifierCandidate>& candidates,
                             const EmbeddingStore& store, const NeighborIndex& index,
                             const InductionConfig& config) {
  config.validate();
  SplitModel model;
  model.config = config;

  for (const ModifierCandidate& cand : candidates) {
    std::vector<SupportPair> remaining = cand.support;
    std::vector<Prototype> protos;

    while (remaining.size() >= static_cast<size_t>(config.t_minsupport)) {
      DirectionEval best;
      for (const SupportPair& src : remaining) {
        DirectionEval cur;
        cur.source = &src;
        cur.direction = direction_vector(store, src);
        double cos_sum = 0.0;
        for (const SupportPair& q : evaluation_pool(remaining, src, cand.modifier, config)) {
          EvalResult r = evaluate_pair(cur.direction, q, store, index, config);
          if (r.hit) {
            cur.evidence.push_back(q);
            cos_sum += r.cosine;
          }
        }
        cur.mean_cosine = cur.evidence.empty() ? 0.0 : cos_sum / cur.evidence.size();
        if (!best.source || better(cur, best)) best = std::move(cur);
      }
      if (!best.source || best.evidence.size() < static_cast<size_t>(config.t_minsupport)) break;

      Prototype p;
      p.modifier = cand.modifier;
      p.source = *best.source;
      p.direction = std::move(best.direction);
      p.evidence = std::move(best.evidence);
      p.mean_evidence_cosine = best.mean_cosine;
      p.hit_rate = hit_rate(p, remaining, store, index, config);

      std::vector<SupportPair> next;
      next.reserve(remaining.size());
      for (const SupportPair& q : remaining) {
        if (!std::binary_search(p.evidence.begin(), p.evidence.end(), q)) next.push_back(q);
      }
      remaining = std::move(next);
      protos.push_back(std::move(p));
    }
    if (!protos.empty()) model.modifiers.emplace(cand.modifier, std::move(protos));
  }
  return model;
}

double hit_rate(const Prototype& prototype, const std::vector<SupportPair>& pairs,
                const EmbeddingStore& store, const NeighborIndex& index,
                const InductionConfig& config) {
  if (pairs.empty()) throw std::invalid_argument("hit_rate: empty support set");
  size_t hits = 0;
  for (const SupportPair& q : pairs) {
    if (evaluate_pair(prototype.direction, q, store, index, config).hit) ++hits;
  }
  return static_cast<double>(hits) / pairs.size();
}

ModelStats model_stats(const SplitModel& model, const std::vector<ModifierCandidate>& candidates) {
  ModelStats s;
  double hr_sum = 0.0, hr_weighted_sum = 0.0, cos_sum = 0.0;
  double weight_sum = 0.0;
  size_t n_protos = 0;
  for (const auto& [modifier, protos] : model.modifiers) {
    double mod_hr = 0.0;
    for (const Prototype& p : protos) {
      mod_hr += p.hit_rate;
      hr_weighted_sum += p.hit_rate * p.evidence.size();
      weight_sum += p.evidence.size();
      cos_sum += p.mean_evidence_cosine;
      ++n_protos;
    }
    mod_hr /= protos.size();
    s.per_modifier_hit_rate.emplace(modifier, mod_hr);
    hr_sum += mod_hr;
  }
  const size_t n_mods = model.modifiers.size();
  s.mean_hit_rate = n_mods ? hr_sum / n_mods : 0.0;
  s.mean_hit_rate_support_weighted = weight_sum > 0 ? hr_weighted_sum / weight_sum : 0.0;
  s.mean_cosine = n_protos ? cos_sum / n_protos : 0.0;
  s.pct_with_prototypes = candidates.empty() ? 0.0 : 100.0 * n_mods / candidates.size();
  s.mean_prototypes = n_mods ? static_cast<double>(n_protos) / n_mods : 0.0;
  return s;
}

namespace {

const char* kMagic = "casplit-model";
constexpr int kVersion = 1;

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string ifx_token(const std::string& ifx) { return ifx.empty() ? "-" : ifx; }
std::string ifx_parse(const std::string& tok) { return tok == "-" ? "" : tok; }

}  // namespace

void save_model(const SplitModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file: " + path);
  const InductionConfig& c = model.config;
  out << kMagic << ' ' << kVersion << '\n';
  out << "minsupport " << c.t_minsupport << '\n';
  out << "rank " << c.t_rank << '\n';
  out << "cosine " << (c.t_cosine ? fmt_double(*c.t_cosine) : "-") << '\n';
  out << "evidence_cap " << c.evidence_cap << '\n';
  out << "eval_mode " << (c.eval_mode == IndexMode::Exact ? "exact" : "approximate") << '\n';
  out << "seed " << c.rng_seed << '\n';
  out << "interfixes";
  for (const auto& ifx : model.interfixes) out << ' ' << ifx_token(ifx);
  out << '\n';
  for (const auto& [modifier, protos] : model.modifiers) {
    out << "modifier " << modifier << ' ' << protos.size() << '\n';
    for (const Prototype& p : protos) {
      out << "prototype " << ifx_token(p.source.interfix) << ' ' << p.source.head_surface
          << ' ' << p.source.compound << ' ' << fmt_double(p.hit_rate) << ' '
          << fmt_double(p.mean_evidence_cosine) << ' ' << p.evidence.size() << '\n';
      for (const SupportPair& q : p.evidence) {
        out << "evidence " << ifx_token(q.interfix) << ' ' << q.head_surface << ' '
            << q.compound << '\n';
      }
    }
  }
  out << "end\n";
  if (!out) throw std::runtime_error("write failure: " + path);
}

SplitModel load_model(const std::string& path, const EmbeddingStore& store) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  auto fail = [&](const std::string& what) -> std::runtime_error {
    return std::runtime_error(path + ": " + what);
  };

  SplitModel model;
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != kMagic || version != kVersion) {
    throw fail("not a casplit model file (or unsupported version)");
  }
  std::string key, tok;
  InductionConfig& c = model.config;
  in >> key >> c.t_minsupport;
  in >> key >> c.t_rank;
  in >> key >> tok;
  if (tok != "-") c.t_cosine = std::stod(tok);
  in >> key >> c.evidence_cap;
  in >> key >> tok;
  c.eval_mode = (tok == "approximate") ? IndexMode::Approximate : IndexMode::Exact;
  in >> key >> c.rng_seed;
  if (!in) throw fail("malformed config block");

  in >> key;
  if (key != "interfixes") throw fail("expected interfixes line");
  model.interfixes.clear();
  std::string rest;
  std::getline(in, rest);
  std::istringstream rs(rest);
  while (rs >> tok) model.interfixes.push_back(ifx_parse(tok));

  while (in >> key) {
    if (key == "end") return model;
    if (key != "modifier") throw fail("expected 'modifier', got '" + key + "'");
    std::string modifier;
    size_t n_protos = 0;
    if (!(in >> modifier >> n_protos)) throw fail("malformed modifier line");
    std::vector<Prototype> protos;
    for (size_t i = 0; i < n_protos; ++i) {
      std::string hr, mc;
      size_t n_ev = 0;
      Prototype p;
      p.modifier = modifier;
      if (!(in >> key >> tok >> p.source.head_surface >> p.source.compound >> hr >> mc >> n_ev) ||
          key != "prototype") {
        throw fail("malformed prototype line");
      }
      p.source.interfix = ifx_parse(tok);
      p.hit_rate = std::stod(hr);
      p.mean_evidence_cosine = std::stod(mc);
      p.direction = direction_vector(store, p.source);
      for (size_t j = 0; j < n_ev; ++j) {
        SupportPair q;
        if (!(in >> key >> tok >> q.head_surface >> q.compound) || key != "evidence") {
          throw fail("malformed evidence line");
        }
        q.interfix = ifx_parse(tok);
        p.evidence.push_back(std::move(q));
      }
      protos.push_back(std::move(p));
    }
    model.modifiers.emplace(modifier, std::move(protos));
  }
  throw fail("missing 'end' marker");
}

}  // namespace casplit
