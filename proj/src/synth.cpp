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

#include "casplit/synth.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace casplit {

void SynthConfig::validate() const {
  if (n_heads < 1 || n_modifiers < 1 || senses_per_modifier < 1 || pairs_per_sense < 1 || dim < 1) {
    throw std::invalid_argument("synth config: all counts must be >= 1");
  }
  if (noise_sigma < 0.0) throw std::invalid_argument("synth config: noise_sigma must be >= 0");
  if (senses_per_modifier * pairs_per_sense > n_heads) {
    throw std::invalid_argument("synth config: need n_heads >= senses_per_modifier * pairs_per_sense");
  }
}

namespace {

std::string zero_pad(int i, int width) {
  std::string s = std::to_string(i);
  while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
  return s;
}

Vector random_unit(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  for (int j = 0; j < dim; ++j) v[j] = gauss(rng);
  double n = v.norm();
  if (n == 0.0) v[0] = 1.0; else v /= n;
  return v;
}

}  // namespace

SynthCorpus synth_corpus(const SynthConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.rng_seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  SynthCorpus out;
  const int n_compounds = cfg.n_modifiers * cfg.senses_per_modifier * cfg.pairs_per_sense;
  const int n_words = cfg.n_heads + cfg.n_modifiers + n_compounds;
  out.words.reserve(n_words);
  out.matrix.resize(n_words, cfg.dim);
  Eigen::Index row = 0;

  std::vector<std::string> heads(cfg.n_heads);
  for (int h = 0; h < cfg.n_heads; ++h) {
    heads[h] = cfg.name_prefix + "head" + zero_pad(h, 3);
    out.words.push_back(heads[h]);
    out.matrix.row(row++) = random_unit(rng, cfg.dim).transpose();
  }

  for (int m = 0; m < cfg.n_modifiers; ++m) {
    const std::string modifier = cfg.name_prefix + "mods" + zero_pad(m, 3);
    out.words.push_back(modifier);
    out.matrix.row(row++) = random_unit(rng, cfg.dim).transpose();

    std::vector<Vector>& senses = out.planted_directions[modifier];
    for (int s = 0; s < cfg.senses_per_modifier; ++s) {
      senses.push_back(random_unit(rng, cfg.dim) * cfg.direction_norm);
    }

    // Distinct heads per modifier so every compound string is unique.
    std::vector<int> head_ids(cfg.n_heads);
    std::iota(head_ids.begin(), head_ids.end(), 0);
    std::shuffle(head_ids.begin(), head_ids.end(), rng);

    int next = 0;
    for (int s = 0; s < cfg.senses_per_modifier; ++s) {
      for (int p = 0; p < cfg.pairs_per_sense; ++p) {
        const int h = head_ids[next++];
        const std::string compound = modifier + heads[h];
        Vector noise(cfg.dim);
        for (int j = 0; j < cfg.dim; ++j) noise[j] = gauss(rng) * cfg.noise_sigma;
        out.words.push_back(compound);
        out.matrix.row(row++) =
            (out.matrix.row(h + 0).transpose() + senses[s] + noise).transpose();
        out.gold.push_back({compound, modifier, heads[h], ""});
        out.sense_of_compound[compound] = s;
      }
    }
  }
  return out;
}

}  // namespace casplit
