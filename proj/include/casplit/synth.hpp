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
#include <map>
#include <string>
#include <vector>

#include "casplit/embeddings.hpp"
#include "casplit/evaluation.hpp"

namespace casplit {

/// Generator for planted-compound corpora: per modifier sense a fixed
/// direction vector; compound vector = head + direction + noise, and the
/// compound string = modifier string + head string.
struct SynthConfig {
  int n_heads = 50;
  int n_modifiers = 10;
  int senses_per_modifier = 1;
  int pairs_per_sense = 12;
  int dim = 32;
  double noise_sigma = 0.02;
  double direction_norm = 1.0;
  std::uint64_t rng_seed = 0;
  std::string name_prefix;  // prepended to generated word names

  void validate() const;
};

struct SynthCorpus {
  std::vector<std::string> words;
  Matrix matrix;
  std::vector<GoldEntry> gold;
  // modifier -> one planted direction per sense
  std::map<std::string, std::vector<Vector>> planted_directions;
  // compound -> sense index within its modifier
  std::map<std::string, int> sense_of_compound;

  EmbeddingStore store() const { return EmbeddingStore(words, matrix); }
};

SynthCorpus synth_corpus(const SynthConfig& config);

}  // namespace casplit
