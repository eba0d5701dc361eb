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

#include <string>
#include <vector>

#include "casplit/embeddings.hpp"

namespace casplit {

struct ProjectionPoint {
  std::string word;
  double x;
  double y;
};

struct ProjectionReport {
  std::vector<ProjectionPoint> points;
  double explained_variance = 0.0;  // fraction captured by the 2 components
  std::vector<std::string> duplicates_dropped;
  std::vector<std::string> missing_words;
};

/// Mean-centered top-2 PCA of the selected words' vectors (covariance
/// eigendecomposition over the subset only). Component signs are fixed
/// by making the largest-magnitude loading positive. Throws if fewer
/// than 3 distinct words resolve to vectors.
ProjectionReport project_words(const EmbeddingStore& store, const std::vector<std::string>& words);

void save_projection_tsv(const ProjectionReport& report, const std::string& path);

}  // namespace casplit
