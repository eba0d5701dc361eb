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

#include <Eigen/Core>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace casplit {

// Row-major so that per-word rows are contiguous.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

enum class EmbeddingFormat { Text, Binary };

/// Immutable word -> vector table. Vectors are stored exactly as loaded;
/// no implicit normalization. Safe for concurrent reads after construction.
class EmbeddingStore {
public:
  EmbeddingStore(std::vector<std::string> words, Matrix matrix);

  static EmbeddingStore load(const std::string& path,
                             EmbeddingFormat format = EmbeddingFormat::Text);
  void save(const std::string& path,
            EmbeddingFormat format = EmbeddingFormat::Text) const;

  Eigen::Index size() const { return matrix_.rows(); }
  int dim() const { return static_cast<int>(matrix_.cols()); }
  const std::vector<std::string>& words() const { return words_; }
  const Matrix& matrix() const { return matrix_; }

  bool contains(const std::string& word) const { return index_.count(word) > 0; }
  std::optional<Eigen::Index> row_of(const std::string& word) const;

  /// Row of `word`, or nullopt if absent. Absence is a value, not an error.
  std::optional<Vector> vector(const std::string& word) const;

  /// Duplicate words dropped while loading (first occurrence wins).
  int duplicates_dropped() const { return duplicates_dropped_; }

private:
  std::vector<std::string> words_;
  Matrix matrix_;
  std::unordered_map<std::string, Eigen::Index> index_;
  int duplicates_dropped_ = 0;
};

/// Cosine similarity in [-1, 1]. Throws std::invalid_argument on a
/// zero-norm vector or dimension mismatch.
double cosine(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b);

}  // namespace casplit
