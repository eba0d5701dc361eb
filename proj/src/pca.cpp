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

#include "casplit/pca.hpp"

#include <Eigen/Eigenvalues>
#include <cstdio>
#include <fstream>
#include <set>

namespace casplit {

ProjectionReport project_words(const EmbeddingStore& store, const std::vector<std::string>& words) {
  ProjectionReport report;
  std::vector<std::string> selected;
  std::set<std::string> seen;
  for (const std::string& w : words) {
    if (!seen.insert(w).second) {
      report.duplicates_dropped.push_back(w);
      continue;
    }
    if (!store.contains(w)) {
      report.missing_words.push_back(w);
      continue;
    }
    selected.push_back(w);
  }
  if (selected.size() < 3) {
    throw std::invalid_argument("project_words: need at least 3 resolvable words, got " +
                                std::to_string(selected.size()));
  }

  const int d = store.dim();
  const Eigen::Index m = static_cast<Eigen::Index>(selected.size());
  Matrix data(m, d);
  for (Eigen::Index i = 0; i < m; ++i) {
    data.row(i) = store.matrix().row(*store.row_of(selected[i]));
  }
  Eigen::RowVectorXd mean = data.colwise().mean();
  data.rowwise() -= mean;

  Eigen::MatrixXd cov = (data.transpose() * data) / static_cast<double>(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw std::runtime_error("project_words: eigensolver failed");

  const double total_var = solver.eigenvalues().sum();
  // eigenvalues ascending: last two are the top components
  Eigen::VectorXd pc1 = solver.eigenvectors().col(d - 1);
  Eigen::VectorXd pc2 = Eigen::VectorXd::Zero(d);
  if (d >= 2) pc2 = solver.eigenvectors().col(d - 2);
  const double top_var = solver.eigenvalues()(d - 1) + (d >= 2 ? solver.eigenvalues()(d - 2) : 0.0);

  // Deterministic sign: largest-magnitude loading positive.
  for (Eigen::VectorXd* pc : {&pc1, &pc2}) {
    Eigen::Index arg = 0;
    pc->cwiseAbs().maxCoeff(&arg);
    if ((*pc)(arg) < 0) *pc = -*pc;
  }

  report.explained_variance = total_var > 0.0 ? top_var / total_var : 1.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    report.points.push_back({selected[static_cast<size_t>(i)],
                             data.row(i).dot(pc1.transpose()),
                             data.row(i).dot(pc2.transpose())});
  }
  return report;
}

void save_projection_tsv(const ProjectionReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write projection file: " + path);
  char buf[64];
  for (const ProjectionPoint& p : report.points) {
    out << p.word;
    std::snprintf(buf, sizeof buf, "%.10g", p.x);
    out << '\t' << buf;
    std::snprintf(buf, sizeof buf, "%.10g", p.y);
    out << '\t' << buf << '\n';
  }
}

}  // namespace casplit
