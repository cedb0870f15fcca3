// Copyright 2026 The pi-test Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pitest/summation.hpp"

namespace pitest {

double SumEntries(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  CompensatedSum acc;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) acc.Add(m(i, j));
  }
  return acc.Value();
}

double SumProducts(const Eigen::Ref<const Eigen::MatrixXd>& a,
                   const Eigen::Ref<const Eigen::MatrixXd>& b) {
  CompensatedSum acc;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) acc.Add(a(i, j) * b(i, j));
  }
  return acc.Value();
}

double SquaredFrobenius(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  return SumProducts(m, m);
}

Eigen::VectorXd RowSums(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  Eigen::VectorXd out(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    CompensatedSum acc;
    for (Eigen::Index j = 0; j < m.cols(); ++j) acc.Add(m(i, j));
    out(i) = acc.Value();
  }
  return out;
}

Eigen::RowVectorXd ColumnMeans(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  Eigen::RowVectorXd out(m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    CompensatedSum acc;
    for (Eigen::Index i = 0; i < m.rows(); ++i) acc.Add(m(i, j));
    out(j) = acc.Value() / static_cast<double>(m.rows());
  }
  return out;
}

}  // namespace pitest
