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

// Distance matrices, double centering, graph Laplacians and their factors.
//
// Conventions: a data matrix holds one sample per row. Distances are squared
// Euclidean throughout, a_ij = |x_i - x_j|^2. J = I - ee^T / n is never
// materialized by the production routines; centering is done with row, column
// and grand means.

#ifndef PITEST_MATRIX_CORE_HPP_
#define PITEST_MATRIX_CORE_HPP_

#include <Eigen/Core>

namespace pitest {

// n x d sample matrix, n >= 1, d >= 1, all entries finite.
class DataMatrix {
 public:
  explicit DataMatrix(Eigen::MatrixXd values);

  const Eigen::MatrixXd& values() const { return values_; }
  Eigen::Index samples() const { return values_.rows(); }
  Eigen::Index features() const { return values_.cols(); }

 private:
  Eigen::MatrixXd values_;
};

// Symmetric, zero diagonal, non-negative.
class SquaredDistanceMatrix {
 public:
  explicit SquaredDistanceMatrix(Eigen::MatrixXd values);

  const Eigen::MatrixXd& values() const { return values_; }
  Eigen::Index order() const { return values_.rows(); }

 private:
  Eigen::MatrixXd values_;
};

enum class LaplacianKind { kW, kS };

// Symmetric matrix whose rows sum to zero. Positive semidefiniteness is not
// checked on construction (it needs an eigendecomposition); see
// IsPositiveSemidefinite.
class GraphLaplacian {
 public:
  GraphLaplacian(Eigen::MatrixXd values, LaplacianKind kind);

  const Eigen::MatrixXd& values() const { return values_; }
  LaplacianKind kind() const { return kind_; }
  Eigen::Index order() const { return values_.rows(); }

 private:
  Eigen::MatrixXd values_;
  LaplacianKind kind_;
};

// n x k factor B of a PSD matrix L = B B^T. k may be zero.
class FactorMatrix {
 public:
  explicit FactorMatrix(Eigen::MatrixXd values);

  const Eigen::MatrixXd& values() const { return values_; }
  Eigen::Index rows() const { return values_.rows(); }
  Eigen::Index rank_bound() const { return values_.cols(); }

  Eigen::MatrixXd Reconstruct() const;

 private:
  Eigen::MatrixXd values_;
};

SquaredDistanceMatrix PairwiseSquaredDistances(const DataMatrix& x);

// J M J via M_ij - rowmean_i - colmean_j + grandmean.
Eigen::MatrixXd DoubleCenter(const Eigen::Ref<const Eigen::MatrixXd>& m);

// W(X) = J E_X J. Requires n >= 2.
Eigen::MatrixXd AdjacencyW(const DataMatrix& x);

// L = D(W) - W. The degree matrix is computed and checked to vanish.
GraphLaplacian LaplacianW(const DataMatrix& x);

// n I - e e^T. Requires n >= 2.
GraphLaplacian LaplacianS(Eigen::Index n);

// sqrt(2) * (X - column means), so that B B^T = 2 J X X^T J = L^W(X).
FactorMatrix FactorW(const DataMatrix& x);

// sqrt(n) * J, so that G G^T = n J = L^S.
FactorMatrix FactorS(Eigen::Index n);

// Eigendecomposition-based factor V * Lambda^(1/2) of a symmetric PSD matrix.
// Eigenvalues in [-1e-8 * lambda_max, 0] are clamped to zero; anything more
// negative raises kNotPsd. Columns for zero eigenvalues are dropped.
FactorMatrix PsdFactor(const Eigen::Ref<const Eigen::MatrixXd>& l);
FactorMatrix PsdFactor(const GraphLaplacian& l);

// Symmetric and min eigenvalue >= -tolerance * max eigenvalue.
bool IsPositiveSemidefinite(const Eigen::Ref<const Eigen::MatrixXd>& m,
                            double tolerance = 1e-9);

}  // namespace pitest

#endif  // PITEST_MATRIX_CORE_HPP_
