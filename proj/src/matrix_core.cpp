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

#include "pitest/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "pitest/error.hpp"
#include "pitest/summation.hpp"

namespace pitest {
namespace {

void RequireSquare(const Eigen::Ref<const Eigen::MatrixXd>& m,
                   const char* what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kInvalidInput,
                std::string(what) + " must be square, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

double MaxAbs(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void RequireAtLeastTwo(Eigen::Index n, ErrorCode code) {
  if (n < 2) {
    throw Error(code, "at least 2 samples are required, got " +
                          std::to_string(n));
  }
}

}  // namespace

DataMatrix::DataMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw Error(ErrorCode::kInvalidInput,
                "data matrix must have at least one row and one column");
  }
  if (!values_.allFinite()) {
    throw Error(ErrorCode::kInvalidInput, "data matrix has non-finite entries");
  }
}

SquaredDistanceMatrix::SquaredDistanceMatrix(Eigen::MatrixXd values)
    : values_(std::move(values)) {
  RequireSquare(values_, "squared distance matrix");
  for (Eigen::Index i = 0; i < values_.rows(); ++i) {
    if (values_(i, i) != 0.0) {
      throw Error(ErrorCode::kInvalidInput,
                  "squared distance matrix has a nonzero diagonal");
    }
    for (Eigen::Index j = 0; j < i; ++j) {
      if (!(values_(i, j) >= 0.0) || values_(i, j) != values_(j, i)) {
        throw Error(ErrorCode::kInvalidInput,
                    "squared distance matrix must be symmetric and "
                    "non-negative");
      }
    }
  }
}

GraphLaplacian::GraphLaplacian(Eigen::MatrixXd values, LaplacianKind kind)
    : values_(std::move(values)), kind_(kind) {
  RequireSquare(values_, "graph Laplacian");
  const double scale = MaxAbs(values_);
  const double n = static_cast<double>(values_.rows());
  if ((values_ - values_.transpose()).cwiseAbs().maxCoeff() >
      1e-12 * scale) {
    throw Error(ErrorCode::kInvalidInput, "graph Laplacian is not symmetric");
  }
  const Eigen::VectorXd sums = RowSums(values_);
  if (sums.size() > 0 && sums.cwiseAbs().maxCoeff() > 1e-9 * n * scale) {
    throw Error(ErrorCode::kInvalidInput,
                "graph Laplacian rows do not sum to zero");
  }
}

FactorMatrix::FactorMatrix(Eigen::MatrixXd values)
    : values_(std::move(values)) {
  if (!values_.allFinite()) {
    throw Error(ErrorCode::kInvalidInput, "factor has non-finite entries");
  }
}

Eigen::MatrixXd FactorMatrix::Reconstruct() const {
  return values_ * values_.transpose();
}

SquaredDistanceMatrix PairwiseSquaredDistances(const DataMatrix& x) {
  const Eigen::MatrixXd& v = x.values();
  const Eigen::Index n = x.samples();
  const Eigen::Index d = x.features();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double s = 0.0;
      for (Eigen::Index a = 0; a < d; ++a) {
        const double diff = v(i, a) - v(j, a);
        s += diff * diff;
      }
      out(i, j) = s;
      out(j, i) = s;
    }
  }
  if (!out.allFinite()) {
    throw Error(ErrorCode::kInvalidInput, "squared distances overflow");
  }
  return SquaredDistanceMatrix(std::move(out));
}

Eigen::MatrixXd DoubleCenter(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  RequireSquare(m, "double_center input");
  const Eigen::Index n = m.rows();
  if (n == 0) return Eigen::MatrixXd(0, 0);
  const double inv_n = 1.0 / static_cast<double>(n);
  const Eigen::VectorXd row_means = RowSums(m) * inv_n;
  const Eigen::RowVectorXd col_means = ColumnMeans(m);
  const double grand_mean = SumEntries(m) * inv_n * inv_n;
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      out(i, j) = m(i, j) - row_means(i) - col_means(j) + grand_mean;
    }
  }
  return out;
}

Eigen::MatrixXd AdjacencyW(const DataMatrix& x) {
  RequireAtLeastTwo(x.samples(), ErrorCode::kInsufficientSamples);
  return DoubleCenter(PairwiseSquaredDistances(x).values());
}

GraphLaplacian LaplacianW(const DataMatrix& x) {
  const Eigen::MatrixXd w = AdjacencyW(x);
  const Eigen::VectorXd degree = RowSums(w);
  const double n = static_cast<double>(w.rows());
  const double tol = 1e-9 * std::max(1.0, n * MaxAbs(w));
  if (degree.cwiseAbs().maxCoeff() > tol) {
    throw std::logic_error(
        "degree matrix of the double-centered adjacency is not zero");
  }
  Eigen::MatrixXd l = -w;
  l.diagonal() += degree;
  return GraphLaplacian(std::move(l), LaplacianKind::kW);
}

GraphLaplacian LaplacianS(Eigen::Index n) {
  RequireAtLeastTwo(n, ErrorCode::kInvalidInput);
  Eigen::MatrixXd l = Eigen::MatrixXd::Constant(n, n, -1.0);
  l.diagonal().setConstant(static_cast<double>(n - 1));
  return GraphLaplacian(std::move(l), LaplacianKind::kS);
}

FactorMatrix FactorW(const DataMatrix& x) {
  RequireAtLeastTwo(x.samples(), ErrorCode::kInsufficientSamples);
  const Eigen::RowVectorXd means = ColumnMeans(x.values());
  Eigen::MatrixXd b = x.values().rowwise() - means;
  b *= std::sqrt(2.0);
  return FactorMatrix(std::move(b));
}

FactorMatrix FactorS(Eigen::Index n) {
  RequireAtLeastTwo(n, ErrorCode::kInvalidInput);
  const double nd = static_cast<double>(n);
  Eigen::MatrixXd g = Eigen::MatrixXd::Constant(n, n, -1.0 / nd);
  g.diagonal().array() += 1.0;
  g *= std::sqrt(nd);
  return FactorMatrix(std::move(g));
}

FactorMatrix PsdFactor(const Eigen::Ref<const Eigen::MatrixXd>& l) {
  RequireSquare(l, "PSD factor input");
  const Eigen::Index n = l.rows();
  if (n == 0) return FactorMatrix(Eigen::MatrixXd(0, 0));
  if (!l.allFinite()) {
    throw Error(ErrorCode::kInvalidInput, "PSD factor input is not finite");
  }
  if ((l - l.transpose()).cwiseAbs().maxCoeff() >
      1e-12 * std::max(1.0, l.cwiseAbs().maxCoeff())) {
    throw Error(ErrorCode::kInvalidInput, "PSD factor input is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(l);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::kInvalidInput, "eigendecomposition failed");
  }
  const Eigen::VectorXd& lambda = eig.eigenvalues();  // ascending
  const double lambda_max = std::max(lambda(n - 1), 0.0);
  const double floor = -1e-8 * lambda_max;
  if (lambda(0) < floor) {
    throw Error(ErrorCode::kNotPsd,
                "eigenvalue " + std::to_string(lambda(0)) +
                    " is below -1e-8 * lambda_max");
  }
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (lambda(i) > 0.0) keep.push_back(i);
  }
  Eigen::MatrixXd b(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    b.col(static_cast<Eigen::Index>(c)) =
        eig.eigenvectors().col(keep[c]) * std::sqrt(lambda(keep[c]));
  }
  return FactorMatrix(std::move(b));
}

FactorMatrix PsdFactor(const GraphLaplacian& l) { return PsdFactor(l.values()); }

bool IsPositiveSemidefinite(const Eigen::Ref<const Eigen::MatrixXd>& m,
                            double tolerance) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  const double scale = MaxAbs(m);
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  return lambda(0) >= -tolerance * std::max(lambda(lambda.size() - 1), 0.0);
}

}  // namespace pitest
