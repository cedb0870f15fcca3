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

#include "pitest/dcov.hpp"

#include <cmath>
#include <string>

#include "pitest/error.hpp"
#include "pitest/summation.hpp"

namespace pitest {
namespace {

Eigen::Index RequirePaired(const DataMatrix& x, const DataMatrix& y,
                          Eigen::Index min_samples) {
  if (x.samples() != y.samples()) {
    throw Error(ErrorCode::kShapeMismatch,
                "sample counts differ: " + std::to_string(x.samples()) +
                    " vs " + std::to_string(y.samples()));
  }
  if (x.samples() < min_samples) {
    throw Error(ErrorCode::kInsufficientSamples,
                "at least " + std::to_string(min_samples) +
                    " samples are required, got " +
                    std::to_string(x.samples()));
  }
  return x.samples();
}

}  // namespace

DcovComponents ComputeDcovComponents(const DataMatrix& x, const DataMatrix& y) {
  const double n = static_cast<double>(RequirePaired(x, y, 2));
  const SquaredDistanceMatrix a = PairwiseSquaredDistances(x);
  const SquaredDistanceMatrix b = PairwiseSquaredDistances(y);
  const Eigen::VectorXd a_rows = RowSums(a.values());
  const Eigen::VectorXd b_rows = RowSums(b.values());

  DcovComponents out;
  out.r_hat = SumProducts(a.values(), b.values()) / (n * n);
  out.s_hat = (SumEntries(a.values()) / (n * n)) *
              (SumEntries(b.values()) / (n * n));
  out.t_hat = SumProducts(a_rows, b_rows) / (n * n * n);
  return out;
}

double DcovSqDirect(const DataMatrix& x, const DataMatrix& y) {
  return ComputeDcovComponents(x, y).omega_sq();
}

double DcovSqLaplacian(const DataMatrix& x, const DataMatrix& y) {
  const double n = static_cast<double>(RequirePaired(x, y, 2));
  const GraphLaplacian l = LaplacianW(x);
  const Eigen::MatrixXd ly = l.values() * y.values();
  return 2.0 / (n * n) * SumProducts(ly, y.values());
}

double DcovSqDirectional(const FactorMatrix& b, const DataMatrix& y) {
  if (b.rows() != y.samples()) {
    throw Error(ErrorCode::kShapeMismatch,
                "factor has " + std::to_string(b.rows()) + " rows but Y has " +
                    std::to_string(y.samples()) + " samples");
  }
  const double n = static_cast<double>(y.samples());
  CompensatedSum acc;
  for (Eigen::Index i = 0; i < y.features(); ++i) {
    acc.Add(SquaredFrobenius(b.values().transpose() * y.values().col(i)));
  }
  return 2.0 / (n * n) * acc.Value();
}

double DcovSqUnbiased(const DataMatrix& x, const DataMatrix& y) {
  const double n = static_cast<double>(RequirePaired(x, y, 4));
  const SquaredDistanceMatrix a = PairwiseSquaredDistances(x);
  const SquaredDistanceMatrix b = PairwiseSquaredDistances(y);
  const Eigen::VectorXd a_rows = RowSums(a.values());
  const Eigen::VectorXd b_rows = RowSums(b.values());
  const double a_total = SumEntries(a.values());
  const double b_total = SumEntries(b.values());

  // The diagonals are zero, so the i != j sum is the full sum.
  const double pair_term = SumProducts(a.values(), b.values()) / (n * (n - 3));
  const double row_term =
      2.0 * SumProducts(a_rows, b_rows) / (n * (n - 2) * (n - 3));
  const double total_term =
      a_total * b_total / (n * (n - 1) * (n - 2) * (n - 3));
  return pair_term - row_term + total_term;
}

double SHat(const DataMatrix& x, const DataMatrix& y) {
  const double n = static_cast<double>(RequirePaired(x, y, 2));
  const double mean_a = SumEntries(PairwiseSquaredDistances(x).values()) / (n * n);
  const double mean_b = SumEntries(PairwiseSquaredDistances(y).values()) / (n * n);
  return mean_a * mean_b;
}

double LaplacianSTrace(const DataMatrix& y) {
  const Eigen::MatrixXd centered =
      y.values().rowwise() - ColumnMeans(y.values());
  return static_cast<double>(y.samples()) * SquaredFrobenius(centered);
}

double SHatDirectional(const DataMatrix& x, const FactorMatrix& g,
                       const DataMatrix& y) {
  const double n = static_cast<double>(RequirePaired(x, y, 2));
  if (g.rows() != x.samples()) {
    throw Error(ErrorCode::kShapeMismatch,
                "G has " + std::to_string(g.rows()) + " rows, expected " +
                    std::to_string(x.samples()));
  }
  // sum_i g_i^T X X^T g_i = |X^T G|_F^2
  const double x_part = SquaredFrobenius(x.values().transpose() * g.values());
  return 4.0 / (n * n * n * n) * x_part * LaplacianSTrace(y);
}

double TestStatistic(double omega_sq, double s, Eigen::Index n) {
  if (!(s > 0.0)) {
    throw Error(ErrorCode::kDegenerateDenominator,
                "S must be positive (a dataset has all rows identical)");
  }
  return static_cast<double>(n) * omega_sq / s;
}

double RejectionThreshold(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::kInvalidInput,
                "alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
  const double z = NormalQuantile(1.0 - alpha / 2.0);
  return z * z;
}

TestDecision Decide(double statistic, double alpha) {
  if (!std::isfinite(statistic)) {
    throw Error(ErrorCode::kInvalidInput, "test statistic is not finite");
  }
  TestDecision out;
  out.statistic = statistic;
  out.alpha = alpha;
  out.threshold = RejectionThreshold(alpha);
  out.reject = statistic > out.threshold;
  return out;
}

double DistanceCorrelationSq(const DataMatrix& x, const DataMatrix& y) {
  RequirePaired(x, y, 2);
  const double vxx = DcovSqLaplacian(x, x);
  const double vyy = DcovSqLaplacian(y, y);
  const double product = vxx * vyy;
  if (!(product > 0.0)) return 0.0;
  double value = DcovSqLaplacian(x, y) / std::sqrt(product);
  if (value < 0.0 && value > -1e-9) value = 0.0;
  if (value > 1.0 && value < 1.0 + 1e-9) value = 1.0;
  return value;
}

}  // namespace pitest
