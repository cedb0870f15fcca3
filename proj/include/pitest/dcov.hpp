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

// Sample distance covariance and the independence test built on it.
//
// The canonical estimator is the biased V-statistic
//   Omega^2 = R + S - 2T = (1/n^2) sum_ij [J E_X J]_ij [J E_Y J]_ij
//           = (2/n^2) Tr(Y^T L^W(X) Y),
// with squared Euclidean distances. The test rejects independence when
// n Omega^2 / S exceeds the squared two-sided normal quantile.

#ifndef PITEST_DCOV_HPP_
#define PITEST_DCOV_HPP_

#include <Eigen/Core>

#include "pitest/matrix_core.hpp"

namespace pitest {

struct DcovComponents {
  double r_hat = 0.0;
  double s_hat = 0.0;
  double t_hat = 0.0;

  double omega_sq() const { return r_hat + s_hat - 2.0 * t_hat; }
};

struct TestDecision {
  double statistic = 0.0;
  double threshold = 0.0;
  double alpha = 0.0;
  bool reject = false;
};

DcovComponents ComputeDcovComponents(const DataMatrix& x, const DataMatrix& y);

// R + S - 2T from the double sums.
double DcovSqDirect(const DataMatrix& x, const DataMatrix& y);

// (2/n^2) Tr(Y^T L^W(X) Y).
double DcovSqLaplacian(const DataMatrix& x, const DataMatrix& y);

// (2/n^2) sum_i |B^T y_i|^2 over the columns of Y, with B = FactorW(X).
double DcovSqDirectional(const FactorMatrix& b, const DataMatrix& y);

// Unbiased U-statistic form. Requires n >= 4; may be negative.
double DcovSqUnbiased(const DataMatrix& x, const DataMatrix& y);

// Product of the mean squared pairwise distances of X and of Y.
double SHat(const DataMatrix& x, const DataMatrix& y);

// Tr(Y^T L^S Y) = n * |J Y|_F^2, the Y-side factor of S.
double LaplacianSTrace(const DataMatrix& y);

// (4/n^4) * (sum_i g_i^T X X^T g_i) * Tr(Y^T L^S Y).
double SHatDirectional(const DataMatrix& x, const FactorMatrix& g,
                       const DataMatrix& y);

// n * omega_sq / s. Throws kDegenerateDenominator when s <= 0.
double TestStatistic(double omega_sq, double s, Eigen::Index n);

// Standard normal quantile (Wichura AS241, relative accuracy ~1e-16).
double NormalQuantile(double p);

// (Phi^-1(1 - alpha/2))^2.
double RejectionThreshold(double alpha);

// reject = statistic > threshold (strict).
TestDecision Decide(double statistic, double alpha);

double DistanceCorrelationSq(const DataMatrix& x, const DataMatrix& y);

}  // namespace pitest

#endif  // PITEST_DCOV_HPP_
