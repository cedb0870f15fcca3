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

// Brute-force reference implementations for the test suite. Nothing here
// calls into the estimators under test: every routine is a literal loop
// transcription of its defining formula.

#ifndef PITEST_TESTS_ORACLES_HPP_
#define PITEST_TESTS_ORACLES_HPP_

#include <cstdint>
#include <random>

#include <Eigen/Core>

#include "pitest/dp_covariance.hpp"

namespace pitest::oracle {

Eigen::MatrixXd SquaredDistances(const Eigen::MatrixXd& x);

Eigen::MatrixXd CenteringMatrix(Eigen::Index n);

// J * M * J by explicit triple loops.
Eigen::MatrixXd ExplicitDoubleCenter(const Eigen::MatrixXd& m);

// (1/n^2) sum_ij [J E_X J]_ij [J E_Y J]_ij, quadruple-loop form.
double DcovDoubleSum(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

// Second transcription: centered distances A_kl = a_kl - a_k. - a_.l + a_..
double DcovCenteredDistances(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

// Literal U-statistic with an explicit i != j guard.
double DcovUnbiasedLoops(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

// (4/n^4) Tr(G^T X X^T G) Tr(Y^T L^S Y), G = sqrt(n) J, L^S = n I - e e^T.
double SHatTraceForm(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

double NormalCdf(double x);

// Bisection of NormalCdf on [-12, 12] until the bracket is below 1e-12.
double NormalQuantile(double p);

// Mean of |P y|^2 over `trials` independent releases of factor * factor^T.
double ProjectionMean(const Eigen::MatrixXd& factor, const Eigen::VectorXd& y,
                      const PrivacyParams& params, int trials,
                      std::uint64_t seed);

// Test data: standard normal n x d matrix.
Eigen::MatrixXd RandomMatrix(Eigen::Index n, Eigen::Index d, std::mt19937_64& rng);

double RelativeError(double a, double b);

}  // namespace pitest::oracle

#endif  // PITEST_TESTS_ORACLES_HPP_
