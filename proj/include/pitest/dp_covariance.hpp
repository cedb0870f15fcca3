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

// Differentially private covariance release by Gaussian random projection.
//
// For a target covariance C = F F^T (F is n x k) the mechanism forms the
// augmented factor A = [F^T; w I_n], so that A^T A = C + w^2 I has least
// singular value at least w, and releases P = R A / sqrt(r) with R an r x
// (k + n) matrix of independent standard normals. Directional variance
// queries are answered from P alone: |P y|^2 ~ y^T C y + w^2 |y|^2 up to a
// (1 +/- eta) Johnson-Lindenstrauss factor with probability 1 - nu.
//
//   r = ceil(8 ln(2/nu) / eta^2)
//   w = 16 sqrt(r ln(2/delta)) / epsilon * ln(16 r / delta)

#ifndef PITEST_DP_COVARIANCE_HPP_
#define PITEST_DP_COVARIANCE_HPP_

#include <cstdint>
#include <optional>

#include <Eigen/Core>

#include "pitest/matrix_core.hpp"

namespace pitest {

struct PrivacyParams {
  double epsilon = 1.0;
  double delta = 1e-4;
  double eta = 0.1;
  double nu = 0.01;

  // Throws kInvalidInput naming the offending field.
  void Validate() const;

  bool operator==(const PrivacyParams&) const = default;
};

struct JlParams {
  std::int64_t r = 0;
  double w = 0.0;
};

JlParams ComputeJlParams(const PrivacyParams& params);

// Closed-form additive constant for m + n aggregated queries:
//   2048 ln(2/((m+n) nu)) ln(2/delta) / (eta eps^2)
//     * ln^2(128 ln(1/((m+n) nu)) / (eta^2 delta)).
// Requires (m + n) nu < 1.
double Tau(const PrivacyParams& params, Eigen::Index m, Eigen::Index n);

// Additive term of a single query at the mechanism level, (1 + eta) w^2.
double MechanismTau(const PrivacyParams& params);

// Each of the two releases in a package spends half of the total budget.
PrivacyParams PerReleaseParams(const PrivacyParams& total);

class PrivateProjection {
 public:
  // The seed is known only to the releasing party and is never serialized.
  PrivateProjection(Eigen::MatrixXd values, PrivacyParams params,
                    std::optional<std::uint64_t> seed = std::nullopt);

  const Eigen::MatrixXd& values() const { return values_; }
  Eigen::Index rows() const { return values_.rows(); }
  Eigen::Index samples() const { return values_.cols(); }
  const PrivacyParams& params() const { return params_; }
  std::optional<std::uint64_t> seed() const { return seed_; }

 private:
  Eigen::MatrixXd values_;
  PrivacyParams params_;
  std::optional<std::uint64_t> seed_;
};

// Releases a projection whose Gram matrix approximates factor * factor^T.
// Normals are drawn row by row: for each of the r rows, k draws for the
// factor block followed by n draws for the floor block.
PrivateProjection PrivatizeCovariance(
    const Eigen::Ref<const Eigen::MatrixXd>& factor,
    const PrivacyParams& params, std::uint64_t seed);

double PrivateDirectionalVariance(const PrivateProjection& projection,
                                  const Eigen::Ref<const Eigen::VectorXd>& y);

// sum_i |P v_i|^2 over the columns of V, i.e. |P V|_F^2.
double PrivateSumDirectionalVariances(
    const PrivateProjection& projection,
    const Eigen::Ref<const Eigen::MatrixXd>& directions);

// Private counterpart of SHatDirectional: the X X^T quadratic forms are
// answered by a projection released for X.
double SHatDirectional(const PrivateProjection& projection,
                       const FactorMatrix& g, const DataMatrix& y);

}  // namespace pitest

#endif  // PITEST_DP_COVARIANCE_HPP_
