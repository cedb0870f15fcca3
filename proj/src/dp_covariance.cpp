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

#include "pitest/dp_covariance.hpp"

#include <cmath>
#include <string>

#include "pitest/dcov.hpp"
#include "pitest/error.hpp"
#include "pitest/rng.hpp"
#include "pitest/summation.hpp"

namespace pitest {
namespace {

void RequireOpenUnit(double value, const char* name) {
  if (!(value > 0.0 && value < 1.0)) {
    throw Error(ErrorCode::kInvalidInput, std::string(name) +
                                              " must lie in (0, 1), got " +
                                              std::to_string(value));
  }
}

void RequireDirections(const PrivateProjection& projection, Eigen::Index rows) {
  if (rows != projection.samples()) {
    throw Error(ErrorCode::kShapeMismatch,
                "query has " + std::to_string(rows) +
                    " entries but the projection covers " +
                    std::to_string(projection.samples()) + " samples");
  }
}

}  // namespace

void PrivacyParams::Validate() const {
  if (!(epsilon > 0.0 && std::isfinite(epsilon))) {
    throw Error(ErrorCode::kInvalidInput,
                "epsilon must be positive and finite, got " +
                    std::to_string(epsilon));
  }
  RequireOpenUnit(delta, "delta");
  RequireOpenUnit(eta, "eta");
  RequireOpenUnit(nu, "nu");
}

JlParams ComputeJlParams(const PrivacyParams& params) {
  params.Validate();
  JlParams out;
  const double r_real = 8.0 * std::log(2.0 / params.nu) / (params.eta * params.eta);
  if (!(r_real <= 1e9)) {
    throw Error(ErrorCode::kInvalidInput,
                "projection dimension r = 8 ln(2/nu) / eta^2 is too large");
  }
  out.r = static_cast<std::int64_t>(std::ceil(r_real));
  const double r = static_cast<double>(out.r);
  out.w = 16.0 * std::sqrt(r * std::log(2.0 / params.delta)) / params.epsilon *
          std::log(16.0 * r / params.delta);
  if (!(out.w > 0.0 && std::isfinite(out.w))) {
    throw Error(ErrorCode::kInvalidInput, "spectral floor w is not finite");
  }
  return out;
}

double Tau(const PrivacyParams& params, Eigen::Index m, Eigen::Index n) {
  params.Validate();
  const double k = static_cast<double>(m + n) * params.nu;
  if (m < 0 || n < 0 || !(k < 1.0)) {
    throw Error(ErrorCode::kInvalidInput,
                "(m + n) * nu must be below 1 for the logarithms in tau to be "
                "positive, got " + std::to_string(k));
  }
  const double eta = params.eta;
  const double eps = params.epsilon;
  const double lead = 2048.0 * std::log(2.0 / k) * std::log(2.0 / params.delta) /
                      (eta * eps * eps);
  const double tail =
      std::log(128.0 * std::log(1.0 / k) / (eta * eta * params.delta));
  return lead * tail * tail;
}

double MechanismTau(const PrivacyParams& params) {
  const double w = ComputeJlParams(params).w;
  return (1.0 + params.eta) * w * w;
}

PrivacyParams PerReleaseParams(const PrivacyParams& total) {
  total.Validate();
  PrivacyParams out = total;
  out.epsilon = total.epsilon / 2.0;
  out.delta = total.delta / 2.0;
  return out;
}

PrivateProjection::PrivateProjection(Eigen::MatrixXd values,
                                     PrivacyParams params,
                                     std::optional<std::uint64_t> seed)
    : values_(std::move(values)), params_(params), seed_(seed) {
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw Error(ErrorCode::kInvalidInput, "projection must be non-empty");
  }
  if (!values_.allFinite()) {
    throw Error(ErrorCode::kInvalidInput, "projection has non-finite entries");
  }
}

PrivateProjection PrivatizeCovariance(
    const Eigen::Ref<const Eigen::MatrixXd>& factor,
    const PrivacyParams& params, std::uint64_t seed) {
  const JlParams jl = ComputeJlParams(params);
  const Eigen::Index n = factor.rows();
  const Eigen::Index k = factor.cols();
  if (n < 2) {
    throw Error(ErrorCode::kInsufficientSamples,
                "at least 2 samples are required, got " + std::to_string(n));
  }
  if (!factor.allFinite()) {
    throw Error(ErrorCode::kInvalidInput, "factor has non-finite entries");
  }

  using RowMajor =
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Index r = static_cast<Eigen::Index>(jl.r);
  RowMajor gauss_factor(r, k);
  RowMajor gauss_floor(r, n);
  GaussianStream stream(seed);
  for (Eigen::Index j = 0; j < r; ++j) {
    for (Eigen::Index a = 0; a < k; ++a) gauss_factor(j, a) = stream.Next();
    for (Eigen::Index i = 0; i < n; ++i) gauss_floor(j, i) = stream.Next();
  }

  // R [F^T; w I] = R_factor F^T + w R_floor
  Eigen::MatrixXd values = gauss_factor * factor.transpose();
  values += jl.w * gauss_floor;
  values /= std::sqrt(static_cast<double>(r));
  return PrivateProjection(std::move(values), params, seed);
}

double PrivateDirectionalVariance(const PrivateProjection& projection,
                                  const Eigen::Ref<const Eigen::VectorXd>& y) {
  RequireDirections(projection, y.size());
  return SquaredFrobenius(projection.values() * y);
}

double PrivateSumDirectionalVariances(
    const PrivateProjection& projection,
    const Eigen::Ref<const Eigen::MatrixXd>& directions) {
  RequireDirections(projection, directions.rows());
  if (directions.cols() == 0) return 0.0;
  return SquaredFrobenius(projection.values() * directions);
}

double SHatDirectional(const PrivateProjection& projection,
                       const FactorMatrix& g, const DataMatrix& y) {
  if (projection.samples() != y.samples() || g.rows() != y.samples()) {
    throw Error(ErrorCode::kShapeMismatch,
                "projection, G and Y must cover the same samples");
  }
  const double n = static_cast<double>(y.samples());
  const double x_part = PrivateSumDirectionalVariances(projection, g.values());
  return 4.0 / (n * n * n * n) * x_part * LaplacianSTrace(y);
}

}  // namespace pitest
