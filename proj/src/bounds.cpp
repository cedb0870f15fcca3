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

#include "pitest/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pitest/error.hpp"

namespace pitest {
namespace {

void RequireEta(double eta) {
  if (!(eta > 0.0 && eta < 1.0)) {
    throw Error(ErrorCode::kInvalidInput,
                "eta must lie in (0, 1), got " + std::to_string(eta));
  }
}

}  // namespace

double LowerBoundRatio(double ratio, double eta) {
  RequireEta(eta);
  if (!(ratio >= 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "ratio must be non-negative");
  }
  return (1.0 - eta) / (1.0 + eta) * ratio -
         (1.0 - eta) * (1.0 - eta) / (2.0 * (1.0 + eta));
}

double UpperBoundRatio(double ratio, double eta, double tau, double s_param) {
  RequireEta(eta);
  if (!(tau >= 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "tau must be non-negative");
  }
  const double denominator = (1.0 - eta) * s_param - tau;
  if (!(denominator > 0.0)) {
    throw Error(ErrorCode::kInvalidInput,
                "s_param must exceed tau / (1 - eta) = " +
                    std::to_string(tau / (1.0 - eta)));
  }
  return (1.0 + eta) / (1.0 - eta) * ratio + tau / denominator;
}

double AggregateCoverageProbability(Eigen::Index m, Eigen::Index n, double nu) {
  const double k = static_cast<double>(m + n) * nu;
  if (m < 0 || n < 0 || !(nu >= 0.0) || !(k < 1.0)) {
    throw Error(ErrorCode::kInvalidInput,
                "(m + n) * nu must lie in [0, 1), got " + std::to_string(k));
  }
  return 1.0 - k;
}

RatioBounds ComputeRatioBounds(double ratio, double eta, double tau,
                               double s_param, Eigen::Index m, Eigen::Index n,
                               double nu) {
  RatioBounds out;
  out.lower = LowerBoundRatio(ratio, eta);
  out.upper = UpperBoundRatio(ratio, eta, tau, s_param);
  out.eta = eta;
  out.tau = tau;
  out.s_param = s_param;
  out.prob_floor = AggregateCoverageProbability(m, n, nu);
  return out;
}

RatioInterval ImpliedNonPrivateRatio(double private_ratio, double eta,
                                     double tau, double s_param) {
  RequireEta(eta);
  // Additive terms of the two bounds at ratio-independent positions.
  const double upper_shift = UpperBoundRatio(0.0, eta, tau, s_param);
  const double lower_shift = -LowerBoundRatio(0.0, eta);
  RatioInterval out;
  out.lower = (1.0 - eta) / (1.0 + eta) * (private_ratio - upper_shift);
  out.upper = (1.0 + eta) / (1.0 - eta) * (private_ratio + lower_shift);
  return out;
}

OmegaLeSCheck CheckOmegaLeS(const DataMatrix& x) {
  const Eigen::Index n = x.samples();
  if (n < 2) {
    throw Error(ErrorCode::kInsufficientSamples,
                "at least 2 samples are required, got " + std::to_string(n));
  }
  const Eigen::MatrixXd& v = x.values();
  double d_max = 0.0;
  double d_min = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d = (v.row(i) - v.row(j)).squaredNorm();
      d_max = std::max(d_max, d);
      d_min = std::min(d_min, d);
    }
  }
  OmegaLeSCheck out;
  out.d_max = d_max;
  out.d_min = d_min;
  out.degenerate = d_max == 0.0;
  out.holds = !out.degenerate &&
              d_max <= 0.5 * static_cast<double>(n - 1) * d_min * d_min;
  return out;
}

NaiveInterval NaiveRatioInterval(double omega_sq, double s, double eta,
                                 double tau, Eigen::Index m, Eigen::Index n) {
  RequireEta(eta);
  if (!(s > 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "S must be positive");
  }
  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);
  NaiveInterval out;
  out.lower = ((1.0 - eta) * omega_sq - md * tau) / ((1.0 + eta) * s + nd * tau);
  const double upper_den = (1.0 - eta) * s - nd * tau;
  if (upper_den > 0.0) {
    out.upper = ((1.0 + eta) * omega_sq + md * tau) / upper_den;
  } else {
    out.upper = std::numeric_limits<double>::infinity();
    out.upper_infinite = true;
  }
  return out;
}

}  // namespace pitest
