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

// Additive/multiplicative utility guarantees for the private ratio
// Omega_bar^2 / S_bar relative to the non-private ratio Omega_hat^2 / S_hat.
//
// With probability at least 1 - (m + n) nu:
//   ratio_bar >= ((1 - eta) / (1 + eta)) ratio - (1 - eta)^2 / (2 (1 + eta))
//   ratio_bar <= ((1 + eta) / (1 - eta)) ratio + tau / ((1 - eta) s - tau)
// for a scale parameter s > tau / (1 - eta). The lower bound relies on
// Omega_hat^2 <= S_hat, which holds for one-hot Y when
// d_max / d_min^2 <= (n - 1) / 2 (see CheckOmegaLeS).

#ifndef PITEST_BOUNDS_HPP_
#define PITEST_BOUNDS_HPP_

#include <Eigen/Core>

#include "pitest/matrix_core.hpp"

namespace pitest {

struct RatioBounds {
  double lower = 0.0;
  double upper = 0.0;
  double eta = 0.0;
  double tau = 0.0;
  double s_param = 0.0;
  double prob_floor = 0.0;
};

double LowerBoundRatio(double ratio, double eta);

// Throws kInvalidInput unless s_param > tau / (1 - eta).
double UpperBoundRatio(double ratio, double eta, double tau, double s_param);

// 1 - (m + n) nu. Requires (m + n) nu < 1.
double AggregateCoverageProbability(Eigen::Index m, Eigen::Index n, double nu);

RatioBounds ComputeRatioBounds(double ratio, double eta, double tau,
                               double s_param, Eigen::Index m, Eigen::Index n,
                               double nu);

// Inverts both ratio bounds: given an observed private ratio, the interval
// that contains the non-private ratio whenever the bounds hold.
struct RatioInterval {
  double lower = 0.0;
  double upper = 0.0;
};
RatioInterval ImpliedNonPrivateRatio(double private_ratio, double eta,
                                     double tau, double s_param);

struct OmegaLeSCheck {
  bool holds = false;
  bool degenerate = false;  // all rows identical, d_min undefined
  double d_max = 0.0;
  double d_min = 0.0;
};

// d_max and d_min are the largest and smallest squared distances over
// distinct pairs; holds iff d_max <= ((n - 1) / 2) d_min^2. Duplicate rows
// give d_min = 0 and the condition fails.
OmegaLeSCheck CheckOmegaLeS(const DataMatrix& x);

// Bounds obtained by combining the per-component intervals directly:
//   ((1-eta) Omega - m tau) / ((1+eta) S + n tau)
//   ((1+eta) Omega + m tau) / ((1-eta) S - n tau)
// The upper end is +infinity (flagged) when (1-eta) S <= n tau.
struct NaiveInterval {
  double lower = 0.0;
  double upper = 0.0;
  bool upper_infinite = false;
};
NaiveInterval NaiveRatioInterval(double omega_sq, double s, double eta,
                                 double tau, Eigen::Index m, Eigen::Index n);

}  // namespace pitest

#endif  // PITEST_BOUNDS_HPP_
