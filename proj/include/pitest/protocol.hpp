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

// One-way two-party independence test.
//
// Alice holds X (n x d) and publishes a package with two private projections:
// one of the incidence-covariance B(X) B(X)^T = L^W(X) and one of X X^T.
// Bob holds Y (n x m) and evaluates, without ever replying,
//   Omega_bar^2 = (2/n^2) sum_i |P_B y_i|^2                    (centered y_i)
//   S_bar       = (4/n^4) sum_i |P_X g_i|^2 * Tr(Y^T L^S Y)    (G = sqrt(n) J)
//   Gamma_bar   = n Omega_bar^2 / S_bar
// and rejects independence when Gamma_bar > (Phi^-1(1 - alpha/2))^2.
//
// Package wire format (UTF-8 JSON, keys in sorted order):
//   {"n": int,
//    "privacy": {"delta", "epsilon", "eta", "nu", "split": "half-half"},
//    "proj_B": {"cols": n, "data": base64, "rows": r},
//    "proj_X": {"cols": n, "data": base64, "rows": r},
//    "version": 1}
// "data" is the row-major little-endian IEEE-754 binary64 payload. The privacy
// block holds the total budget; each projection was released at
// (epsilon/2, delta/2).

#ifndef PITEST_PROTOCOL_HPP_
#define PITEST_PROTOCOL_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "pitest/dp_covariance.hpp"
#include "pitest/matrix_core.hpp"

namespace pitest {

inline constexpr int kPackageFormatVersion = 1;

// Substream indices of the master seed.
inline constexpr std::uint64_t kIncidenceStream = 1;
inline constexpr std::uint64_t kCovarianceStream = 2;

struct AlicePackage {
  int format_version = kPackageFormatVersion;
  Eigen::Index n = 0;
  PrivacyParams privacy;  // total budget
  PrivateProjection proj_b;
  PrivateProjection proj_x;
};

struct ReportBounds {
  // Interval for the non-private ratio Omega_hat^2 / S_hat implied by the
  // observed private ratio.
  double lower = 0.0;
  double upper = 0.0;
  double s_param = 0.0;
  double tau_used = 0.0;
  bool s_param_clamped = false;
};

struct TestReport {
  double omega_bar_sq = 0.0;
  double s_bar = 0.0;
  double statistic = 0.0;  // NaN when degenerate
  double threshold = 0.0;
  double alpha = 0.0;
  std::optional<bool> reject;  // unset when degenerate
  bool degenerate = false;
  ReportBounds bounds;
  double tau_mech = 0.0;
  std::optional<double> tau_closed_form;  // unset when (m + n) nu >= 1

  // Parameter echo.
  Eigen::Index n = 0;
  Eigen::Index m = 0;
  std::int64_t r = 0;
  double w = 0.0;
  PrivacyParams privacy;
};

AlicePackage AlicePrepare(const DataMatrix& x, const PrivacyParams& privacy,
                          std::uint64_t master_seed);

// Pure function of its inputs. s_param defaults to S_bar / n; values outside
// (tau / (1 - eta), inf) are clamped and flagged in the report.
TestReport BobEvaluate(const AlicePackage& package, const DataMatrix& y,
                       double alpha,
                       std::optional<double> s_param = std::nullopt);

std::string SerializePackage(const AlicePackage& package);

// Throws kParse for malformed or truncated input, naming the section at
// fault, and kUnsupportedVersion for any version other than 1.
AlicePackage DeserializePackage(std::string_view bytes);

// Report document with every TestReport field; non-finite values are null.
std::string ReportToJson(const TestReport& report);

}  // namespace pitest

#endif  // PITEST_PROTOCOL_HPP_
