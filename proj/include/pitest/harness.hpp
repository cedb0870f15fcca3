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

// Workflow glue shared by the command-line tool and the Python module:
// file I/O, a synthetic data generator, the single-process run and the
// privacy-utility sweep.

#ifndef PITEST_HARNESS_HPP_
#define PITEST_HARNESS_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pitest/dcov.hpp"
#include "pitest/dp_covariance.hpp"
#include "pitest/matrix_core.hpp"
#include "pitest/protocol.hpp"

namespace pitest {

std::string ReadFile(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it into place.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view bytes);

struct DatasetPair {
  DataMatrix x;
  DataMatrix y;
};

// X is drawn from an equal-weight two-component Gaussian mixture with
// component means +/-2 along every axis; Y = rho * X A + sqrt(1 - rho^2) * Z
// with A a d x m Gaussian matrix scaled by 1/sqrt(d) and Z standard normal.
// Both are multiplied by `scale`. rho = 0 gives independent X and Y.
DatasetPair GenerateSynthetic(Eigen::Index n, Eigen::Index d, Eigen::Index m,
                              double dependence, std::uint64_t seed,
                              double scale = 1.0);

struct NonPrivateResult {
  double omega_sq = 0.0;
  double s = 0.0;
  double statistic = 0.0;  // NaN when degenerate
  TestDecision decision;
  bool degenerate = false;
};

NonPrivateResult NonPrivateTest(const DataMatrix& x, const DataMatrix& y,
                                double alpha);

struct LocalRunResult {
  TestReport report;
  NonPrivateResult nonprivate;
};

LocalRunResult RunLocal(const DataMatrix& x, const DataMatrix& y,
                        const PrivacyParams& privacy, std::uint64_t master_seed,
                        double alpha,
                        std::optional<double> s_param = std::nullopt);

struct SweepConfig {
  std::vector<double> epsilons{0.5, 1.0, 2.0, 4.0, 8.0};
  std::int64_t replications = 50;
  std::vector<double> eta_values{0.05, 0.1};
  double delta = 2e-4;
  double nu = 0.05;
  double alpha = 0.05;
  std::uint64_t master_seed = 0;
  unsigned threads = 0;  // 0: PI_TEST_THREADS or hardware concurrency

  void Validate() const;
};

// Percent relative errors |private - nonprivate| / |nonprivate| * 100.
// sd is the sample standard deviation (0 for a single replication). A cell
// whose non-private reference is zero reports NaN for that quantity.
struct SweepRow {
  double epsilon = 0.0;
  double eta = 0.0;
  double mean_rel_err_gamma = 0.0;
  double sd_gamma = 0.0;
  double mean_rel_err_s = 0.0;
  double sd_s = 0.0;
  double mean_rel_err_omega = 0.0;
  double sd_omega = 0.0;
};

inline constexpr std::string_view kSweepHeader =
    "epsilon,eta,mean_rel_err_gamma,sd_gamma,mean_rel_err_s,sd_s,"
    "mean_rel_err_omega,sd_omega";

// One row per (epsilon, eta) cell, epsilons outermost. Replication k of cell
// c uses master seed DeriveSeed(DeriveSeed(cfg.master_seed, c), k), so the
// table does not depend on the thread count.
std::vector<SweepRow> RunSweep(const SweepConfig& cfg, const DataMatrix& x,
                               const DataMatrix& y);

std::string FormatSweepCsv(const std::vector<SweepRow>& rows);

// PI_TEST_THREADS if set to a positive integer, else hardware concurrency.
unsigned DefaultThreadCount();

}  // namespace pitest

#endif  // PITEST_HARNESS_HPP_
