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

#include "pitest/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iterator>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "pitest/error.hpp"
#include "pitest/rng.hpp"

namespace pitest {
namespace {

struct TrialErrors {
  double gamma = std::numeric_limits<double>::quiet_NaN();
  double s = std::numeric_limits<double>::quiet_NaN();
  double omega = std::numeric_limits<double>::quiet_NaN();
};

double PercentError(double estimate, double reference) {
  if (reference == 0.0 || !std::isfinite(estimate)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return std::abs(estimate - reference) / std::abs(reference) * 100.0;
}

void MeanAndSd(const std::vector<double>& values, double* mean, double* sd) {
  const double count = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  *mean = sum / count;
  if (values.size() < 2) {
    *sd = std::isnan(*mean) ? *mean : 0.0;
    return;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - *mean) * (v - *mean);
  *sd = std::sqrt(ss / (count - 1.0));
}

}  // namespace

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFileAtomic(const std::filesystem::path& path, std::string_view bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::kIo, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIo, "cannot move output into " + path.string());
  }
}

DatasetPair GenerateSynthetic(Eigen::Index n, Eigen::Index d, Eigen::Index m,
                              double dependence, std::uint64_t seed,
                              double scale) {
  if (n < 2 || d < 1 || m < 1) {
    throw Error(ErrorCode::kInvalidInput,
                "synthetic data needs n >= 2, d >= 1 and m >= 1");
  }
  if (!(dependence >= 0.0 && dependence <= 1.0)) {
    throw Error(ErrorCode::kInvalidInput, "dependence must lie in [0, 1]");
  }
  GaussianStream stream(seed);
  Eigen::MatrixXd x(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double centre = stream.Uniform() < 0.5 ? -2.0 : 2.0;
    for (Eigen::Index a = 0; a < d; ++a) x(i, a) = centre + stream.Next();
  }
  Eigen::MatrixXd mixing(d, m);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) mixing(a, b) = stream.Next();
  }
  mixing /= std::sqrt(static_cast<double>(d));
  Eigen::MatrixXd noise(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index b = 0; b < m; ++b) noise(i, b) = stream.Next();
  }
  Eigen::MatrixXd y =
      dependence * (x * mixing) + std::sqrt(1.0 - dependence * dependence) * noise;
  return DatasetPair{DataMatrix(scale * x), DataMatrix(scale * y)};
}

NonPrivateResult NonPrivateTest(const DataMatrix& x, const DataMatrix& y,
                                double alpha) {
  NonPrivateResult out;
  const DcovComponents c = ComputeDcovComponents(x, y);
  out.omega_sq = c.omega_sq();
  out.s = c.s_hat;
  out.decision.alpha = alpha;
  out.decision.threshold = RejectionThreshold(alpha);
  if (!(out.s > 0.0)) {
    out.degenerate = true;
    out.statistic = std::numeric_limits<double>::quiet_NaN();
    out.decision.statistic = out.statistic;
    return out;
  }
  out.statistic = TestStatistic(out.omega_sq, out.s, x.samples());
  out.decision = Decide(out.statistic, alpha);
  return out;
}

LocalRunResult RunLocal(const DataMatrix& x, const DataMatrix& y,
                        const PrivacyParams& privacy, std::uint64_t master_seed,
                        double alpha, std::optional<double> s_param) {
  if (x.samples() != y.samples()) {
    throw Error(ErrorCode::kShapeMismatch,
                "X has " + std::to_string(x.samples()) + " samples but Y has " +
                    std::to_string(y.samples()));
  }
  LocalRunResult out{
      BobEvaluate(AlicePrepare(x, privacy, master_seed), y, alpha, s_param),
      NonPrivateTest(x, y, alpha)};
  return out;
}

void SweepConfig::Validate() const {
  if (epsilons.empty() || eta_values.empty()) {
    throw Error(ErrorCode::kInvalidInput, "sweep needs epsilons and eta values");
  }
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0)) {
      throw Error(ErrorCode::kInvalidInput, "epsilons must be positive");
    }
    if (i > 0 && !(epsilons[i] > epsilons[i - 1])) {
      throw Error(ErrorCode::kInvalidInput,
                  "epsilons must be strictly increasing");
    }
  }
  if (replications < 1) {
    throw Error(ErrorCode::kInvalidInput, "replications must be at least 1");
  }
  for (double eta : eta_values) {
    PrivacyParams{epsilons.front(), delta, eta, nu}.Validate();
  }
  RejectionThreshold(alpha);
}

std::vector<SweepRow> RunSweep(const SweepConfig& cfg, const DataMatrix& x,
                               const DataMatrix& y) {
  cfg.Validate();
  const NonPrivateResult reference = NonPrivateTest(x, y, cfg.alpha);

  struct Cell {
    double epsilon;
    double eta;
  };
  std::vector<Cell> cells;
  for (double eps : cfg.epsilons) {
    for (double eta : cfg.eta_values) cells.push_back({eps, eta});
  }
  const std::size_t reps = static_cast<std::size_t>(cfg.replications);
  const std::size_t total = cells.size() * reps;
  std::vector<TrialErrors> trials(total);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t job = next.fetch_add(1);
      if (job >= total) return;
      const std::size_t c = job / reps;
      const std::size_t k = job % reps;
      try {
        const PrivacyParams privacy{cells[c].epsilon, cfg.delta, cells[c].eta,
                                    cfg.nu};
        const std::uint64_t seed = DeriveSeed(DeriveSeed(cfg.master_seed, c), k);
        const TestReport report =
            BobEvaluate(AlicePrepare(x, privacy, seed), y, cfg.alpha);
        TrialErrors& t = trials[job];
        t.omega = PercentError(report.omega_bar_sq, reference.omega_sq);
        t.s = PercentError(report.s_bar, reference.s);
        if (!report.degenerate && !reference.degenerate) {
          t.gamma = PercentError(report.statistic, reference.statistic);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(total);
      }
    }
  };

  const unsigned threads = std::max(
      1u, std::min<unsigned>(cfg.threads ? cfg.threads : DefaultThreadCount(),
                             static_cast<unsigned>(total)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::vector<SweepRow> rows;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    std::vector<double> gamma, s, omega;
    for (std::size_t k = 0; k < reps; ++k) {
      const TrialErrors& t = trials[c * reps + k];
      gamma.push_back(t.gamma);
      s.push_back(t.s);
      omega.push_back(t.omega);
    }
    SweepRow row;
    row.epsilon = cells[c].epsilon;
    row.eta = cells[c].eta;
    MeanAndSd(gamma, &row.mean_rel_err_gamma, &row.sd_gamma);
    MeanAndSd(s, &row.mean_rel_err_s, &row.sd_s);
    MeanAndSd(omega, &row.mean_rel_err_omega, &row.sd_omega);
    rows.push_back(row);
  }
  return rows;
}

std::string FormatSweepCsv(const std::vector<SweepRow>& rows) {
  std::string out(kSweepHeader);
  out.push_back('\n');
  char buffer[512];
  for (const SweepRow& r : rows) {
    std::snprintf(buffer, sizeof(buffer), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  r.epsilon, r.eta, r.mean_rel_err_gamma, r.sd_gamma,
                  r.mean_rel_err_s, r.sd_s, r.mean_rel_err_omega, r.sd_omega);
    out += buffer;
  }
  return out;
}

unsigned DefaultThreadCount() {
  if (const char* env = std::getenv("PI_TEST_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace pitest
