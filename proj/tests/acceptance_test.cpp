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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pitest/bounds.hpp"
#include "pitest/dcov.hpp"
#include "pitest/dp_covariance.hpp"
#include "pitest/error.hpp"
#include "pitest/harness.hpp"
#include "pitest/matrix_core.hpp"
#include "pitest/protocol.hpp"
#include "pitest/rng.hpp"
#include "pitest/summation.hpp"

namespace pitest {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Format(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
std::string Format(const char* fmt, ...) {
  char buffer[1024];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buffer, sizeof(buffer), fmt, args);
  va_end(args);
  return buffer;
}

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// 1. Three estimator forms and the loop oracle agree pairwise.
Outcome FormulationEquivalence() {
  const auto start = Clock::now();
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<int> n_dist(2, 50), dim(1, 5);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int n = n_dist(rng);
    const DataMatrix x(oracle::RandomMatrix(n, dim(rng), rng));
    const DataMatrix y(oracle::RandomMatrix(n, dim(rng), rng));
    const double v[4] = {DcovSqDirect(x, y), DcovSqLaplacian(x, y),
                         DcovSqDirectional(FactorW(x), y),
                         oracle::DcovDoubleSum(x.values(), y.values())};
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        worst = std::max(worst, oracle::RelativeError(v[i], v[j]));
  }
  const double elapsed = Seconds(start);
  return {worst <= 1e-9 && elapsed < 10.0,
          Format("200 instances, max pairwise rel err %.3g (<= 1e-9), %.2f s (< 10 s)",
                 worst, elapsed)};
}

// 2. J X X^T J = -1/2 J E J and the entries of J E J sum to zero.
Outcome CenteringIdentities() {
  std::mt19937_64 rng(1002);
  std::uniform_int_distribution<int> n_dist(2, 50), dim(1, 5);
  double worst_gram = 0.0, worst_sum = 0.0;
  for (int t = 0; t < 200; ++t) {
    const Eigen::MatrixXd x = oracle::RandomMatrix(n_dist(rng), dim(rng), rng);
    const Eigen::MatrixXd j = oracle::CenteringMatrix(x.rows());
    const Eigen::MatrixXd gram = j * x * x.transpose() * j;
    const Eigen::MatrixXd w = DoubleCenter(PairwiseSquaredDistances(DataMatrix(x)).values());
    const double maxabs = gram.cwiseAbs().maxCoeff();
    worst_gram = std::max(worst_gram,
                          (gram + 0.5 * w).cwiseAbs().maxCoeff() / (1.0 + maxabs));
    const double sum_d2 = oracle::SquaredDistances(x).squaredNorm();
    if (sum_d2 > 0.0) worst_sum = std::max(worst_sum, std::abs(SumEntries(w)) / sum_d2);
  }
  return {worst_gram <= 1e-9 && worst_sum <= 1e-8,
          Format("200 instances, gram residual %.3g (<= 1e-9), |sum JEJ| / sum d^2 %.3g (<= 1e-8)",
                 worst_gram, worst_sum)};
}

// 3. s_hat equals the trace form with G = sqrt(n) J and L^S = n I - e e^T.
Outcome SHatTraceEquivalence() {
  std::mt19937_64 rng(1003);
  std::uniform_int_distribution<int> n_dist(2, 50), dim(1, 5);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int n = n_dist(rng);
    const Eigen::MatrixXd x = oracle::RandomMatrix(n, dim(rng), rng);
    const Eigen::MatrixXd y = oracle::RandomMatrix(n, dim(rng), rng);
    const DataMatrix dx(x), dy(y);
    worst = std::max(worst, oracle::RelativeError(SHat(dx, dy), oracle::SHatTraceForm(x, y)));
    worst = std::max(worst, oracle::RelativeError(SHatDirectional(dx, FactorS(n), dy),
                                                  oracle::SHatTraceForm(x, y)));
  }
  Eigen::Matrix3d displayed;
  displayed << 2, -1, -1, -1, 2, -1, -1, -1, 2;
  const bool exact = LaplacianS(3).values() == Eigen::MatrixXd(displayed);
  const double g_err = (FactorS(3).Reconstruct() - Eigen::MatrixXd(displayed)).cwiseAbs().maxCoeff();
  return {worst <= 1e-9 && exact && g_err <= 1e-14,
          Format("200 instances, max rel err %.3g (<= 1e-9); n = 3: L^S exact %s, |G G^T - L^S| %.2g",
                 worst, exact ? "yes" : "no", g_err)};
}

// 4. Single-query coverage of the Gaussian projection release.
Outcome MechanismCoverage() {
  const auto start = Clock::now();
  const Eigen::Index n = 30, k = 3;
  std::mt19937_64 rng(1004);
  const Eigen::MatrixXd f_unit = oracle::RandomMatrix(n, k, rng);
  Eigen::VectorXd y = oracle::RandomMatrix(n, 1, rng).col(0);
  y.normalize();
  bool pass = true;
  std::string detail;
  for (const auto [eta, nu] : {std::pair{0.1, 0.05}, std::pair{0.2, 0.05}}) {
    const PrivacyParams p{1.0, 1e-4, eta, nu};
    const JlParams jl = ComputeJlParams(p);
    const double tau = MechanismTau(p);
    // Signal of the same order as the floor w^2.
    const Eigen::MatrixXd f = jl.w * f_unit;
    const double t = (f.transpose() * y).squaredNorm();
    int inside = 0;
    const int trials = 2000;
    for (int s = 0; s < trials; ++s) {
      const double v =
          PrivateDirectionalVariance(PrivatizeCovariance(f, p, DeriveSeed(4004, s)), y);
      inside += v >= (1 - eta) * t - tau && v <= (1 + eta) * t + tau;
    }
    const double rate = static_cast<double>(inside) / trials;
    pass = pass && rate >= 1.0 - nu - 0.02;
    detail += Format("(eta %.1f, nu %.2f, r %lld) coverage %.4f >= %.2f; ", eta, nu,
                     static_cast<long long>(jl.r), rate, 1.0 - nu - 0.02);
  }
  const double elapsed = Seconds(start);
  pass = pass && elapsed < 60.0;
  return {pass, detail + Format("%.2f s (< 60 s)", elapsed)};
}

// 5. Observed private ratio lies inside the ratio bounds.
Outcome RatioBoundContainment() {
  const Eigen::Index n = 200, m = 3;
  Eigen::MatrixXd x(n, 1);
  for (Eigen::Index i = 0; i < n; ++i) x(i, 0) = 20.0 * static_cast<double>(i);
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n, m);
  // One-hot label by block of X, with a fifth of the labels reshuffled.
  std::mt19937_64 rng(1005);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index block = i * m / n;
    y(i, rng() % 5 == 0 ? static_cast<Eigen::Index>(rng() % m) : block) = 1.0;
  }
  const DataMatrix dx(x), dy(y);
  const OmegaLeSCheck lemma = CheckOmegaLeS(dx);

  const PrivacyParams p{2000.0, 0.5, 0.2, 1e-3};
  const PrivacyParams release = PerReleaseParams(p);
  const double tau = MechanismTau(release);
  const double omega = DcovSqDirect(dx, dy);
  const double s_hat = SHat(dx, dy);
  const double floor = static_cast<double>(n) * tau / (1.0 - release.eta);
  const double ratio = omega / s_hat;
  const double s_param = s_hat / static_cast<double>(n);
  const double lo = LowerBoundRatio(ratio, release.eta);
  const double hi = UpperBoundRatio(ratio, release.eta, tau, s_param);
  const double target = AggregateCoverageProbability(m, n, release.nu) - 0.05;

  int inside = 0;
  const int trials = 500;
  for (int t = 0; t < trials; ++t) {
    const TestReport r = BobEvaluate(AlicePrepare(dx, p, DeriveSeed(5005, t)), dy, 0.05);
    const double observed = r.omega_bar_sq / r.s_bar;
    inside += observed >= lo && observed <= hi;
  }
  const double rate = static_cast<double>(inside) / trials;
  const bool pre = lemma.holds && omega <= s_hat && s_hat > floor;
  return {pre && rate >= target,
          Format("precondition %s (d_max %.4g, d_min %.4g), S %.4g > floor %.4g, "
                 "bounds [%.4f, %.4f] around ratio %.4f, containment %.4f >= %.4f",
                 lemma.holds ? "holds" : "fails", lemma.d_max, lemma.d_min, s_hat,
                 floor, lo, hi, ratio, rate, target)};
}

// 6. Large budget: private statistic matches the non-private one.
Outcome HighBudgetConvergence() {
  const DatasetPair d = GenerateSynthetic(30, 3, 3, 0.5, 1006, 10.0);
  const PrivacyParams p{1e6, 0.5, 0.01, 0.01};
  const LocalRunResult r = RunLocal(d.x, d.y, p, 6006, 0.05);
  const double rel = oracle::RelativeError(r.report.statistic, r.nonprivate.statistic);
  return {rel <= 0.01,
          Format("private %.6g vs non-private %.6g, rel err %.3g (<= 0.01), r %lld",
                 r.report.statistic, r.nonprivate.statistic, rel,
                 static_cast<long long>(r.report.r))};
}

// 7. Level under independence and power under strong dependence.
Outcome LevelAndPower() {
  const Eigen::Index n = 200;
  int null_rejects = 0, alt_rejects = 0;
  for (int s = 0; s < 200; ++s) {
    std::mt19937_64 rng(DeriveSeed(7007, s));
    const Eigen::MatrixXd x = oracle::RandomMatrix(n, 2, rng);
    const Eigen::MatrixXd y = oracle::RandomMatrix(n, 2, rng);
    const Eigen::MatrixXd noise = oracle::RandomMatrix(n, 2, rng);
    null_rejects += NonPrivateTest(DataMatrix(x), DataMatrix(y), 0.05).decision.reject;
    alt_rejects +=
        NonPrivateTest(DataMatrix(x), DataMatrix(x + 0.1 * noise), 0.05).decision.reject;
  }
  const double level = null_rejects / 200.0, power = alt_rejects / 200.0;
  return {level <= 0.10 && power >= 0.95,
          Format("rejection rate under independence %.3f (<= 0.10), under Y = X + 0.1 noise "
                 "%.3f (>= 0.95)",
                 level, power)};
}

// 8. Sweep errors do not grow with epsilon.
Outcome SweepTrend() {
  const auto start = Clock::now();
  const DatasetPair d = GenerateSynthetic(100, 3, 2, 0.5, 2026, 1e4);
  SweepConfig cfg;
  cfg.master_seed = 8008;
  const std::vector<SweepRow> rows = RunSweep(cfg, d.x, d.y);
  bool pass = rows.size() == cfg.epsilons.size() * cfg.eta_values.size();
  std::string detail;
  for (std::size_t e = 0; e < cfg.eta_values.size(); ++e) {
    using Field = std::pair<double SweepRow::*, double SweepRow::*>;
    const Field fields[] = {{&SweepRow::mean_rel_err_gamma, &SweepRow::sd_gamma},
                            {&SweepRow::mean_rel_err_s, &SweepRow::sd_s},
                            {&SweepRow::mean_rel_err_omega, &SweepRow::sd_omega}};
    const char* names[] = {"gamma", "S", "omega"};
    for (int q = 0; q < 3; ++q) {
      double envelope = INFINITY;
      bool ok = true;
      std::string series;
      for (std::size_t i = 0; i < cfg.epsilons.size(); ++i) {
        const SweepRow& row = rows[i * cfg.eta_values.size() + e];
        const double mean = row.*fields[q].first, sd = row.*fields[q].second;
        ok = ok && std::isfinite(mean) && mean <= envelope + 2.0 * sd;
        envelope = std::min(envelope, mean);
        series += Format("%s%.3g", i ? " " : "", mean);
      }
      pass = pass && ok;
      detail += Format("eta %.2f %s [%s]%s; ", cfg.eta_values[e], names[q], series.c_str(),
                       ok ? "" : " GROWS");
    }
  }
  const double elapsed = Seconds(start);
  pass = pass && elapsed < 300.0;
  return {pass, detail + Format("%.1f s (< 300 s)", elapsed)};
}

// 9. Determinism, bit-exact round trip and parser robustness.
Outcome DeterminismAndRoundTrip() {
  const DatasetPair d = GenerateSynthetic(12, 2, 1, 0.3, 1009);
  const PrivacyParams p{1.0, 1e-3, 0.3, 0.05};
  const std::string a = SerializePackage(AlicePrepare(d.x, p, 9009));
  const std::string b = SerializePackage(AlicePrepare(d.x, p, 9009));
  const bool deterministic = a == b;

  const AlicePackage original = AlicePrepare(d.x, p, 9009);
  const AlicePackage back = DeserializePackage(a);
  const auto same_bits = [](const Eigen::MatrixXd& u, const Eigen::MatrixXd& v) {
    return u.rows() == v.rows() && u.cols() == v.cols() &&
           std::memcmp(u.data(), v.data(), sizeof(double) * u.size()) == 0;
  };
  const bool round_trip = same_bits(original.proj_b.values(), back.proj_b.values()) &&
                          same_bits(original.proj_x.values(), back.proj_x.values()) &&
                          back.n == original.n && back.privacy == original.privacy &&
                          SerializePackage(back) == a;

  std::mt19937_64 rng(99009);
  int structured = 0, accepted = 0, other = 0;
  for (int t = 0; t < 1000; ++t) {
    std::string s = a;
    switch (t % 4) {
      case 0:
        s.resize(rng() % s.size());
        break;
      case 1:
        for (int e = 0; e < 1 + static_cast<int>(rng() % 6); ++e)
          s[rng() % s.size()] = static_cast<char>(rng());
        break;
      case 2: {
        const std::size_t pos = rng() % s.size();
        s.erase(pos, std::min<std::size_t>(1 + rng() % 40, s.size() - pos));
        break;
      }
      default:
        s.assign(rng() % 256, '\0');
        for (char& c : s) c = static_cast<char>(rng());
        break;
    }
    try {
      DeserializePackage(s);
      ++accepted;
    } catch (const Error&) {
      ++structured;
    } catch (...) {
      ++other;
    }
  }
  return {deterministic && round_trip && other == 0,
          Format("alice deterministic %s, round trip bit-exact %s, fuzz: %d structured "
                 "errors, %d accepted, %d unstructured (must be 0)",
                 deterministic ? "yes" : "no", round_trip ? "yes" : "no", structured,
                 accepted, other)};
}

}  // namespace
}  // namespace pitest

int main() {
  using pitest::Outcome;
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"formulation equivalence", pitest::FormulationEquivalence},
      {"centering identities", pitest::CenteringIdentities},
      {"S trace-form equivalence", pitest::SHatTraceEquivalence},
      {"mechanism coverage", pitest::MechanismCoverage},
      {"ratio-bound containment", pitest::RatioBoundContainment},
      {"high-budget convergence", pitest::HighBudgetConvergence},
      {"test level and power", pitest::LevelAndPower},
      {"sweep trend", pitest::SweepTrend},
      {"determinism and round trip", pitest::DeterminismAndRoundTrip},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("[%s] criterion %d: %s: %s\n", o.pass ? "PASS" : "FAIL", index, name,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
