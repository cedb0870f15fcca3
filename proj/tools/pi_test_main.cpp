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

// pi-test: command-line front end for the one-way private independence test.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pitest/csv.hpp"
#include "pitest/dcov.hpp"
#include "pitest/dp_covariance.hpp"
#include "pitest/error.hpp"
#include "pitest/harness.hpp"
#include "pitest/protocol.hpp"

namespace {

using pitest::DataMatrix;
using pitest::PrivacyParams;

constexpr int kRuntimeError = 1;
constexpr int kUsageError = 2;

const CLI::Validator kOpenUnit(
    [](std::string& value) -> std::string {
      double v = 0.0;
      try {
        std::size_t used = 0;
        v = std::stod(value, &used);
        if (used != value.size()) return "'" + value + "' is not a number";
      } catch (const std::exception&) {
        return "'" + value + "' is not a number";
      }
      if (!(v > 0.0 && v < 1.0)) return "value " + value + " must lie in (0, 1)";
      return {};
    },
    "in (0,1)", "OPEN_UNIT");

const CLI::Validator kPositive(
    [](std::string& value) -> std::string {
      try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used == value.size() && v > 0.0 && std::isfinite(v)) return {};
      } catch (const std::exception&) {
      }
      return "value " + value + " must be a positive number";
    },
    "> 0", "POSITIVE");

struct PrivacyFlags {
  PrivacyParams params;
  std::optional<std::uint64_t> seed;

  void Register(CLI::App* cmd, bool require_epsilon) {
    auto* eps = cmd->add_option("--epsilon", params.epsilon, "Total privacy budget epsilon")
                    ->check(kPositive);
    if (require_epsilon) eps->required();
    cmd->add_option("--delta", params.delta, "Total privacy parameter delta")
        ->check(kOpenUnit)
        ->capture_default_str();
    cmd->add_option("--eta", params.eta, "Multiplicative accuracy eta")
        ->check(kOpenUnit)
        ->capture_default_str();
    cmd->add_option("--nu", params.nu, "Per-query failure probability nu")
        ->check(kOpenUnit)
        ->capture_default_str();
    cmd->add_option("--seed", seed,
                    "Master seed; keep it secret. A fresh random seed is drawn when omitted");
  }

  std::uint64_t Seed() const {
    if (seed) return *seed;
    std::random_device device;
    return (static_cast<std::uint64_t>(device()) << 32) ^ device();
  }
};

void PrintReleaseSummary(const PrivacyParams& total, Eigen::Index n) {
  const PrivacyParams release = pitest::PerReleaseParams(total);
  const pitest::JlParams jl = pitest::ComputeJlParams(release);
  std::printf("per release: epsilon %.6g, delta %.6g; r %lld, w %.6g\n",
              release.epsilon, release.delta, static_cast<long long>(jl.r), jl.w);
  std::printf("tau_mech %.6g\n", pitest::MechanismTau(release));
  try {
    std::printf("tau (closed form, m = 1) %.6g\n", pitest::Tau(total, 1, n));
  } catch (const pitest::Error&) {
    std::printf("tau (closed form) undefined: (m + n) nu >= 1\n");
  }
}

void PrintDecision(const pitest::TestReport& r) {
  if (r.degenerate) {
    std::printf("degenerate: S estimate %.6g is not positive; no decision\n", r.s_bar);
    return;
  }
  std::printf("statistic %.6g %s threshold %.6g at alpha %.4g: %s independence\n",
              r.statistic, *r.reject ? ">" : "<=", r.threshold, r.alpha,
              *r.reject ? "reject" : "do not reject");
}

std::vector<double> ParseList(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError(flag, "'" + item + "' is not a number");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-way locally differentially private independence test"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "pi-test 1.0.0");

  // alice
  CLI::App* alice = app.add_subcommand("alice", "Release a private package for X");
  std::string alice_input, alice_out;
  bool alice_header = false;
  PrivacyFlags alice_privacy;
  alice->add_option("--input", alice_input, "CSV file with X (n rows)")->required();
  alice->add_flag("--header", alice_header, "Skip the first row of the CSV");
  alice->add_option("--out", alice_out, "Package file to write")->required();
  alice_privacy.Register(alice, true);

  // bob
  CLI::App* bob = app.add_subcommand("bob", "Evaluate the test on a package and Y");
  std::string bob_package, bob_input, bob_report;
  bool bob_header = false;
  double bob_alpha = 0.05;
  std::optional<double> bob_s;
  bob->add_option("--package", bob_package, "Package file from alice")->required();
  bob->add_option("--input", bob_input, "CSV file with Y (n rows)")->required();
  bob->add_flag("--header", bob_header, "Skip the first row of the CSV");
  bob->add_option("--alpha", bob_alpha, "Significance level")
      ->check(kOpenUnit)
      ->capture_default_str();
  bob->add_option("--s-param", bob_s, "Scale parameter for the ratio bounds")->check(kPositive);
  bob->add_option("--report", bob_report, "Report file to write")->required();

  // run
  CLI::App* run = app.add_subcommand("run", "Run both roles locally and compare");
  std::string run_x, run_y, run_report;
  bool run_header = false;
  double run_alpha = 0.05;
  std::optional<double> run_s;
  PrivacyFlags run_privacy;
  run->add_option("--x", run_x, "CSV file with X")->required();
  run->add_option("--y", run_y, "CSV file with Y")->required();
  run->add_flag("--header", run_header, "Skip the first row of both CSV files");
  run->add_option("--alpha", run_alpha, "Significance level")
      ->check(kOpenUnit)
      ->capture_default_str();
  run->add_option("--s-param", run_s, "Scale parameter for the ratio bounds")->check(kPositive);
  run->add_option("--report", run_report, "Report file to write")->required();
  run_privacy.Register(run, true);

  // sweep
  CLI::App* sweep = app.add_subcommand("sweep", "Privacy-utility sweep over epsilon");
  pitest::SweepConfig cfg;
  std::string sweep_x, sweep_y, sweep_out, sweep_eps = "0.5,1,2,4,8", sweep_etas = "0.05,0.1";
  bool sweep_header = false;
  Eigen::Index syn_n = 100, syn_d = 3, syn_m = 2;
  double syn_dependence = 0.5, syn_scale = 1e4;
  std::uint64_t syn_seed = 2026;
  sweep->add_option("--x", sweep_x, "CSV file with X (synthetic data when omitted)");
  sweep->add_option("--y", sweep_y, "CSV file with Y")->needs(sweep->get_option("--x"));
  sweep->get_option("--x")->needs(sweep->get_option("--y"));
  sweep->add_flag("--header", sweep_header, "Skip the first row of both CSV files");
  sweep->add_option("--epsilons", sweep_eps, "Comma-separated increasing epsilons")
      ->capture_default_str();
  sweep->add_option("--eta-values", sweep_etas, "Comma-separated eta values")
      ->capture_default_str();
  sweep->add_option("--replications", cfg.replications, "Trials per cell")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep->add_option("--delta", cfg.delta, "Total delta")->check(kOpenUnit)->capture_default_str();
  sweep->add_option("--nu", cfg.nu, "Failure probability nu")
      ->check(kOpenUnit)
      ->capture_default_str();
  sweep->add_option("--alpha", cfg.alpha, "Significance level")
      ->check(kOpenUnit)
      ->capture_default_str();
  sweep->add_option("--seed", cfg.master_seed, "Master seed")->capture_default_str();
  sweep->add_option("--threads", cfg.threads, "Worker threads (0: automatic)")
      ->capture_default_str();
  sweep->add_option("--n", syn_n, "Synthetic sample count")
      ->check(CLI::Range(Eigen::Index{2}, Eigen::Index{1000000}))
      ->capture_default_str();
  sweep->add_option("--d", syn_d, "Synthetic X dimension")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep->add_option("--m", syn_m, "Synthetic Y dimension")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep->add_option("--dependence", syn_dependence, "Synthetic dependence in [0, 1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sweep->add_option("--scale", syn_scale, "Synthetic data scale")
      ->check(kPositive)
      ->capture_default_str();
  sweep->add_option("--data-seed", syn_seed, "Synthetic data seed")->capture_default_str();
  sweep->add_option("--out", sweep_out, "CSV table to write (stdout when omitted)");

  // synth
  CLI::App* synth = app.add_subcommand("synth", "Write a synthetic (X, Y) pair as CSV");
  std::string synth_x, synth_y;
  Eigen::Index s_n = 100, s_d = 3, s_m = 2;
  double s_dependence = 0.5, s_scale = 1.0;
  std::uint64_t s_seed = 2026;
  synth->add_option("--n", s_n, "Sample count")
      ->check(CLI::Range(Eigen::Index{2}, Eigen::Index{1000000}))
      ->capture_default_str();
  synth->add_option("--d", s_d, "X dimension")->check(CLI::PositiveNumber)->capture_default_str();
  synth->add_option("--m", s_m, "Y dimension")->check(CLI::PositiveNumber)->capture_default_str();
  synth->add_option("--dependence", s_dependence, "Dependence in [0, 1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  synth->add_option("--scale", s_scale, "Data scale")->check(kPositive)->capture_default_str();
  synth->add_option("--seed", s_seed, "Data seed")->capture_default_str();
  synth->add_option("--x-out", synth_x, "CSV file for X")->required();
  synth->add_option("--y-out", synth_y, "CSV file for Y")->required();

  try {
    app.parse(argc, argv);
    if (sweep->parsed()) {
      cfg.epsilons = ParseList(sweep_eps, "--epsilons");
      cfg.eta_values = ParseList(sweep_etas, "--eta-values");
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (alice->parsed()) {
      alice_privacy.params.Validate();
      const DataMatrix x = pitest::LoadCsv(alice_input, alice_header);
      const pitest::AlicePackage pkg =
          pitest::AlicePrepare(x, alice_privacy.params, alice_privacy.Seed());
      pitest::WriteFileAtomic(alice_out, pitest::SerializePackage(pkg));
      std::printf("wrote package for n = %lld to %s\n", static_cast<long long>(x.samples()),
                  alice_out.c_str());
      PrintReleaseSummary(alice_privacy.params, x.samples());
    } else if (bob->parsed()) {
      const pitest::AlicePackage pkg =
          pitest::DeserializePackage(pitest::ReadFile(bob_package));
      const DataMatrix y = pitest::LoadCsv(bob_input, bob_header);
      const pitest::TestReport report = pitest::BobEvaluate(pkg, y, bob_alpha, bob_s);
      pitest::WriteFileAtomic(bob_report, pitest::ReportToJson(report) + "\n");
      PrintDecision(report);
    } else if (run->parsed()) {
      run_privacy.params.Validate();
      const DataMatrix x = pitest::LoadCsv(run_x, run_header);
      const DataMatrix y = pitest::LoadCsv(run_y, run_header);
      const pitest::LocalRunResult result =
          pitest::RunLocal(x, y, run_privacy.params, run_privacy.Seed(), run_alpha, run_s);
      nlohmann::json doc = nlohmann::json::parse(pitest::ReportToJson(result.report));
      const pitest::NonPrivateResult& np = result.nonprivate;
      nlohmann::json nonprivate{{"omega_sq", np.omega_sq},
                                {"s", np.s},
                                {"threshold", np.decision.threshold},
                                {"degenerate", np.degenerate}};
      nonprivate["statistic"] =
          np.degenerate ? nlohmann::json(nullptr) : nlohmann::json(np.statistic);
      nonprivate["reject"] =
          np.degenerate ? nlohmann::json(nullptr) : nlohmann::json(np.decision.reject);
      doc["nonprivate"] = nonprivate;
      pitest::WriteFileAtomic(run_report, doc.dump(2) + "\n");
      std::printf("private:     ");
      PrintDecision(result.report);
      if (np.degenerate) {
        std::printf("non-private: degenerate\n");
      } else {
        std::printf("non-private: statistic %.6g, %s\n", np.statistic,
                    np.decision.reject ? "reject" : "do not reject");
      }
    } else if (sweep->parsed()) {
      cfg.Validate();
      std::optional<pitest::DatasetPair> data;
      if (!sweep_x.empty()) {
        data.emplace(pitest::DatasetPair{pitest::LoadCsv(sweep_x, sweep_header),
                                         pitest::LoadCsv(sweep_y, sweep_header)});
      } else {
        data.emplace(pitest::GenerateSynthetic(syn_n, syn_d, syn_m, syn_dependence, syn_seed,
                                               syn_scale));
      }
      const std::string table =
          pitest::FormatSweepCsv(pitest::RunSweep(cfg, data->x, data->y));
      if (sweep_out.empty()) {
        std::fwrite(table.data(), 1, table.size(), stdout);
      } else {
        pitest::WriteFileAtomic(sweep_out, table);
      }
    } else if (synth->parsed()) {
      const pitest::DatasetPair d =
          pitest::GenerateSynthetic(s_n, s_d, s_m, s_dependence, s_seed, s_scale);
      pitest::WriteFileAtomic(synth_x, pitest::FormatCsv(d.x.values()));
      pitest::WriteFileAtomic(synth_y, pitest::FormatCsv(d.y.values()));
    }
  } catch (const pitest::Error& e) {
    std::fprintf(stderr, "pi-test: %s\n", e.what());
    return kRuntimeError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "pi-test: internal error: %s\n", e.what());
    return kRuntimeError;
  }
  return 0;
}
