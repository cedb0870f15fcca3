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

#include "pitest/protocol.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>
#include <vector>

#include "json.hpp"
#include "pitest/base64.hpp"
#include "pitest/bounds.hpp"
#include "pitest/dcov.hpp"
#include "pitest/error.hpp"
#include "pitest/internal/protocol_hooks.hpp"
#include "pitest/rng.hpp"
#include "pitest/summation.hpp"

namespace pitest {
namespace {

using nlohmann::json;

static_assert(std::numeric_limits<double>::is_iec559);

constexpr const char* kSplit = "half-half";

std::uint64_t ToLittleEndian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    v = ((v & 0x00000000000000ffULL) << 56) | ((v & 0x000000000000ff00ULL) << 40) |
        ((v & 0x0000000000ff0000ULL) << 24) | ((v & 0x00000000ff000000ULL) << 8) |
        ((v & 0x000000ff00000000ULL) >> 8) | ((v & 0x0000ff0000000000ULL) >> 24) |
        ((v & 0x00ff000000000000ULL) >> 40) | ((v & 0xff00000000000000ULL) >> 56);
  }
  return v;
}

json EncodeProjection(const PrivateProjection& p) {
  const Eigen::MatrixXd& v = p.values();
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(v.size()) * 8);
  std::size_t offset = 0;
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
      const std::uint64_t bits = ToLittleEndian(std::bit_cast<std::uint64_t>(v(i, j)));
      std::memcpy(bytes.data() + offset, &bits, 8);
      offset += 8;
    }
  }
  return json{{"rows", v.rows()}, {"cols", v.cols()}, {"data", Base64Encode(bytes)}};
}

[[noreturn]] void Fail(const std::string& message) {
  throw Error(ErrorCode::kParse, message);
}

const json& Section(const json& parent, const char* key, const char* where) {
  if (!parent.is_object() || !parent.contains(key)) {
    Fail(std::string("missing section '") + key + "' in " + where);
  }
  return parent.at(key);
}

std::int64_t IntegerField(const json& parent, const char* key,
                          const char* where) {
  const json& v = Section(parent, key, where);
  if (!v.is_number_integer()) {
    Fail(std::string("field '") + key + "' in " + where + " must be an integer");
  }
  return v.get<std::int64_t>();
}

double NumberField(const json& parent, const char* key, const char* where) {
  const json& v = Section(parent, key, where);
  if (!v.is_number()) {
    Fail(std::string("field '") + key + "' in " + where + " must be a number");
  }
  return v.get<double>();
}

PrivateProjection DecodeProjection(const json& doc, const char* key,
                                   Eigen::Index n, std::int64_t expected_rows,
                                   const PrivacyParams& release) {
  const json& section = Section(doc, key, "package");
  const std::int64_t rows = IntegerField(section, "rows", key);
  const std::int64_t cols = IntegerField(section, "cols", key);
  const json& data = Section(section, "data", key);
  if (!data.is_string()) Fail(std::string(key) + ".data must be a string");
  if (cols != n) {
    Fail(std::string(key) + " has " + std::to_string(cols) +
         " columns but the package declares n = " + std::to_string(n));
  }
  if (rows != expected_rows) {
    Fail(std::string(key) + " has " + std::to_string(rows) +
         " rows but the privacy parameters imply r = " +
         std::to_string(expected_rows));
  }
  const std::vector<std::uint8_t> bytes = Base64Decode(data.get<std::string>());
  if (rows < 1 || static_cast<std::uint64_t>(cols) > bytes.size() / 8 /
                        static_cast<std::uint64_t>(rows) ||
      static_cast<std::uint64_t>(rows) * static_cast<std::uint64_t>(cols) *
              8 != bytes.size()) {
    Fail(std::string(key) + ".data holds " + std::to_string(bytes.size()) +
         " bytes, which does not match " + std::to_string(rows) + "x" +
         std::to_string(cols) + " binary64 entries");
  }
  Eigen::MatrixXd values(rows, cols);
  std::size_t offset = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      std::uint64_t bits;
      std::memcpy(&bits, bytes.data() + offset, 8);
      offset += 8;
      const double value = std::bit_cast<double>(ToLittleEndian(bits));
      if (!std::isfinite(value)) {
        Fail(std::string(key) + " has a non-finite entry at (" +
             std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      values(i, j) = value;
    }
  }
  return PrivateProjection(std::move(values), release);
}

// Names the section a truncated document stops in.
std::string DescribeTruncation(std::string_view bytes) {
  static constexpr const char* kKeys[] = {"n", "privacy", "proj_B", "proj_X",
                                          "version"};
  std::string last_present;
  for (const char* key : kKeys) {
    const std::string quoted = std::string("\"") + key + "\"";
    if (bytes.find(quoted) == std::string_view::npos) {
      return std::string("missing section '") + key + "'";
    }
    last_present = key;
  }
  return "section '" + last_present + "' is incomplete";
}

json FiniteOrNull(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

namespace internal {

AlicePackage AlicePrepareWith(const DataMatrix& x, const PrivacyParams& privacy,
                              std::uint64_t master_seed,
                              const Privatizer& privatize) {
  const PrivacyParams release = PerReleaseParams(privacy);
  // W(X), L^W(X) = B(X) B(X)^T. Only B is needed by the release; X, E_X and B
  // stay inside this function.
  const FactorMatrix b = FactorW(x);
  PrivateProjection proj_b =
      privatize(b.values(), release, DeriveSeed(master_seed, kIncidenceStream));
  PrivateProjection proj_x = privatize(
      x.values(), release, DeriveSeed(master_seed, kCovarianceStream));
  return AlicePackage{kPackageFormatVersion, x.samples(), privacy,
                      std::move(proj_b), std::move(proj_x)};
}

}  // namespace internal

AlicePackage AlicePrepare(const DataMatrix& x, const PrivacyParams& privacy,
                          std::uint64_t master_seed) {
  return internal::AlicePrepareWith(
      x, privacy, master_seed,
      [](const Eigen::MatrixXd& factor, const PrivacyParams& release,
         std::uint64_t seed) {
        return PrivatizeCovariance(factor, release, seed);
      });
}

TestReport BobEvaluate(const AlicePackage& package, const DataMatrix& y,
                       double alpha, std::optional<double> s_param) {
  const Eigen::Index n = package.n;
  if (y.samples() != n) {
    throw Error(ErrorCode::kShapeMismatch,
                "package covers " + std::to_string(n) + " samples but Y has " +
                    std::to_string(y.samples()));
  }
  if (package.proj_b.samples() != n || package.proj_x.samples() != n) {
    throw Error(ErrorCode::kShapeMismatch,
                "package projections do not match its sample count");
  }
  const PrivacyParams release = PerReleaseParams(package.privacy);
  const JlParams jl = ComputeJlParams(release);
  const double nd = static_cast<double>(n);

  TestReport report;
  report.alpha = alpha;
  report.threshold = RejectionThreshold(alpha);
  report.n = n;
  report.m = y.features();
  report.r = package.proj_b.rows();
  report.w = jl.w;
  report.privacy = package.privacy;
  report.tau_mech = MechanismTau(release);
  try {
    report.tau_closed_form = Tau(package.privacy, report.m, n);
  } catch (const Error&) {
    report.tau_closed_form.reset();
  }

  // L^W(X) e = 0, so centering the columns of Y leaves the quadratic forms
  // unchanged and keeps the w^2 |y|^2 floor as small as possible.
  const Eigen::MatrixXd y_centered =
      y.values().rowwise() - ColumnMeans(y.values());
  report.omega_bar_sq =
      2.0 / (nd * nd) *
      PrivateSumDirectionalVariances(package.proj_b, y_centered);
  report.s_bar = SHatDirectional(package.proj_x, FactorS(n), y);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (!(report.s_bar > 0.0)) {
    report.degenerate = true;
    report.statistic = nan;
    report.bounds = ReportBounds{nan, nan, nan, report.tau_mech, false};
    return report;
  }

  report.statistic = TestStatistic(report.omega_bar_sq, report.s_bar, n);
  report.reject = Decide(report.statistic, alpha).reject;

  const double eta = release.eta;
  const double tau = report.tau_mech;
  const double s_floor = tau / (1.0 - eta);
  double s = s_param.value_or(report.s_bar / nd);
  bool clamped = false;
  if (std::isnan(s) || !(s > s_floor)) {
    s = s_floor > 0.0 ? s_floor * (1.0 + 1e-6)
                      : std::numeric_limits<double>::min();
    clamped = true;
  }
  const RatioInterval interval = ImpliedNonPrivateRatio(
      report.omega_bar_sq / report.s_bar, eta, tau, s);
  report.bounds = ReportBounds{interval.lower, interval.upper, s, tau, clamped};
  return report;
}

std::string SerializePackage(const AlicePackage& package) {
  const PrivacyParams& p = package.privacy;
  json doc;
  doc["version"] = package.format_version;
  doc["n"] = package.n;
  doc["privacy"] = json{{"epsilon", p.epsilon},
                        {"delta", p.delta},
                        {"eta", p.eta},
                        {"nu", p.nu},
                        {"split", kSplit}};
  doc["proj_B"] = EncodeProjection(package.proj_b);
  doc["proj_X"] = EncodeProjection(package.proj_x);
  return doc.dump();
}

AlicePackage DeserializePackage(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    Fail("malformed package (" + DescribeTruncation(bytes) + "): " + e.what());
  }
  if (!doc.is_object()) Fail("package must be a JSON object");

  const std::int64_t version = IntegerField(doc, "version", "package");
  if (version != kPackageFormatVersion) {
    throw Error(ErrorCode::kUnsupportedVersion,
                "package version " + std::to_string(version) +
                    " is not supported (expected " +
                    std::to_string(kPackageFormatVersion) + ")");
  }
  const std::int64_t n = IntegerField(doc, "n", "package");
  if (n < 2) Fail("n must be at least 2, got " + std::to_string(n));

  const json& privacy = Section(doc, "privacy", "package");
  PrivacyParams total;
  total.epsilon = NumberField(privacy, "epsilon", "privacy");
  total.delta = NumberField(privacy, "delta", "privacy");
  total.eta = NumberField(privacy, "eta", "privacy");
  total.nu = NumberField(privacy, "nu", "privacy");
  const json& split = Section(privacy, "split", "privacy");
  if (!split.is_string() || split.get<std::string>() != kSplit) {
    Fail("privacy.split must be \"half-half\"");
  }
  try {
    total.Validate();
  } catch (const Error& e) {
    Fail(std::string("invalid privacy section: ") + e.what());
  }
  const PrivacyParams release = PerReleaseParams(total);
  const std::int64_t r = ComputeJlParams(release).r;

  PrivateProjection proj_b = DecodeProjection(doc, "proj_B", n, r, release);
  PrivateProjection proj_x = DecodeProjection(doc, "proj_X", n, r, release);
  return AlicePackage{static_cast<int>(version), n, total, std::move(proj_b),
                      std::move(proj_x)};
}

std::string ReportToJson(const TestReport& report) {
  json doc;
  doc["omega_bar_sq"] = FiniteOrNull(report.omega_bar_sq);
  doc["s_bar"] = FiniteOrNull(report.s_bar);
  doc["statistic"] = FiniteOrNull(report.statistic);
  doc["threshold"] = report.threshold;
  doc["alpha"] = report.alpha;
  doc["reject"] = report.reject ? json(*report.reject) : json(nullptr);
  doc["degenerate"] = report.degenerate;
  doc["bounds"] = json{{"lower", FiniteOrNull(report.bounds.lower)},
                       {"upper", FiniteOrNull(report.bounds.upper)},
                       {"s_param", FiniteOrNull(report.bounds.s_param)},
                       {"tau_used", FiniteOrNull(report.bounds.tau_used)},
                       {"s_param_clamped", report.bounds.s_param_clamped}};
  doc["tau_mech"] = FiniteOrNull(report.tau_mech);
  doc["tau_closed_form"] =
      report.tau_closed_form ? FiniteOrNull(*report.tau_closed_form) : json(nullptr);
  doc["parameters"] = json{{"n", report.n},
                           {"m", report.m},
                           {"r", report.r},
                           {"w", report.w},
                           {"epsilon", report.privacy.epsilon},
                           {"delta", report.privacy.delta},
                           {"eta", report.privacy.eta},
                           {"nu", report.privacy.nu},
                           {"alpha", report.alpha},
                           {"split", kSplit}};
  return doc.dump(2);
}

}  // namespace pitest
