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

#include <cmath>
#include <cstring>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"
#include "oracles.hpp"
#include "pitest/base64.hpp"
#include "pitest/dcov.hpp"
#include "pitest/error.hpp"
#include "pitest/internal/protocol_hooks.hpp"
#include "pitest/protocol.hpp"

namespace pitest {
namespace {

using nlohmann::json;

const PrivacyParams kCheap{2.0, 0.1, 0.5, 0.1};

DataMatrix Random(Eigen::Index n, Eigen::Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return DataMatrix(oracle::RandomMatrix(n, d, rng));
}

AlicePackage IdentityPackage(const DataMatrix& x) {
  return internal::AlicePrepareWith(
      x, kCheap, 0,
      [](const Eigen::MatrixXd& factor, const PrivacyParams& release, std::uint64_t) {
        return PrivateProjection(factor.transpose(), release);
      });
}

ErrorCode CodeOf(std::string_view bytes) {
  try {
    DeserializePackage(bytes);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::kIo;
}

std::string MessageOf(std::string_view bytes) {
  try {
    DeserializePackage(bytes);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(AlicePrepareTest, DeterministicGivenSeed) {
  const DataMatrix x = Random(20, 3, 1);
  const std::string a = SerializePackage(AlicePrepare(x, kCheap, 7));
  const std::string b = SerializePackage(AlicePrepare(x, kCheap, 7));
  const std::string c = SerializePackage(AlicePrepare(x, kCheap, 8));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(AlicePrepareTest, PackageShapes) {
  const PrivacyParams p{1.0, 1e-3, 0.3, 0.05};
  const AlicePackage pkg = AlicePrepare(Random(50, 3, 2), p, 3);
  const std::int64_t r = ComputeJlParams(PerReleaseParams(p)).r;
  EXPECT_EQ(pkg.n, 50);
  EXPECT_EQ(pkg.proj_b.rows(), r);
  EXPECT_EQ(pkg.proj_x.rows(), r);
  EXPECT_EQ(pkg.proj_b.samples(), 50);
  EXPECT_EQ(pkg.proj_x.samples(), 50);
  EXPECT_EQ(pkg.privacy, p);
  EXPECT_EQ(pkg.proj_b.params(), PerReleaseParams(p));
  EXPECT_EQ(pkg.proj_x.params(), PerReleaseParams(p));
  EXPECT_NE(pkg.proj_b.seed(), pkg.proj_x.seed());
}

TEST(AlicePrepareTest, ConstantXReleasesOnlyTheFloor) {
  const Eigen::Index n = 12;
  const DataMatrix x(Eigen::MatrixXd::Constant(n, 2, 5.0));
  const DataMatrix y = Random(n, 2, 4);
  const Eigen::MatrixXd yc = y.values().rowwise() - y.values().colwise().mean();
  const double w = ComputeJlParams(PerReleaseParams(kCheap)).w;
  const double floor = 2.0 / (n * n) * w * w * yc.squaredNorm();
  double sum = 0.0;
  const int trials = 400;
  for (int t = 0; t < trials; ++t) {
    sum += BobEvaluate(AlicePrepare(x, kCheap, t), y, 0.05).omega_bar_sq;
  }
  EXPECT_NEAR(sum / trials, floor, 0.05 * floor);
}

TEST(BobEvaluateTest, IdentityHookMatchesNonPrivateStatistic) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Eigen::Index n = 5 + static_cast<Eigen::Index>(seed);
    const DataMatrix x = Random(n, 1 + seed % 4, 100 + seed);
    const DataMatrix y = Random(n, 1 + seed % 3, 200 + seed);
    const TestReport report = BobEvaluate(IdentityPackage(x), y, 0.05);
    const double omega = DcovSqDirect(x, y);
    const double s = SHat(x, y);
    EXPECT_LE(oracle::RelativeError(report.omega_bar_sq, omega), 1e-9);
    EXPECT_LE(oracle::RelativeError(report.s_bar, s), 1e-9);
    EXPECT_LE(oracle::RelativeError(report.statistic, TestStatistic(omega, s, n)), 1e-9);
  }
}

TEST(BobEvaluateTest, DeterministicAndConsistent) {
  const AlicePackage pkg = AlicePrepare(Random(30, 2, 5), kCheap, 9);
  const DataMatrix y = Random(30, 3, 6);
  const TestReport a = BobEvaluate(pkg, y, 0.05);
  const TestReport b = BobEvaluate(pkg, y, 0.05);
  EXPECT_EQ(ReportToJson(a), ReportToJson(b));
  EXPECT_FALSE(a.degenerate);
  ASSERT_TRUE(a.reject.has_value());
  EXPECT_EQ(*a.reject, a.statistic > a.threshold);
  EXPECT_LE(a.bounds.lower, a.bounds.upper);
  EXPECT_EQ(a.n, 30);
  EXPECT_EQ(a.m, 3);
  EXPECT_EQ(a.r, pkg.proj_b.rows());
  EXPECT_DOUBLE_EQ(a.tau_mech, MechanismTau(PerReleaseParams(kCheap)));
  EXPECT_EQ(a.bounds.tau_used, a.tau_mech);
  // (m + n) nu = 3.3 here, so the closed-form constant is undefined.
  EXPECT_FALSE(a.tau_closed_form.has_value());
}

TEST(BobEvaluateTest, ClosedFormTauReportedWhenDefined) {
  const PrivacyParams p{1.0, 1e-3, 0.5, 1e-3};
  const TestReport r = BobEvaluate(AlicePrepare(Random(20, 2, 7), p, 1), Random(20, 1, 8), 0.1);
  ASSERT_TRUE(r.tau_closed_form.has_value());
  EXPECT_DOUBLE_EQ(*r.tau_closed_form, Tau(p, 1, 20));
}

TEST(BobEvaluateTest, ShapeMismatchNamesBothCounts) {
  const AlicePackage pkg = AlicePrepare(Random(10, 2, 1), kCheap, 1);
  try {
    BobEvaluate(pkg, Random(11, 2, 2), 0.05);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShapeMismatch);
    EXPECT_NE(std::string(e.what()).find("10"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("11"), std::string::npos);
  }
}

TEST(BobEvaluateTest, ConstantYIsDegenerate) {
  const AlicePackage pkg = AlicePrepare(Random(10, 2, 1), kCheap, 1);
  const TestReport r =
      BobEvaluate(pkg, DataMatrix(Eigen::MatrixXd::Constant(10, 2, 3.0)), 0.05);
  EXPECT_TRUE(r.degenerate);
  EXPECT_FALSE(r.reject.has_value());
  EXPECT_TRUE(std::isnan(r.statistic));
  EXPECT_EQ(r.s_bar, 0.0);
  const json doc = json::parse(ReportToJson(r));
  EXPECT_TRUE(doc["reject"].is_null());
  EXPECT_TRUE(doc["statistic"].is_null());
  EXPECT_TRUE(doc["degenerate"].get<bool>());
}

TEST(BobEvaluateTest, SParamHandling) {
  const AlicePackage pkg = AlicePrepare(Random(15, 2, 3), kCheap, 2);
  const DataMatrix y = Random(15, 2, 4);
  const double floor = MechanismTau(PerReleaseParams(kCheap)) / (1.0 - kCheap.eta);
  const TestReport given = BobEvaluate(pkg, y, 0.05, 10.0 * floor);
  EXPECT_EQ(given.bounds.s_param, 10.0 * floor);
  EXPECT_FALSE(given.bounds.s_param_clamped);
  const TestReport clamped = BobEvaluate(pkg, y, 0.05, 0.5 * floor);
  EXPECT_TRUE(clamped.bounds.s_param_clamped);
  EXPECT_GT(clamped.bounds.s_param, floor);
  EXPECT_TRUE(std::isfinite(clamped.bounds.upper));
  const TestReport defaulted = BobEvaluate(pkg, y, 0.05);
  if (!defaulted.bounds.s_param_clamped) {
    EXPECT_EQ(defaulted.bounds.s_param, defaulted.s_bar / 15.0);
  }
  EXPECT_THROW(BobEvaluate(pkg, y, 1.5), Error);
}

TEST(SerializationTest, RoundTripIsBitExact) {
  const AlicePackage pkg = AlicePrepare(Random(13, 4, 9), kCheap, 77);
  const std::string bytes = SerializePackage(pkg);
  const AlicePackage back = DeserializePackage(bytes);
  EXPECT_EQ(back.format_version, kPackageFormatVersion);
  EXPECT_EQ(back.n, pkg.n);
  EXPECT_EQ(back.privacy, pkg.privacy);
  ASSERT_EQ(back.proj_b.values().size(), pkg.proj_b.values().size());
  EXPECT_EQ(std::memcmp(back.proj_b.values().data(), pkg.proj_b.values().data(),
                        sizeof(double) * pkg.proj_b.values().size()),
            0);
  EXPECT_EQ(std::memcmp(back.proj_x.values().data(), pkg.proj_x.values().data(),
                        sizeof(double) * pkg.proj_x.values().size()),
            0);
  EXPECT_FALSE(back.proj_b.seed().has_value());
  EXPECT_EQ(SerializePackage(back), bytes);
}

TEST(SerializationTest, DocumentLayout) {
  const json doc = json::parse(SerializePackage(AlicePrepare(Random(6, 1, 1), kCheap, 1)));
  EXPECT_EQ(doc["version"], 1);
  EXPECT_EQ(doc["n"], 6);
  EXPECT_EQ(doc["privacy"]["split"], "half-half");
  EXPECT_EQ(doc["privacy"]["epsilon"].get<double>(), kCheap.epsilon);
  EXPECT_EQ(doc["proj_B"]["cols"], 6);
  EXPECT_EQ(doc["proj_X"]["rows"], ComputeJlParams(PerReleaseParams(kCheap)).r);
  EXPECT_FALSE(doc.contains("seed"));
  const auto bytes = Base64Decode(doc["proj_B"]["data"].get<std::string>());
  EXPECT_EQ(bytes.size(), 8u * 6u * doc["proj_B"]["rows"].get<std::size_t>());
}

TEST(SerializationTest, TruncationNamesMissingSection) {
  const std::string bytes = SerializePackage(AlicePrepare(Random(6, 1, 1), kCheap, 1));
  const std::size_t cut = bytes.find("\"proj_X\"");
  ASSERT_NE(cut, std::string::npos);
  const std::string truncated = bytes.substr(0, cut);
  EXPECT_EQ(CodeOf(truncated), ErrorCode::kParse);
  EXPECT_NE(MessageOf(truncated).find("proj_X"), std::string::npos);
  for (std::size_t len : {std::size_t{0}, std::size_t{1}, bytes.size() / 2, bytes.size() - 1}) {
    EXPECT_EQ(CodeOf(bytes.substr(0, len)), ErrorCode::kParse) << len;
  }
}

TEST(SerializationTest, MissingFieldsInValidJson) {
  json doc = json::parse(SerializePackage(AlicePrepare(Random(6, 1, 1), kCheap, 1)));
  for (const char* key : {"n", "privacy", "proj_B", "proj_X"}) {
    json copy = doc;
    copy.erase(key);
    EXPECT_EQ(CodeOf(copy.dump()), ErrorCode::kParse);
    EXPECT_NE(MessageOf(copy.dump()).find(key), std::string::npos) << key;
  }
  json no_eps = doc;
  no_eps["privacy"].erase("epsilon");
  EXPECT_NE(MessageOf(no_eps.dump()).find("epsilon"), std::string::npos);
}

TEST(SerializationTest, VersionMismatch) {
  json doc = json::parse(SerializePackage(AlicePrepare(Random(6, 1, 1), kCheap, 1)));
  doc["version"] = 2;
  EXPECT_EQ(CodeOf(doc.dump()), ErrorCode::kUnsupportedVersion);
  doc["version"] = "1";
  EXPECT_EQ(CodeOf(doc.dump()), ErrorCode::kParse);
}

TEST(SerializationTest, RejectsInconsistentContent) {
  const json doc = json::parse(SerializePackage(AlicePrepare(Random(6, 1, 1), kCheap, 1)));
  auto with = [&](auto edit) {
    json copy = doc;
    edit(copy);
    return CodeOf(copy.dump());
  };
  EXPECT_EQ(with([](json& d) { d["n"] = 7; }), ErrorCode::kParse);
  EXPECT_EQ(with([](json& d) { d["n"] = 1; }), ErrorCode::kParse);
  EXPECT_EQ(with([](json& d) { d["proj_B"]["rows"] = 5; }), ErrorCode::kParse);
  EXPECT_EQ(with([](json& d) { d["privacy"]["eta"] = 1.5; }), ErrorCode::kParse);
  EXPECT_EQ(with([](json& d) { d["privacy"]["split"] = "all-first"; }), ErrorCode::kParse);
  EXPECT_EQ(with([](json& d) { d["proj_X"]["data"] = "@@@@"; }), ErrorCode::kParse);
  EXPECT_EQ(with([](json& d) { d["proj_X"]["data"] = "AAAA"; }), ErrorCode::kParse);
  EXPECT_EQ(with([](json& d) { d["proj_X"]["data"] = 3; }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf("[1, 2]"), ErrorCode::kParse);
}

TEST(SerializationTest, RejectsNonFiniteEntries) {
  json doc = json::parse(SerializePackage(AlicePrepare(Random(6, 1, 1), kCheap, 1)));
  auto bytes = Base64Decode(doc["proj_B"]["data"].get<std::string>());
  const double nan = std::nan("");
  std::memcpy(bytes.data() + 16, &nan, 8);
  doc["proj_B"]["data"] = Base64Encode(bytes);
  EXPECT_EQ(CodeOf(doc.dump()), ErrorCode::kParse);
  EXPECT_NE(MessageOf(doc.dump()).find("non-finite"), std::string::npos);
}

TEST(ReportJsonTest, CarriesEveryField) {
  const TestReport r = BobEvaluate(AlicePrepare(Random(9, 2, 1), kCheap, 1), Random(9, 2, 2), 0.05);
  const json doc = json::parse(ReportToJson(r));
  for (const char* key : {"omega_bar_sq", "s_bar", "statistic", "threshold", "alpha", "reject",
                          "degenerate", "bounds", "tau_mech", "tau_closed_form", "parameters"}) {
    EXPECT_TRUE(doc.contains(key)) << key;
  }
  for (const char* key : {"lower", "upper", "s_param", "tau_used", "s_param_clamped"}) {
    EXPECT_TRUE(doc["bounds"].contains(key)) << key;
  }
  EXPECT_EQ(doc["parameters"]["n"], 9);
  EXPECT_EQ(doc["parameters"]["m"], 2);
  EXPECT_EQ(doc["statistic"].get<double>(), r.statistic);
}

TEST(Base64Test, KnownVectorsAndErrors) {
  auto enc = [](std::string_view s) {
    return Base64Encode(std::span<const std::uint8_t>(
        reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
  };
  EXPECT_EQ(enc(""), "");
  EXPECT_EQ(enc("f"), "Zg==");
  EXPECT_EQ(enc("fo"), "Zm8=");
  EXPECT_EQ(enc("foo"), "Zm9v");
  EXPECT_EQ(enc("foobar"), "Zm9vYmFy");
  const auto back = Base64Decode("Zm9vYmE=");
  EXPECT_EQ(std::string(back.begin(), back.end()), "fooba");
  for (const char* bad : {"Zg=", "Z===", "Zm9v!A==", "=Zm9", "Zg==Zg=="}) {
    try {
      Base64Decode(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParse);
    }
  }
  std::mt19937_64 rng(3);
  for (int len = 0; len < 40; ++len) {
    std::vector<std::uint8_t> data(len);
    for (auto& b : data) b = static_cast<std::uint8_t>(rng());
    EXPECT_EQ(Base64Decode(Base64Encode(data)), data);
  }
}

TEST(ParserFuzzTest, MutatedPackagesFailWithStructuredErrors) {
  const std::string base = SerializePackage(AlicePrepare(Random(5, 1, 1), kCheap, 1));
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 300; ++t) {
    std::string s = base;
    const int edits = 1 + static_cast<int>(rng() % 8);
    for (int e = 0; e < edits; ++e) {
      const std::size_t pos = rng() % s.size();
      switch (rng() % 3) {
        case 0: s[pos] = static_cast<char>(rng()); break;
        case 1: s.erase(pos, 1 + rng() % 16); break;
        default: s.insert(pos, 1, static_cast<char>(rng())); break;
      }
      if (s.empty()) s = "{";
    }
    try {
      DeserializePackage(s);
    } catch (const Error&) {
    }
  }
}

}  // namespace
}  // namespace pitest
