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

#include "pitest/error.hpp"

namespace pitest {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput:
      return "invalid-input";
    case ErrorCode::kInsufficientSamples:
      return "insufficient-samples";
    case ErrorCode::kShapeMismatch:
      return "shape-mismatch";
    case ErrorCode::kNotPsd:
      return "not-psd";
    case ErrorCode::kDegenerateDenominator:
      return "degenerate-denominator";
    case ErrorCode::kParse:
      return "parse-error";
    case ErrorCode::kUnsupportedVersion:
      return "unsupported-version";
    case ErrorCode::kIo:
      return "io-error";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace pitest
