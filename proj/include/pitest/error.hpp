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

#ifndef PITEST_ERROR_HPP_
#define PITEST_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pitest {

enum class ErrorCode {
  kInvalidInput,
  kInsufficientSamples,
  kShapeMismatch,
  kNotPsd,
  kDegenerateDenominator,
  kParse,
  kUnsupportedVersion,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// All recoverable failures raised by the library carry one of the codes above.
// Violated internal invariants are reported as std::logic_error instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pitest

#endif  // PITEST_ERROR_HPP_
