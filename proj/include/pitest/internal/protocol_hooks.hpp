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

// Test-only entry points. Not used by the command-line tool.

#ifndef PITEST_INTERNAL_PROTOCOL_HOOKS_HPP_
#define PITEST_INTERNAL_PROTOCOL_HOOKS_HPP_

#include <cstdint>
#include <functional>

#include "pitest/protocol.hpp"

namespace pitest::internal {

using Privatizer = std::function<PrivateProjection(
    const Eigen::MatrixXd& factor, const PrivacyParams& release_params,
    std::uint64_t seed)>;

// AlicePrepare with the release mechanism swapped out.
AlicePackage AlicePrepareWith(const DataMatrix& x, const PrivacyParams& privacy,
                              std::uint64_t master_seed,
                              const Privatizer& privatize);

}  // namespace pitest::internal

#endif  // PITEST_INTERNAL_PROTOCOL_HOOKS_HPP_
