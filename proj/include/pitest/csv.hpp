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

#ifndef PITEST_CSV_HPP_
#define PITEST_CSV_HPP_

#include <filesystem>
#include <string_view>

#include "pitest/matrix_core.hpp"

namespace pitest {

// Comma-separated numeric table, one sample per line. Blank lines are skipped;
// surrounding spaces are ignored. Errors carry 1-based line and column.
DataMatrix ParseCsv(std::string_view text, bool has_header);
DataMatrix LoadCsv(const std::filesystem::path& path, bool has_header);

std::string FormatCsv(const Eigen::MatrixXd& values);

}  // namespace pitest

#endif  // PITEST_CSV_HPP_
