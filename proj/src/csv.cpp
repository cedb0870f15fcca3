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

#include "pitest/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pitest/error.hpp"
#include "pitest/harness.hpp"

namespace pitest {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

[[noreturn]] void Fail(std::size_t line, std::size_t column,
                       const std::string& message) {
  throw Error(ErrorCode::kParse, "line " + std::to_string(line) + ", column " +
                                     std::to_string(column) + ": " + message);
}

}  // namespace

DataMatrix ParseCsv(std::string_view text, bool has_header) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  bool header_pending = has_header;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (Trim(line).empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    std::vector<double> row;
    std::size_t column = 0;
    while (true) {
      ++column;
      const std::size_t comma = line.find(',');
      const std::string_view cell = Trim(line.substr(0, comma));
      double value = 0.0;
      const char* first = cell.data();
      const char* last = cell.data() + cell.size();
      if (!cell.empty() && *first == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, last, value);
      if (cell.empty() || ec != std::errc() || ptr != last) {
        Fail(line_no, column, "'" + std::string(cell) + "' is not a number");
      }
      if (!std::isfinite(value)) Fail(line_no, column, "value is not finite");
      row.push_back(value);
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      Fail(line_no, row.size(),
           "ragged row: expected " + std::to_string(rows.front().size()) +
               " columns, found " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw Error(ErrorCode::kParse, "no data rows");
  }
  Eigen::MatrixXd values(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) values(i, j) = rows[i][j];
  }
  return DataMatrix(std::move(values));
}

DataMatrix LoadCsv(const std::filesystem::path& path, bool has_header) {
  return ParseCsv(ReadFile(path), has_header);
}

std::string FormatCsv(const Eigen::MatrixXd& values) {
  std::string out;
  char buffer[64];
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      if (j > 0) out.push_back(',');
      const auto result = std::to_chars(buffer, buffer + sizeof(buffer), values(i, j));
      out.append(buffer, result.ptr);
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace pitest
