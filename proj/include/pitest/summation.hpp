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

#ifndef PITEST_SUMMATION_HPP_
#define PITEST_SUMMATION_HPP_

#include <cmath>

#include <Eigen/Core>

namespace pitest {

// Neumaier's variant of Kahan summation. Error is bounded independently of the
// number of terms, which keeps 1e-9 relative tolerances meaningful for n in
// the tens of thousands.
class CompensatedSum {
 public:
  void Add(double value) {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  double Value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

double SumEntries(const Eigen::Ref<const Eigen::MatrixXd>& m);

// Sum over i, j of a(i, j) * b(i, j).
double SumProducts(const Eigen::Ref<const Eigen::MatrixXd>& a,
                   const Eigen::Ref<const Eigen::MatrixXd>& b);

double SquaredFrobenius(const Eigen::Ref<const Eigen::MatrixXd>& m);

Eigen::VectorXd RowSums(const Eigen::Ref<const Eigen::MatrixXd>& m);

Eigen::RowVectorXd ColumnMeans(const Eigen::Ref<const Eigen::MatrixXd>& m);

}  // namespace pitest

#endif  // PITEST_SUMMATION_HPP_
