# Copyright 2026 The pi-test Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""One-way locally differentially private independence test."""

from ._core import (
    AlicePackage,
    JlParams,
    NonPrivateResult,
    PiTestError,
    PrivacyParams,
    TestDecision,
    TestReport,
    alice_prepare,
    bob_evaluate,
    dcov_sq_direct,
    dcov_sq_directional,
    dcov_sq_laplacian,
    dcov_sq_unbiased,
    decide,
    deserialize_package,
    distance_correlation_sq,
    generate_synthetic,
    jl_params,
    laplacian_s,
    laplacian_w,
    load_csv,
    lower_bound_ratio,
    mechanism_tau,
    nonprivate_test,
    normal_quantile,
    per_release_params,
    rejection_threshold,
    run_sweep,
    s_hat,
    serialize_package,
    tau,
    test_statistic,
    upper_bound_ratio,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "1.0.0"
