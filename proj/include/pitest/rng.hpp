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

#ifndef PITEST_RNG_HPP_
#define PITEST_RNG_HPP_

#include <cstdint>
#include <random>

namespace pitest {

// Seeded standard-normal stream. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; normals come from the Box-Muller
// transform on 53-bit uniforms in (0, 1), so the stream does not depend on
// the standard library's unspecified distribution algorithms.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double Uniform();
  double Next();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Stream-splitting rule: substream k of a master seed uses
// SplitMix64(master ^ SplitMix64(k + 0x9e3779b97f4a7c15)).
std::uint64_t SplitMix64(std::uint64_t x);
std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t stream);

}  // namespace pitest

#endif  // PITEST_RNG_HPP_
