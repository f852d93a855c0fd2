// Copyright 2026 The rlasso Authors.
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

// Reproducible random numbers.
//
// The engine is xoshiro256** (Blackman & Vigna). Its 256-bit state is filled
// from a 64-bit seed by four successive splitmix64 outputs. Normals come from
// the Marsaglia polar method and bounded integers from Lemire's
// multiply-and-reject, both implemented here rather than taken from <random>
// so that a seed produces the same stream on every standard library.
//
// Per-task streams (parallel trials, experiment cells) use
// derive_seed(master, index) = splitmix64(master ^ splitmix64(index + 1)).

#ifndef RLASSO_RANDOM_H_
#define RLASSO_RANDOM_H_

#include <array>
#include <cstdint>

#include "rlasso/core.h"

namespace rlasso {

std::uint64_t splitmix64(std::uint64_t x);

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()();

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform integer on [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  double normal();
  // +1 or -1 with equal probability.
  double rademacher();

  Vector normal_vector(Index size);
  // rows x cols standard normals, filled row by row.
  Matrix normal_matrix(Index rows, Index cols);

 private:
  std::array<std::uint64_t, 4> state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace rlasso

#endif  // RLASSO_RANDOM_H_
