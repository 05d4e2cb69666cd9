// Copyright 2026 The adlabel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ADLABEL_COMMON_RNG_H_
#define ADLABEL_COMMON_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace adlabel {

// Seeded generator whose output is identical across compilers and standard
// libraries. The engine is std::mt19937_64 (fully specified by the
// standard); bounded draws use rejection sampling instead of
// std::uniform_int_distribution, whose algorithm is implementation-defined.
class StableRng {
 public:
  // Name recorded in export metadata.
  static constexpr std::string_view kAlgorithm = "mt19937_64/rejection";

  explicit StableRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t UniformBelow(std::uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double UniformUnit();

  // Fisher-Yates shuffle.
  template <typename T>
  void Shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(UniformBelow(i));
      std::swap(values[i - 1], values[j]);
    }
  }

  template <typename T>
  void Shuffle(std::vector<T>& values) {
    Shuffle(std::span<T>(values));
  }

  // Returns `count` distinct indices from [0, population), in draw order.
  // `count` is clamped to `population`.
  std::vector<std::size_t> SampleIndices(std::size_t population,
                                         std::size_t count);

 private:
  std::mt19937_64 engine_;
};

// Derives an independent sub-seed from a base seed and a string salt
// (splitmix64 over an FNV-1a digest of the salt).
std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view salt);

}  // namespace adlabel

#endif  // ADLABEL_COMMON_RNG_H_
