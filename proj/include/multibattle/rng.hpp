// Copyright 2026 The Multibattle Authors
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

#ifndef MULTIBATTLE_RNG_HPP_
#define MULTIBATTLE_RNG_HPP_

#include <cstdint>

// SplitMix64 used as a counter-based generator: the value of draw
// `index` under a given seed is a pure function of (seed, index), so any
// thread can produce any draw without shared state and the simulation
// output cannot depend on the execution order.

namespace multibattle::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

constexpr std::uint64_t bits_at(std::uint64_t seed, std::uint64_t index) {
  return mix(seed + (index + 1) * kGolden);
}

// Uniform double in [0, 1) with 53 random bits.
constexpr double uniform_at(std::uint64_t seed, std::uint64_t index) {
  return static_cast<double>(bits_at(seed, index) >> 11) * 0x1.0p-53;
}

}  // namespace multibattle::rng

#endif  // MULTIBATTLE_RNG_HPP_
