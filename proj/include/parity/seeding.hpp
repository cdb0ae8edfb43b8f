/*
 * Copyright 2026 The Parity Audit Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <random>

namespace parity {

// Seed used by every command when none is given.
inline constexpr std::uint64_t kDefaultSeed = 20200101;

// SplitMix64 finalizer.
constexpr std::uint64_t SplitMix64(std::uint64_t x) noexcept {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Seed of trial `index` under `master`. Depends only on the pair, so trials can
// run in any order or on any thread.
constexpr std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t index) noexcept {
  return SplitMix64(master ^ SplitMix64(index));
}

// mt19937_64 output is fixed by the standard; the std:: distributions are not,
// so sampling goes through UniformUnit instead.
using Rng = std::mt19937_64;

// Uniform double in [0, 1) from the top 53 bits.
inline double UniformUnit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace parity
