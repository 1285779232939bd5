// Copyright 2026 The Blockade Authors
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

#ifndef BLOCKADE_RANDOM_HPP
#define BLOCKADE_RANDOM_HPP

#include <cstdint>
#include <random>

namespace blockade {

/// SplitMix64 output function (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed of trajectory `index` within a batch:
///   mix64(base_seed + (index + 1) * 0x9E3779B97F4A7C15)
/// i.e. the (index + 1)-th output of a SplitMix64 stream started at base_seed.
constexpr std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) noexcept {
    return mix64(base_seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Per-trajectory uniform stream on the open interval (0, 1).
class UniformStream {
public:
    explicit UniformStream(std::uint64_t seed) : engine_(seed) {}

    double next() {
        // 53 random mantissa bits, offset by half an ulp so 0 and 1 are excluded.
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace blockade

#endif  // BLOCKADE_RANDOM_HPP
