/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace dariq {

/// SplitMix64 (Steele, Lea, Flood). Recurrence:
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
/// Used only to expand a 64-bit seed into generator state.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}
    std::uint64_t next() noexcept;

private:
    std::uint64_t state_;
};

/// xoshiro256** (Blackman, Vigna). State s[0..3] is seeded with four
/// successive SplitMix64 outputs. Each step returns
///   rotl(s[1] * 5, 7) * 9
/// and then advances
///   t = s[1] << 17; s[2] ^= s[0]; s[3] ^= s[1]; s[1] ^= s[2]; s[0] ^= s[3];
///   s[2] ^= t; s[3] = rotl(s[3], 45)
/// The sequence for a given seed is fixed by these two definitions alone.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed) noexcept;

    std::uint64_t next() noexcept;

    /// Unbiased integer in [0, bound) by rejection: draws below
    /// (2^64 - bound) mod bound are discarded. bound must be > 0.
    std::uint64_t below(std::uint64_t bound) noexcept;

    /// (next() >> 11) * 2^-53, in [0, 1).
    double unit() noexcept;

    /// Index i with probability w[i] / sum(w), given the running prefix sums
    /// of positive weights w. Must be non-empty.
    std::size_t weighted(std::span<const std::uint64_t> cumulative) noexcept;

private:
    std::uint64_t s_[4];
};

}  // namespace dariq
