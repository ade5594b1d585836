// Copyright 2026 The qdm authors
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

#pragma once

#include <array>
#include <cstdint>

namespace qdm {

// splitmix64 (Steele/Lea/Vigna). Used to expand 64-bit seeds into generator
// state and to derive substream seeds from structured keys. Integer-exact,
// so identical on every platform.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Accumulates 64-bit fields into a single seed. The same fields in the same
// order always give the same seed, independent of where or when the hash is
// computed, so sweep cells can be evaluated in any order or thread count.
class SeedHasher {
public:
    explicit SeedHasher(std::uint64_t initial) : state_(initial) {}

    SeedHasher& absorb(std::uint64_t field) {
        state_ ^= field + 0x9e3779b97f4a7c15ULL + (state_ << 6) + (state_ >> 2);
        std::uint64_t s = state_;
        state_ = splitmix64_next(s);
        return *this;
    }

    std::uint64_t finish() const {
        std::uint64_t s = state_;
        return splitmix64_next(s);
    }

private:
    std::uint64_t state_;
};

// xoshiro256++ 1.0 (Blackman & Vigna, public domain reference
// implementation), seeded by splitmix64 expansion. All state transitions are
// 64-bit integer ops, so a given seed yields the identical sample sequence on
// any platform. Uniform doubles take the top 53 bits of the output word.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64_next(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1); 53 random bits, never returns 1.0.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // True with probability p. Exact at the endpoints: p = 1 is always true
    // (next_double() < 1 strictly) and p = 0 is never true.
    bool bernoulli(double p) { return next_double() < p; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

}  // namespace qdm
