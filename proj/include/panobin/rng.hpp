//
//  rng.hpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace panobin {

// Deterministic, splittable random source. Clip results must not depend on
// scheduling order, so every clip gets its own substream derived from
// (global seed, clip id). Uniform doubles are produced with an explicit
// 53-bit mapping instead of std::uniform_real_distribution, whose output
// is not specified bit-for-bit across standard libraries.
class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed) : gen_(seed) {}

    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    static std::uint64_t fnv1a64(std::string_view s) {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        return h;
    }

    // Substream for one clip; invariant under worker count and clip order.
    static SplitRng for_clip(std::uint64_t global_seed, std::string_view clip_id) {
        return SplitRng(splitmix64(splitmix64(global_seed) ^ fnv1a64(clip_id)));
    }

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1).
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform in [a, b); degenerate (a == b) returns a.
    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

private:
    std::mt19937_64 gen_;
};

} // namespace panobin
