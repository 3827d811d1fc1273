#pragma once

#include <cstdint>

namespace ezd {

// splitmix64: tiny, seed-stable across platforms, which keeps every
// randomized report byte-identical for a fixed seed
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return next() % n; }
    double real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

} // namespace ezd
