#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace spinrelax {

// Counter-based generator (splitmix64 finalizer applied to seed/stream/counter).
// Sample i is a pure function of (seed, stream, i), so parallel shards drawing
// disjoint index ranges reproduce the sequential run exactly.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

    std::uint64_t bits(std::uint64_t index) const {
        return mix(key_ + index * 0x9e3779b97f4a7c15ULL);
    }

    // Uniform in [0, 1).
    double uniform(std::uint64_t index) const {
        return static_cast<double>(bits(index) >> 11) * 0x1.0p-53;
    }

    double uniform(std::uint64_t index, double lo, double hi) const {
        return lo + (hi - lo) * uniform(index);
    }

    // Standard normal via Box-Muller; consumes indices (2k, 2k+1).
    double gaussian(std::uint64_t pair_index) const {
        double u1 = uniform(2 * pair_index);
        double u2 = uniform(2 * pair_index + 1);
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t key_;
};

} // namespace spinrelax
