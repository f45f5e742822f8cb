#pragma once

#include <cstdint>

namespace sparse_recover {

// xoshiro256++ 1.0 (Blackman & Vigna, public domain), seeded through
// splitmix64. Every random draw in the toolkit flows through this
// generator, so a run is fully determined by one 64-bit seed and the
// bit stream is identical across platforms.
class Xoshiro256PlusPlus {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256PlusPlus(std::uint64_t seed);

    std::uint64_t next_u64();

    // 53-bit uniform in [0, 1)
    double uniform01();

    double uniform(double lo, double hi);

    // spawn a seed for a child generator (independent stream)
    std::uint64_t next_seed() { return next_u64(); }

    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

private:
    std::uint64_t s_[4];
};

// Box-Muller standard normals on top of the uniform stream.
class NormalSampler {
public:
    explicit NormalSampler(Xoshiro256PlusPlus& rng) : rng_(rng) {}

    double next();

private:
    Xoshiro256PlusPlus& rng_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace sparse_recover
