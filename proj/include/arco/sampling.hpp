#pragma once

#include "arco/problem.hpp"

#include <cstdint>

namespace arco {

enum class StreamPurpose : std::uint32_t {
    initial_design = 1,
    candidates = 2,
    grid_shared = 3,
    grid_private = 4,
    oracle = 5,
    test = 99,
};

/// Identifies an independent random stream within one replicate.
struct StreamId {
    StreamPurpose purpose = StreamPurpose::test;
    std::uint32_t agent = 0;
    std::uint32_t iteration = 0;

    std::uint64_t key() const noexcept;
};

/// xoshiro256** seeded through splitmix64. The output
/// is fully specified here, so sequences match across platforms and standard
/// libraries.
class SeededRng {
public:
    SeededRng(std::uint64_t seed, StreamId stream);
    explicit SeededRng(std::uint64_t seed) : SeededRng(seed, StreamId{}) {}

    std::uint64_t next_u64() noexcept;
    /// Uniform in [0, 1) with 53 random bits.
    double uniform() noexcept;
    /// Uniform integer in [0, n); n > 0.
    std::uint64_t below(std::uint64_t n) noexcept;

    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t seed_;
    std::uint64_t s_[4];
};

/// Latin hypercube design: every dimension's n values occupy distinct
/// equal-width strata, jittered uniformly within each stratum.
Matrix lhs(int n, const Bounds& bounds, SeededRng& rng);

}  // namespace arco
