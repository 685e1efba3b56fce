#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace chemosem {

/// SplitMix64 finalizer; a bijective 64-bit mix.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for replica `replica_id` as a pure function of the master seed.
std::uint64_t replica_seed(std::uint64_t master_seed, std::uint64_t replica_id);

/// Random stream handed explicitly to every stochastic operation.
///
/// Wraps mt19937_64 and implements its own bounded-integer and unit-interval
/// draws: the standard distributions are implementation-defined, which would
/// make traces differ between standard libraries.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    static RandomStream for_replica(std::uint64_t master_seed, std::uint64_t replica_id) {
        return RandomStream(replica_seed(master_seed, replica_id));
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound), bound > 0. Unbiased (Lemire).
    std::size_t below(std::size_t bound);

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Always consumes exactly one draw, also for p = 0 or p = 1.
    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace chemosem
