#pragma once

#include <cstdint>

namespace cmcx {

/**
 * Counter-based pseudo-random stream (SplitMix64).
 *
 * The n-th output is a pure function of (seed, n), so a stream is fully
 * replayable from its seed, and `child(key)` derives an independent stream
 * without advancing the parent. Parallel consumers (e.g. Monte Carlo
 * repeats) each take a child keyed by their task index, which makes results
 * independent of scheduling order.
 */
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) noexcept : seed_(seed) {}

    std::uint64_t next_u64() noexcept;

    /// Uniform double in [0, 1), 53 random bits.
    double next_double() noexcept;

    /// Uniform integer in [0, n). n must be >= 1.
    std::uint32_t next_below(std::uint32_t n) noexcept;

    /// Independent stream derived from (seed, key). Does not advance *this.
    RngStream child(std::uint64_t key) const noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t draws() const noexcept { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace cmcx
