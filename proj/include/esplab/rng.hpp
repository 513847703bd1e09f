#pragma once

#include <cstdint>
#include <span>

namespace esplab {

/// Deterministic random stream built on the SplitMix64 finalizer.
///
/// The generator is a pure function of (seed, stream-id, draw index): the
/// internal state starts at mix(seed) xor mix(stream-id + golden), advances by
/// the 64-bit golden-ratio constant, and each output is the SplitMix64
/// scramble of the state. All arithmetic is unsigned 64-bit, so identical
/// (seed, stream-id) reproduce the identical value sequence on any platform.
class rng_stream {
public:
    explicit rng_stream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : state_(mix(seed) ^ mix(stream_id + golden)) {}

    std::uint64_t next_u64() {
        state_ += golden;
        return mix(state_);
    }

    /// Uniform double in [0, 1), 53 mantissa bits of the next draw.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_unit();
    }

    /// Integer in [0, n), by rejection-free scaling (n is tiny in practice).
    std::uint64_t next_below(std::uint64_t n) {
        return next_u64() % n;
    }

    void fill_uniform(std::span<double> out, double lo, double hi) {
        for (double& v : out) v = uniform(lo, hi);
    }

    std::uint64_t seed_state() const { return state_; }

private:
    static constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace esplab
