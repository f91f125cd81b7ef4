#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace egognn {

std::uint64_t splitmix64(std::uint64_t& state);

// xoshiro256** seeded by four splitmix64 draws. Satisfies
// UniformRandomBitGenerator so it can drive std::shuffle.
class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();
    // Uniform in [0, 1) from the top 53 bits.
    double uniform();
    // Uniform in [0, bound), by rejection.
    std::uint64_t below(std::uint64_t bound);

private:
    std::array<std::uint64_t, 4> s_{};
};

// Seed for an independent stream identified by (base seed, stream id).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

} // namespace egognn
