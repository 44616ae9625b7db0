// xoshiro256** (Blackman & Vigna), seeded through splitmix64. Integer-only
// state updates, so streams are bit-identical on every platform.

#pragma once

#include <array>
#include <cstdint>

namespace gsb {

class Xoshiro256ss {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256ss(std::uint64_t seed);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    static constexpr const char* name() { return "xoshiro256**/splitmix64"; }

    result_type operator()();

    /// Advances the state by 2^128 draws; successive jumps give
    /// non-overlapping sub-streams.
    void jump();

    /// Uniform on (0, 1) with 53 random bits.
    double uniform_open();

    /// Standard normal via the Box-Muller transform; values are produced in
    /// pairs and the second one is cached.
    double normal();

private:
    std::array<std::uint64_t, 4> s_{};
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace gsb
