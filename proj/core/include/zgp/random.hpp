// SPDX-License-Identifier: Apache-2.0

#ifndef ZGP_RANDOM_HPP
#define ZGP_RANDOM_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace zgp {

/// Seeded random stream used by every stochastic operation in the library.
///
/// All draws are funnelled through the raw 64-bit output of a Mersenne
/// twister so that a given seed yields the same sequence on every run of
/// the same binary. Distribution helpers are implemented by hand instead
/// of through std::*_distribution, whose output is not pinned down by the
/// standard.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed)
        : engine_(seed)
    {
    }

    /// Derives an independent stream from a base seed and a purpose label,
    /// so that e.g. the data split and the evolution loop of one run never
    /// share random state.
    static RandomStream derive(std::uint64_t base_seed, std::string_view label);

    std::uint64_t next_u64() { return engine_(); }

    std::uint32_t next_u32() { return static_cast<std::uint32_t>(engine_() >> 32); }

    /// Uniform double in [0, 1).
    double uniform()
    {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi)
    {
        return lo + uniform() * (hi - lo);
    }

    /// Uniform integer in [0, n). n must be positive and below 2^32, which
    /// covers every index range in this library.
    std::size_t uniform_index(std::size_t n)
    {
        const std::uint64_t high = engine_() >> 32;
        return static_cast<std::size_t>((high * static_cast<std::uint64_t>(n)) >> 32);
    }

    bool bernoulli(double p) { return uniform() < p; }

    bool coin() { return (engine_() & 1u) != 0; }

    /// Standard normal deviate (Box-Muller, one uniform pair per draw).
    double gaussian();

private:
    std::mt19937_64 engine_;
};

} // namespace zgp

#endif
