// SPDX-License-Identifier: Apache-2.0

#include "zgp/random.hpp"

#include <cmath>
#include <numbers>

namespace zgp {

namespace {

    // splitmix64 finalizer; used to turn (seed, label) into a well-mixed
    // engine seed.
    std::uint64_t mix(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    std::uint64_t fnv1a(std::string_view s)
    {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        return h;
    }

} // namespace

RandomStream RandomStream::derive(std::uint64_t base_seed, std::string_view label)
{
    return RandomStream(mix(base_seed ^ mix(fnv1a(label))));
}

double RandomStream::gaussian()
{
    // Box-Muller; u1 is kept away from zero so the log is finite.
    double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace zgp
