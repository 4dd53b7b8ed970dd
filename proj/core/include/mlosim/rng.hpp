#pragma once

#include <cstdint>
#include <random>

namespace mlosim {

/// Independent sub-streams of one master seed. Each consumer draws from its own
/// stream so that changing one experiment knob does not shift the others' draws.
enum class Stream : std::uint64_t {
    Geometry = 1,
    Policy = 2,
    Traffic = 3,
    TickPhase = 4,
};

/// splitmix64 finalizer; used to spread (seed, stream) pairs into engine seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seeded generator with distribution code that does not depend on the standard
/// library's (implementation-defined) distribution classes, so streams are
/// reproducible across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}
    Rng(std::uint64_t seed, Stream stream)
        : engine_(mix64(mix64(seed) ^ mix64(static_cast<std::uint64_t>(stream) * 0x2545f4914f6cdd1dULL)))
    {
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [lo, hi] (inclusive), unbiased by rejection.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    /// Exponential with the given mean (inverse-CDF sampling).
    double exponential(double mean);

    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace mlosim
