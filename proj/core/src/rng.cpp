#include "mlosim/rng.hpp"

#include <cmath>
#include <limits>

namespace mlosim {

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi)
{
    if (hi <= lo) return lo;
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return lo + static_cast<std::int64_t>(x % span);
}

double Rng::exponential(double mean)
{
    return -mean * std::log1p(-uniform01());
}

}  // namespace mlosim
