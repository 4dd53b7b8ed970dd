#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string_view>

namespace mlosim {

/// The three 802.11be bands, ordered by ascending carrier frequency.
enum class Band : std::uint8_t { Band24 = 0, Band5 = 1, Band6 = 2 };

inline constexpr std::size_t kNumBands = 3;
inline constexpr std::array<Band, kNumBands> kAllBands{Band::Band24, Band::Band5, Band::Band6};

template <typename T>
using PerBand = std::array<T, kNumBands>;

constexpr std::size_t index(Band b) noexcept { return static_cast<std::size_t>(b); }

constexpr std::string_view band_name(Band b) noexcept
{
    switch (b) {
    case Band::Band24: return "2.4GHz";
    case Band::Band5: return "5GHz";
    case Band::Band6: return "6GHz";
    }
    return "?";
}

std::optional<Band> parse_band(std::string_view s) noexcept;

/// Small value set of bands (the enabled-interface set of a station).
class BandSet {
public:
    constexpr BandSet() = default;
    constexpr BandSet(std::initializer_list<Band> bands) noexcept
    {
        for (Band b : bands) insert(b);
    }

    static constexpr BandSet all() noexcept { return BandSet{Band::Band24, Band::Band5, Band::Band6}; }

    constexpr void insert(Band b) noexcept { bits_ |= bit(b); }
    constexpr void erase(Band b) noexcept { bits_ &= static_cast<std::uint8_t>(~bit(b)); }
    constexpr bool contains(Band b) const noexcept { return (bits_ & bit(b)) != 0; }
    constexpr bool empty() const noexcept { return bits_ == 0; }
    constexpr std::size_t size() const noexcept
    {
        return static_cast<std::size_t>((bits_ & 1u) + ((bits_ >> 1) & 1u) + ((bits_ >> 2) & 1u));
    }
    constexpr std::uint8_t bits() const noexcept { return bits_; }

    friend constexpr bool operator==(BandSet, BandSet) = default;

private:
    static constexpr std::uint8_t bit(Band b) noexcept { return static_cast<std::uint8_t>(1u << index(b)); }
    std::uint8_t bits_ = 0;
};

using BssId = std::uint32_t;
using StationId = std::uint32_t;
using FlowId = std::uint32_t;

enum class TrafficKind : std::uint8_t { Video, Data };

enum class Capability : std::uint8_t { MLO, MBSL };

/// Traffic-to-link allocation policy run by an AP's traffic manager.
enum class Policy : std::uint8_t { SLCI, MCAA, MCAB, LegacySingle };

std::string_view to_string(TrafficKind k) noexcept;
std::string_view to_string(Capability c) noexcept;
std::string_view to_string(Policy p) noexcept;
std::optional<Policy> parse_policy(std::string_view s) noexcept;

/// Per-band traffic weights; nonnegative, summing to one over enabled bands.
using Weights = PerBand<double>;

}  // namespace mlosim
