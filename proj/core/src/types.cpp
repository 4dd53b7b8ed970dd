#include "mlosim/types.hpp"

namespace mlosim {

std::optional<Band> parse_band(std::string_view s) noexcept
{
    if (s == "2.4GHz" || s == "2g4" || s == "2.4") return Band::Band24;
    if (s == "5GHz" || s == "5g" || s == "5") return Band::Band5;
    if (s == "6GHz" || s == "6g" || s == "6") return Band::Band6;
    return std::nullopt;
}

std::string_view to_string(TrafficKind k) noexcept
{
    return k == TrafficKind::Video ? "video" : "data";
}

std::string_view to_string(Capability c) noexcept
{
    return c == Capability::MLO ? "MLO" : "MBSL";
}

std::string_view to_string(Policy p) noexcept
{
    switch (p) {
    case Policy::SLCI: return "SLCI";
    case Policy::MCAA: return "MCAA";
    case Policy::MCAB: return "MCAB";
    case Policy::LegacySingle: return "MBSL";
    }
    return "?";
}

std::optional<Policy> parse_policy(std::string_view s) noexcept
{
    if (s == "SLCI" || s == "slci") return Policy::SLCI;
    if (s == "MCAA" || s == "mcaa") return Policy::MCAA;
    if (s == "MCAB" || s == "mcab") return Policy::MCAB;
    if (s == "MBSL" || s == "mbsl" || s == "MB-SL" || s == "LegacySingle") return Policy::LegacySingle;
    return std::nullopt;
}

}  // namespace mlosim
