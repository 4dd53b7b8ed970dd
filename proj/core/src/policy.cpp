#include "mlosim/policy.hpp"

#include "mlosim/error.hpp"

#include <algorithm>
#include <cmath>

namespace mlosim {

Weights slci(const PolicyInput& input)
{
    if (input.enabled.empty()) throw DomainError("slci: no enabled interface");
    Weights w{};
    std::optional<Band> best;
    for (const Band b : kAllBands) {
        if (!input.enabled.contains(b)) continue;
        // Strict comparison keeps the lowest-frequency band on ties.
        if (!best || input.rho[index(b)] > input.rho[index(*best)]) best = b;
    }
    w[index(*best)] = 1.0;
    return w;
}

Weights mcaa(const PolicyInput& input)
{
    if (input.enabled.empty()) throw DomainError("mcaa: no enabled interface");
    // Rounding residue of a saturated band (1 - sum of scaled allocations) is not free airtime.
    auto usable = [&](Band b) {
        const double r = input.rho[index(b)];
        return r > kSaturationTolerance ? r : 0.0;
    };
    Weights w{};
    double total = 0.0;
    for (const Band b : kAllBands)
        if (input.enabled.contains(b)) total += usable(b);
    const double uniform = 1.0 / static_cast<double>(input.enabled.size());
    for (const Band b : kAllBands) {
        if (!input.enabled.contains(b)) continue;
        w[index(b)] = total > 0.0 ? usable(b) / total : uniform;
    }
    return w;
}

Weights legacy_assign(const PolicyInput& input, Band assigned_band)
{
    if (!input.enabled.contains(assigned_band))
        throw InvalidScenarioError("legacy_assign: assigned band " + std::string(band_name(assigned_band)) +
                                   " is not enabled for flow " + std::to_string(input.flow));
    Weights w{};
    w[index(assigned_band)] = 1.0;
    return w;
}

std::vector<McabFlow> mcab_order(std::span<const McabFlow> flows)
{
    std::vector<McabFlow> sorted(flows.begin(), flows.end());
    std::sort(sorted.begin(), sorted.end(), [](const McabFlow& a, const McabFlow& b) {
        if (a.enabled.size() != b.enabled.size()) return a.enabled.size() < b.enabled.size();
        if (a.arrival_time != b.arrival_time) return a.arrival_time < b.arrival_time;
        return a.id < b.id;
    });
    return sorted;
}

WeightAssignment mcab_reallocate(std::span<const McabFlow> flows, const RhoProvider& rho_provider)
{
    WeightAssignment out;
    if (flows.empty()) return out;

    PerBand<double> room{};
    for (const Band b : kAllBands) room[index(b)] = std::clamp(rho_provider(b), 0.0, 1.0);

    for (const auto& f : mcab_order(flows)) {
        PolicyInput in;
        in.flow = f.id;
        in.enabled = f.enabled;
        in.rho = room;
        in.arrival_time = f.arrival_time;
        const Weights w = mcaa(in);
        for (const Band b : kAllBands) {
            const auto i = index(b);
            const double demand = f.load_mbps * w[i] * f.airtime_per_mbit[i];
            room[i] -= std::min(room[i], demand);
        }
        out.emplace(f.id, w);
    }
    return out;
}

bool is_valid_weights(const Weights& w, BandSet enabled, double tol) noexcept
{
    double sum = 0.0;
    for (const Band b : kAllBands) {
        const double x = w[index(b)];
        if (!(x >= 0.0)) return false;
        if (x > 0.0 && !enabled.contains(b)) return false;
        sum += x;
    }
    return std::abs(sum - 1.0) <= tol;
}

}  // namespace mlosim
