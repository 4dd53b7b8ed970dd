#pragma once

#include "mlosim/config.hpp"
#include "mlosim/radio.hpp"
#include "mlosim/types.hpp"

#include <compare>
#include <map>
#include <set>
#include <span>
#include <vector>

namespace mlosim {

/// Fraction of one second of channel time needed to carry `load_share_mbps` on a link:
///   load / (phy_rate * mac_efficiency * (1 - per))
/// Throws DomainError for a non-positive rate or parameters outside their domains.
double flow_airtime(double load_share_mbps, double phy_rate_mbps, double mac_efficiency, double per);

/// Airtime (us) of one MPDU exchange: DIFS, mean backoff, preamble, data symbols, SIFS, ACK.
double mpdu_exchange_us(double phy_rate_mbps, const MacParams& mac, double symbol_us);

/// Payload bits over exchange airtime, relative to the PHY rate.
double mpdu_efficiency(double phy_rate_mbps, const MacParams& mac, double symbol_us);

/// The configured efficiency, or the MPDU-derived one when none is configured.
double link_efficiency(double phy_rate_mbps, const MacParams& mac, double symbol_us);

/// Seconds of channel time per megabit carried on a link (0 for unusable links).
double airtime_per_mbit(double phy_rate_mbps, const MacParams& mac, double symbol_us);

using Clique = std::vector<std::size_t>;

/// All maximal cliques (Bron-Kerbosch with pivoting). Each clique is sorted and the
/// list is sorted lexicographically; isolated vertices form singleton cliques.
std::vector<Clique> maximal_cliques(const ContentionGraph& graph);

/// Clique-proportional scaling on one band. With D_b the total demand of AP b,
///   s_a = min over maximal cliques C containing a of min(1, 1 / sum_{b in C} D_b)
/// so every clique's allocated airtime is at most 1.
class CliqueScaler {
public:
    CliqueScaler() = default;
    explicit CliqueScaler(const ContentionGraph& graph);

    std::size_t size() const noexcept { return n_; }
    const std::vector<Clique>& cliques() const noexcept { return cliques_; }

    /// scale[a] for every AP given per-AP demand totals.
    void scale(std::span<const double> ap_demand, std::span<double> scale_out) const;

    /// Busy fraction sensed by each AP: own plus one-hop neighbors' allocation, clipped to 1.
    void occupancy(std::span<const double> ap_alloc, std::span<double> occupancy_out) const;

    const std::vector<std::size_t>& sensed(std::size_t ap) const noexcept { return sensed_[ap]; }

private:
    std::size_t n_ = 0;
    std::vector<Clique> cliques_;
    // AP itself followed by its neighbors.
    std::vector<std::vector<std::size_t>> sensed_;
};

struct AirtimeDemand {
    BssId ap = 0;
    Band band = Band::Band24;
    std::map<FlowId, double> per_flow;
};

struct ApBand {
    BssId ap = 0;
    Band band = Band::Band24;
    friend auto operator<=>(const ApBand&, const ApBand&) = default;
};

struct AllocKey {
    BssId ap = 0;
    Band band = Band::Band24;
    FlowId flow = 0;
    friend auto operator<=>(const AllocKey&, const AllocKey&) = default;
};

struct AirtimeSolution {
    std::map<AllocKey, double> demand;
    std::map<AllocKey, double> alloc;
    std::map<ApBand, double> scale;
    std::map<ApBand, double> occupancy;
    /// rho: max(0, 1 - occupancy)
    std::map<ApBand, double> free;
    /// The sensing neighborhoods the occupancy was computed over.
    PerBand<ContentionGraph> graphs;
};

/// Resolves contention for all (AP, band) demands at once. Every AP present in the
/// graphs gets an occupancy/free entry on every band, demand or not.
AirtimeSolution solve_allocation(std::span<const AirtimeDemand> demands, const PerBand<ContentionGraph>& graphs);

/// Free airtime at (ap, band) with the allocations of `exclude` removed from the sensed busy time.
double residual_free(const AirtimeSolution& solution, BssId ap, Band band, const std::set<FlowId>& exclude = {});

}  // namespace mlosim
