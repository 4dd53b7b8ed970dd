#include "mlosim/airtime.hpp"

#include "mlosim/error.hpp"

#include <algorithm>
#include <cmath>

namespace mlosim {

double flow_airtime(double load_share_mbps, double phy_rate_mbps, double mac_efficiency, double per)
{
    if (!(phy_rate_mbps > 0.0)) throw DomainError("flow_airtime: PHY rate must be positive");
    if (!(mac_efficiency > 0.0 && mac_efficiency <= 1.0)) throw DomainError("flow_airtime: efficiency outside (0, 1]");
    if (!(per >= 0.0 && per < 1.0)) throw DomainError("flow_airtime: PER outside [0, 1)");
    if (load_share_mbps < 0.0) throw DomainError("flow_airtime: negative load");
    return load_share_mbps / (phy_rate_mbps * mac_efficiency * (1.0 - per));
}

double mpdu_exchange_us(double phy_rate_mbps, const MacParams& mac, double symbol_us)
{
    if (!(phy_rate_mbps > 0.0)) throw DomainError("mpdu_exchange_us: PHY rate must be positive");
    const double difs = mac.sifs_us + 2.0 * mac.slot_us;
    const double backoff = 0.5 * mac.cw_min * mac.slot_us;
    // SERVICE (16) + MPDU + tail (6) bits, padded to whole symbols.
    const double bits = 16.0 + 8.0 * (mac.mpdu_bytes + mac.mac_overhead_bytes) + 6.0;
    const double bits_per_symbol = phy_rate_mbps * symbol_us;
    const double data = std::ceil(bits / bits_per_symbol - 1e-9) * symbol_us;
    return difs + backoff + mac.preamble_us + data + mac.sifs_us + mac.ack_us;
}

double mpdu_efficiency(double phy_rate_mbps, const MacParams& mac, double symbol_us)
{
    const double goodput = 8.0 * mac.mpdu_bytes / mpdu_exchange_us(phy_rate_mbps, mac, symbol_us);
    return std::min(1.0, goodput / phy_rate_mbps);
}

double link_efficiency(double phy_rate_mbps, const MacParams& mac, double symbol_us)
{
    return mac.efficiency ? *mac.efficiency : mpdu_efficiency(phy_rate_mbps, mac, symbol_us);
}

double airtime_per_mbit(double phy_rate_mbps, const MacParams& mac, double symbol_us)
{
    if (!(phy_rate_mbps > 0.0)) return 0.0;
    return flow_airtime(1.0, phy_rate_mbps, link_efficiency(phy_rate_mbps, mac, symbol_us), mac.per);
}

namespace {

void bron_kerbosch(const ContentionGraph& g, Clique& r, std::vector<std::size_t> p, std::vector<std::size_t> x,
                   std::vector<Clique>& out)
{
    if (p.empty() && x.empty()) {
        Clique c = r;
        std::sort(c.begin(), c.end());
        out.push_back(std::move(c));
        return;
    }
    // Pivot maximizing |P ∩ N(u)|.
    std::size_t pivot = 0;
    std::size_t best = 0;
    bool have_pivot = false;
    for (const auto* set : {&p, &x}) {
        for (const std::size_t u : *set) {
            const auto k = static_cast<std::size_t>(
                std::count_if(p.begin(), p.end(), [&](std::size_t v) { return g.adjacent(u, v); }));
            if (!have_pivot || k > best) {
                pivot = u;
                best = k;
                have_pivot = true;
            }
        }
    }
    const std::vector<std::size_t> candidates = [&] {
        std::vector<std::size_t> c;
        for (const std::size_t v : p)
            if (!g.adjacent(pivot, v)) c.push_back(v);
        return c;
    }();
    for (const std::size_t v : candidates) {
        std::vector<std::size_t> p2, x2;
        for (const std::size_t w : p)
            if (g.adjacent(v, w)) p2.push_back(w);
        for (const std::size_t w : x)
            if (g.adjacent(v, w)) x2.push_back(w);
        r.push_back(v);
        bron_kerbosch(g, r, std::move(p2), std::move(x2), out);
        r.pop_back();
        p.erase(std::find(p.begin(), p.end(), v));
        x.push_back(v);
    }
}

}  // namespace

std::vector<Clique> maximal_cliques(const ContentionGraph& graph)
{
    std::vector<Clique> out;
    std::vector<std::size_t> all(graph.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    if (all.empty()) return out;
    Clique r;
    bron_kerbosch(graph, r, std::move(all), {}, out);
    std::sort(out.begin(), out.end());
    return out;
}

CliqueScaler::CliqueScaler(const ContentionGraph& graph) : n_(graph.size()), cliques_(maximal_cliques(graph)), sensed_(n_)
{
    for (std::size_t a = 0; a < n_; ++a) {
        sensed_[a].push_back(a);
        for (const auto b : graph.neighbors(a)) sensed_[a].push_back(b);
    }
}

void CliqueScaler::scale(std::span<const double> ap_demand, std::span<double> scale_out) const
{
    std::fill(scale_out.begin(), scale_out.end(), 1.0);
    for (const auto& clique : cliques_) {
        double sum = 0.0;
        for (const auto a : clique) sum += ap_demand[a];
        if (sum <= 1.0) continue;
        const double factor = 1.0 / sum;
        for (const auto a : clique) scale_out[a] = std::min(scale_out[a], factor);
    }
}

void CliqueScaler::occupancy(std::span<const double> ap_alloc, std::span<double> occupancy_out) const
{
    for (std::size_t a = 0; a < n_; ++a) {
        double busy = 0.0;
        for (const auto b : sensed_[a]) busy += ap_alloc[b];
        occupancy_out[a] = std::min(1.0, busy);
    }
}

AirtimeSolution solve_allocation(std::span<const AirtimeDemand> demands, const PerBand<ContentionGraph>& graphs)
{
    AirtimeSolution sol;
    sol.graphs = graphs;

    for (const auto& d : demands) {
        for (const auto& [flow, airtime] : d.per_flow) {
            if (!(airtime >= 0.0) || !std::isfinite(airtime)) throw DomainError("solve_allocation: invalid demand");
            sol.demand[{d.ap, d.band, flow}] += airtime;
        }
    }

    for (const Band band : kAllBands) {
        const ContentionGraph& g = graphs[index(band)];
        const CliqueScaler scaler(g);
        const std::size_t n = g.size();
        std::vector<double> total(n, 0.0), scale(n, 1.0), alloc(n, 0.0), occ(n, 0.0);
        for (const auto& [key, airtime] : sol.demand) {
            if (key.band != band) continue;
            if (key.ap >= n) throw DomainError("solve_allocation: AP id outside the contention graph");
            total[key.ap] += airtime;
        }
        scaler.scale(total, scale);
        for (const auto& [key, airtime] : sol.demand) {
            if (key.band != band) continue;
            const double a = airtime * scale[key.ap];
            sol.alloc[key] = a;
            alloc[key.ap] += a;
        }
        scaler.occupancy(alloc, occ);
        for (std::size_t a = 0; a < n; ++a) {
            const ApBand ab{static_cast<BssId>(a), band};
            sol.scale[ab] = scale[a];
            sol.occupancy[ab] = occ[a];
            sol.free[ab] = std::max(0.0, 1.0 - occ[a]);
        }
    }
    return sol;
}

double residual_free(const AirtimeSolution& solution, BssId ap, Band band, const std::set<FlowId>& exclude)
{
    const ContentionGraph& g = solution.graphs[index(band)];
    if (ap >= g.size()) throw DomainError("residual_free: unknown AP");
    double busy = 0.0;
    for (const auto& [key, a] : solution.alloc) {
        if (key.band != band) continue;
        if (key.ap != ap && !g.adjacent(ap, key.ap)) continue;
        if (exclude.contains(key.flow)) continue;
        busy += a;
    }
    return std::max(0.0, 1.0 - std::min(1.0, busy));
}

}  // namespace mlosim
