#include "mlosim/radio.hpp"

#include "mlosim/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace mlosim {

namespace {

struct Modulation {
    int bits_per_subcarrier;
    double coding_rate;
};

// 802.11ax/be MCS 0..11.
constexpr std::array<Modulation, kNumMcs> kMcsTable{{
    {1, 1.0 / 2.0},
    {2, 1.0 / 2.0},
    {2, 3.0 / 4.0},
    {4, 1.0 / 2.0},
    {4, 3.0 / 4.0},
    {6, 2.0 / 3.0},
    {6, 3.0 / 4.0},
    {6, 5.0 / 6.0},
    {8, 3.0 / 4.0},
    {8, 5.0 / 6.0},
    {10, 3.0 / 4.0},
    {10, 5.0 / 6.0},
}};

}  // namespace

double path_loss_db(double distance_m, double carrier_ghz, const PathLossParams& p)
{
    if (!(distance_m > 0.0)) throw DomainError("path_loss_db: distance must be positive");
    if (!(carrier_ghz > 0.0)) throw DomainError("path_loss_db: carrier frequency must be positive");
    const double near = std::min(distance_m, p.breakpoint_m);
    double pl = p.ref_loss_db + 20.0 * std::log10(carrier_ghz / p.ref_freq_ghz) + p.near_slope_db * std::log10(near);
    if (distance_m > p.breakpoint_m) pl += p.far_slope_db * std::log10(distance_m / p.breakpoint_m);
    return pl;
}

double path_loss_db(double distance_m, Band band, const RadioParams& radio, const PathLossParams& params)
{
    return path_loss_db(distance_m, radio.bands[index(band)].carrier_ghz, params);
}

double noise_floor_dbm(double bandwidth_mhz, double noise_figure_db)
{
    return -174.0 + 10.0 * std::log10(bandwidth_mhz * 1e6) + noise_figure_db;
}

double snr_db(double rx_power_dbm, double bandwidth_mhz, double noise_figure_db)
{
    return rx_power_dbm - noise_floor_dbm(bandwidth_mhz, noise_figure_db);
}

int data_subcarriers(double bandwidth_mhz)
{
    if (bandwidth_mhz == 20.0) return 234;
    if (bandwidth_mhz == 40.0) return 468;
    if (bandwidth_mhz == 80.0) return 980;
    if (bandwidth_mhz == 160.0) return 1960;
    throw DomainError("data_subcarriers: unsupported bandwidth " + std::to_string(bandwidth_mhz) + " MHz");
}

double mcs_rate_mbps(int mcs, double bandwidth_mhz, int spatial_streams, double symbol_us)
{
    if (mcs < 0 || mcs >= static_cast<int>(kNumMcs)) throw DomainError("mcs_rate_mbps: MCS out of range");
    const auto& m = kMcsTable[static_cast<std::size_t>(mcs)];
    // bits per microsecond == Mbps
    return spatial_streams * data_subcarriers(bandwidth_mhz) * m.bits_per_subcarrier * m.coding_rate / symbol_us;
}

McsChoice select_mcs(double snr, double bandwidth_mhz, int spatial_streams, const RadioParams& radio)
{
    if (spatial_streams < 1) throw DomainError("select_mcs: need at least one spatial stream");
    McsChoice choice;
    for (int mcs = static_cast<int>(kNumMcs) - 1; mcs >= 0; --mcs) {
        if (snr >= radio.mcs_thresholds_db[static_cast<std::size_t>(mcs)]) {
            choice.index = mcs;
            choice.phy_rate_mbps = mcs_rate_mbps(mcs, bandwidth_mhz, spatial_streams, radio.symbol_us);
            break;
        }
    }
    return choice;
}

BandSet StationLinks::enabled() const noexcept
{
    BandSet set;
    for (const auto& l : links)
        if (l.enabled) set.insert(l.band);
    return set;
}

std::vector<StationLinks> build_link_states(const Scenario& scenario, const RadioParams& radio,
                                            const PathLossParams& path_loss)
{
    std::vector<StationLinks> out;
    out.reserve(scenario.station_count());
    for (const auto& bss : scenario.bsses) {
        for (const auto& sta : bss.stations) {
            StationLinks sl;
            sl.bss = bss.id;
            sl.sta = sta.node.id;
            const double d = distance(bss.ap.position, sta.node.position);
            for (Band b : kAllBands) {
                const auto& bp = radio.bands[index(b)];
                LinkState& l = sl.links[index(b)];
                l.ap_id = bss.id;
                l.sta_id = sta.node.id;
                l.band = b;
                l.rx_power_dbm = bss.ap.tx_power_dbm + radio.tx_gain_db + radio.rx_gain_db -
                                 path_loss_db(d, bp.carrier_ghz, path_loss);
                l.snr_db = snr_db(l.rx_power_dbm, bp.bandwidth_mhz, sta.node.noise_figure_db);
                const auto mcs = select_mcs(l.snr_db, bp.bandwidth_mhz, radio.spatial_streams, radio);
                l.mcs_index = mcs.index;
                l.phy_rate_mbps = mcs.phy_rate_mbps;
                // A link above CCA but below the MCS 0 threshold is unusable.
                l.enabled = l.rx_power_dbm >= radio.cca_dbm && mcs.index.has_value();
                if (sta.assigned_band && *sta.assigned_band != b) l.enabled = false;
            }
            if (sl.enabled().empty())
                throw InvalidScenarioError("station " + std::to_string(sta.node.id) + " of BSS " + std::to_string(bss.id) +
                                           " has no enabled interface");
            out.push_back(sl);
        }
    }
    return out;
}

ContentionGraph::ContentionGraph(Band band, std::size_t n_aps) : band_(band), n_(n_aps), adj_(n_aps * n_aps, 0) {}

void ContentionGraph::add_edge(std::size_t a, std::size_t b)
{
    if (a == b) return;
    adj_[a * n_ + b] = 1;
    adj_[b * n_ + a] = 1;
}

std::vector<std::size_t> ContentionGraph::neighbors(std::size_t a) const
{
    std::vector<std::size_t> out;
    for (std::size_t b = 0; b < n_; ++b)
        if (adjacent(a, b)) out.push_back(b);
    return out;
}

std::size_t ContentionGraph::edge_count() const noexcept
{
    std::size_t n = 0;
    for (const auto v : adj_) n += v;
    return n / 2;
}

PerBand<ContentionGraph> build_contention_graphs(const Scenario& scenario, const RadioParams& radio,
                                                 const PathLossParams& path_loss)
{
    const std::size_t n = scenario.bsses.size();
    PerBand<ContentionGraph> graphs;
    for (Band b : kAllBands) {
        ContentionGraph g(b, n);
        const double f = radio.bands[index(b)].carrier_ghz;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const auto& ai = scenario.bsses[i].ap;
                const auto& aj = scenario.bsses[j].ap;
                const double pl = path_loss_db(distance(ai.position, aj.position), f, path_loss);
                // Equal AP powers make the test reciprocal; check both directions anyway.
                const double rx_ij = ai.tx_power_dbm + radio.tx_gain_db + radio.rx_gain_db - pl;
                const double rx_ji = aj.tx_power_dbm + radio.tx_gain_db + radio.rx_gain_db - pl;
                if (rx_ij >= radio.cca_dbm || rx_ji >= radio.cca_dbm) g.add_edge(i, j);
            }
        }
        graphs[index(b)] = std::move(g);
    }
    return graphs;
}

std::string link_states_to_json(const std::vector<StationLinks>& links)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& sl : links) {
        for (const auto& l : sl.links) {
            arr.push_back({{"ap", l.ap_id},
                           {"sta", l.sta_id},
                           {"band", band_name(l.band)},
                           {"rx_power_dbm", l.rx_power_dbm},
                           {"snr_db", l.snr_db},
                           {"mcs", l.mcs_index ? nlohmann::json(*l.mcs_index) : nlohmann::json(nullptr)},
                           {"phy_rate_mbps", l.phy_rate_mbps},
                           {"enabled", l.enabled}});
        }
    }
    return arr.dump(2);
}

}  // namespace mlosim
