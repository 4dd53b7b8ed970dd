#pragma once

#include "mlosim/config.hpp"
#include "mlosim/scenario.hpp"
#include "mlosim/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mlosim {

/// Dual-slope log-distance path loss in dB. Throws DomainError for distance <= 0.
double path_loss_db(double distance_m, double carrier_ghz, const PathLossParams& params = {});
double path_loss_db(double distance_m, Band band, const RadioParams& radio = {}, const PathLossParams& params = {});

/// Thermal noise floor (dBm) over `bandwidth_mhz` plus the receiver noise figure.
double noise_floor_dbm(double bandwidth_mhz, double noise_figure_db);
double snr_db(double rx_power_dbm, double bandwidth_mhz, double noise_figure_db);

/// Data subcarriers of an HE/EHT RU spanning the whole channel.
int data_subcarriers(double bandwidth_mhz);

struct McsChoice {
    std::optional<int> index;
    double phy_rate_mbps = 0.0;
};

double mcs_rate_mbps(int mcs, double bandwidth_mhz, int spatial_streams, double symbol_us = 13.6);

/// Highest MCS whose SNR threshold is met, or none below the MCS 0 threshold.
McsChoice select_mcs(double snr_db, double bandwidth_mhz, int spatial_streams, const RadioParams& radio = {});

struct LinkState {
    BssId ap_id = 0;
    StationId sta_id = 0;
    Band band = Band::Band24;
    double rx_power_dbm = 0.0;
    double snr_db = 0.0;
    std::optional<int> mcs_index;
    double phy_rate_mbps = 0.0;
    bool enabled = false;
};

/// Link states of one station over the three bands.
struct StationLinks {
    BssId bss = 0;
    StationId sta = 0;
    PerBand<LinkState> links;

    BandSet enabled() const noexcept;
};

/// One entry per station, in scenario order (BSS by BSS). Throws InvalidScenarioError
/// if any station ends up with no enabled interface.
std::vector<StationLinks> build_link_states(const Scenario& scenario, const RadioParams& radio = {},
                                            const PathLossParams& path_loss = {});

/// Symmetric, irreflexive AP adjacency for one band.
class ContentionGraph {
public:
    ContentionGraph() = default;
    ContentionGraph(Band band, std::size_t n_aps);

    Band band() const noexcept { return band_; }
    std::size_t size() const noexcept { return n_; }
    bool adjacent(std::size_t a, std::size_t b) const noexcept { return adj_[a * n_ + b] != 0; }
    void add_edge(std::size_t a, std::size_t b);
    std::vector<std::size_t> neighbors(std::size_t a) const;
    std::size_t edge_count() const noexcept;

private:
    Band band_ = Band::Band24;
    std::size_t n_ = 0;
    std::vector<unsigned char> adj_;
};

PerBand<ContentionGraph> build_contention_graphs(const Scenario& scenario, const RadioParams& radio = {},
                                                 const PathLossParams& path_loss = {});

std::string link_states_to_json(const std::vector<StationLinks>& links);

}  // namespace mlosim
