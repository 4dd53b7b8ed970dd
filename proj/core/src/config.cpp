#include "mlosim/config.hpp"

#include "mlosim/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace mlosim {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view s)
{
    s = trim(s);
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v))
        throw ConfigError("expected a number, got '" + std::string(s) + "'");
    return v;
}

long long parse_integer(std::string_view s)
{
    s = trim(s);
    long long v = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end) throw ConfigError("expected an integer, got '" + std::string(s) + "'");
    return v;
}

bool parse_bool(std::string_view s)
{
    s = trim(s);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ConfigError("expected true/false, got '" + std::string(s) + "'");
}

std::vector<double> parse_list(std::string_view s)
{
    std::vector<double> out;
    s = trim(s);
    if (s.empty()) return out;
    while (true) {
        const auto comma = s.find(',');
        out.push_back(parse_double(s.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

std::string format_list(const auto& values)
{
    std::string out;
    for (const double v : values) {
        if (!out.empty()) out += ", ";
        out += format_double(v);
    }
    return out;
}

struct Field {
    std::string key;
    std::function<std::string(const RunConfig&)> get;
    std::function<void(RunConfig&, std::string_view)> set;
};

template <typename Getter>
Field real_field(std::string key, Getter member)
{
    return {std::move(key),
            [member](const RunConfig& c) { return format_double(member(c)); },
            [member](RunConfig& c, std::string_view v) { member(c) = parse_double(v); }};
}

template <typename Getter>
Field int_field(std::string key, Getter member)
{
    return {std::move(key),
            [member](const RunConfig& c) { return std::to_string(member(c)); },
            [member](RunConfig& c, std::string_view v) {
                using T = std::remove_reference_t<decltype(member(c))>;
                member(c) = static_cast<T>(parse_integer(v));
            }};
}

template <typename Getter>
Field bool_field(std::string key, Getter member)
{
    return {std::move(key),
            [member](const RunConfig& c) { return std::string(member(c) ? "true" : "false"); },
            [member](RunConfig& c, std::string_view v) { member(c) = parse_bool(v); }};
}

const std::vector<Field>& fields()
{
    static const std::vector<Field> table = [] {
        std::vector<Field> f;
        constexpr std::array<std::string_view, kNumBands> band_keys{"2g4", "5g", "6g"};
        for (Band b : kAllBands) {
            const std::string prefix = "radio.band." + std::string(band_keys[index(b)]);
            const auto i = index(b);
            f.push_back(real_field(prefix + ".carrier_ghz", [i](auto& c) -> auto& { return c.radio.bands[i].carrier_ghz; }));
            f.push_back(real_field(prefix + ".bandwidth_mhz", [i](auto& c) -> auto& { return c.radio.bands[i].bandwidth_mhz; }));
        }
        f.push_back(real_field("radio.ap_tx_dbm", [](auto& c) -> auto& { return c.radio.ap_tx_dbm; }));
        f.push_back(real_field("radio.sta_tx_dbm", [](auto& c) -> auto& { return c.radio.sta_tx_dbm; }));
        f.push_back(real_field("radio.tx_gain_db", [](auto& c) -> auto& { return c.radio.tx_gain_db; }));
        f.push_back(real_field("radio.rx_gain_db", [](auto& c) -> auto& { return c.radio.rx_gain_db; }));
        f.push_back(real_field("radio.cca_dbm", [](auto& c) -> auto& { return c.radio.cca_dbm; }));
        f.push_back(real_field("radio.noise_figure_db", [](auto& c) -> auto& { return c.radio.noise_figure_db; }));
        f.push_back(int_field("radio.spatial_streams", [](auto& c) -> auto& { return c.radio.spatial_streams; }));
        f.push_back(real_field("radio.symbol_us", [](auto& c) -> auto& { return c.radio.symbol_us; }));
        f.push_back({"radio.mcs_thresholds_db",
                     [](const RunConfig& c) { return format_list(c.radio.mcs_thresholds_db); },
                     [](RunConfig& c, std::string_view v) {
                         const auto values = parse_list(v);
                         if (values.size() != kNumMcs) throw ConfigError("expected 12 comma-separated thresholds");
                         std::copy(values.begin(), values.end(), c.radio.mcs_thresholds_db.begin());
                     }});

        f.push_back(real_field("path_loss.ref_loss_db", [](auto& c) -> auto& { return c.path_loss.ref_loss_db; }));
        f.push_back(real_field("path_loss.ref_freq_ghz", [](auto& c) -> auto& { return c.path_loss.ref_freq_ghz; }));
        f.push_back(real_field("path_loss.near_slope_db", [](auto& c) -> auto& { return c.path_loss.near_slope_db; }));
        f.push_back(real_field("path_loss.breakpoint_m", [](auto& c) -> auto& { return c.path_loss.breakpoint_m; }));
        f.push_back(real_field("path_loss.far_slope_db", [](auto& c) -> auto& { return c.path_loss.far_slope_db; }));

        f.push_back(real_field("mac.mpdu_bytes", [](auto& c) -> auto& { return c.mac.mpdu_bytes; }));
        f.push_back({"mac.efficiency",
                     [](const RunConfig& c) { return c.mac.efficiency ? format_double(*c.mac.efficiency) : std::string("mpdu"); },
                     [](RunConfig& c, std::string_view v) {
                         if (trim(v) == "mpdu")
                             c.mac.efficiency.reset();
                         else
                             c.mac.efficiency = parse_double(v);
                     }});
        f.push_back(real_field("mac.per", [](auto& c) -> auto& { return c.mac.per; }));
        f.push_back(real_field("mac.mac_overhead_bytes", [](auto& c) -> auto& { return c.mac.mac_overhead_bytes; }));
        f.push_back(real_field("mac.slot_us", [](auto& c) -> auto& { return c.mac.slot_us; }));
        f.push_back(real_field("mac.sifs_us", [](auto& c) -> auto& { return c.mac.sifs_us; }));
        f.push_back(int_field("mac.cw_min", [](auto& c) -> auto& { return c.mac.cw_min; }));
        f.push_back(real_field("mac.preamble_us", [](auto& c) -> auto& { return c.mac.preamble_us; }));
        f.push_back(real_field("mac.ack_us", [](auto& c) -> auto& { return c.mac.ack_us; }));

        f.push_back(real_field("traffic.t_on_s", [](auto& c) -> auto& { return c.traffic.t_on_s; }));
        f.push_back(real_field("traffic.t_off_s", [](auto& c) -> auto& { return c.traffic.t_off_s; }));
        f.push_back(bool_field("traffic.start_on", [](auto& c) -> auto& { return c.traffic.start_on; }));
        f.push_back(real_field("traffic.video_load_min_mbps", [](auto& c) -> auto& { return c.traffic.video_load_mbps.lo; }));
        f.push_back(real_field("traffic.video_load_max_mbps", [](auto& c) -> auto& { return c.traffic.video_load_mbps.hi; }));
        f.push_back(real_field("traffic.data_load_min_mbps", [](auto& c) -> auto& { return c.traffic.data_load_mbps.lo; }));
        f.push_back(real_field("traffic.data_load_max_mbps", [](auto& c) -> auto& { return c.traffic.data_load_mbps.hi; }));

        f.push_back(int_field("scenario.n_bss", [](auto& c) -> auto& { return c.scenario.n_bss; }));
        f.push_back(real_field("scenario.area_width_m", [](auto& c) -> auto& { return c.scenario.area_width_m; }));
        f.push_back(real_field("scenario.area_height_m", [](auto& c) -> auto& { return c.scenario.area_height_m; }));
        f.push_back(real_field("scenario.min_ap_distance_m", [](auto& c) -> auto& { return c.scenario.min_ap_distance_m; }));
        f.push_back(real_field("scenario.station_distance_min_m", [](auto& c) -> auto& { return c.scenario.station_distance_m.lo; }));
        f.push_back(real_field("scenario.station_distance_max_m", [](auto& c) -> auto& { return c.scenario.station_distance_m.hi; }));
        f.push_back(int_field("scenario.neighbor_stations_min", [](auto& c) -> auto& { return c.scenario.neighbor_stations.lo; }));
        f.push_back(int_field("scenario.neighbor_stations_max", [](auto& c) -> auto& { return c.scenario.neighbor_stations.hi; }));
        f.push_back(int_field("scenario.central_video_stations", [](auto& c) -> auto& { return c.scenario.central_video_stations; }));
        f.push_back(int_field("scenario.central_data_stations", [](auto& c) -> auto& { return c.scenario.central_data_stations; }));
        f.push_back(int_field("scenario.max_attempts", [](auto& c) -> auto& { return c.scenario.max_attempts; }));

        f.push_back({"policy.central",
                     [](const RunConfig& c) { return std::string(to_string(c.policy.central)); },
                     [](RunConfig& c, std::string_view v) {
                         const auto p = parse_policy(trim(v));
                         if (!p) throw ConfigError("expected one of SLCI, MCAA, MCAB, MBSL");
                         c.policy.central = *p;
                     }});
        f.push_back(real_field("policy.mlo_fraction", [](auto& c) -> auto& { return c.policy.mlo_fraction; }));
        f.push_back(real_field("policy.mcab_delta_s", [](auto& c) -> auto& { return c.policy.mcab_delta_s; }));
        f.push_back(bool_field("policy.random_tick_phase", [](auto& c) -> auto& { return c.policy.random_tick_phase; }));

        f.push_back(real_field("sim.horizon_s", [](auto& c) -> auto& { return c.sim.horizon_s; }));
        f.push_back(bool_field("sim.record_congestion", [](auto& c) -> auto& { return c.sim.record_congestion; }));
        f.push_back(real_field("sim.congestion_resample_s", [](auto& c) -> auto& { return c.sim.congestion_resample_s; }));

        f.push_back({"metrics.quantile",
                     [](const RunConfig& c) {
                         return std::string(c.metrics.quantile == QuantileRule::NearestRankUpper ? "nearest-rank-upper"
                                                                                                 : "nearest-rank-lower");
                     },
                     [](RunConfig& c, std::string_view v) {
                         v = trim(v);
                         if (v == "nearest-rank-upper")
                             c.metrics.quantile = QuantileRule::NearestRankUpper;
                         else if (v == "nearest-rank-lower")
                             c.metrics.quantile = QuantileRule::NearestRankLower;
                         else
                             throw ConfigError("expected nearest-rank-upper or nearest-rank-lower");
                     }});
        f.push_back(real_field("metrics.satisfaction_threshold", [](auto& c) -> auto& { return c.metrics.satisfaction_threshold; }));

        f.push_back(int_field("experiment.ns_a", [](auto& c) -> auto& { return c.experiment.ns_a; }));
        f.push_back(int_field("experiment.ns_b", [](auto& c) -> auto& { return c.experiment.ns_b; }));
        f.push_back(int_field("experiment.n_bss_b", [](auto& c) -> auto& { return c.experiment.n_bss_b; }));
        f.push_back({"experiment.base_seed",
                     [](const RunConfig& c) { return std::to_string(c.experiment.base_seed); },
                     [](RunConfig& c, std::string_view v) {
                         const auto n = parse_integer(v);
                         if (n < 0) throw ConfigError("seed must be nonnegative");
                         c.experiment.base_seed = static_cast<std::uint64_t>(n);
                     }});
        f.push_back({"experiment.fractions",
                     [](const RunConfig& c) { return format_list(c.experiment.fractions); },
                     [](RunConfig& c, std::string_view v) { c.experiment.fractions = parse_list(v); }});
        f.push_back(int_field("experiment.workers", [](auto& c) -> auto& { return c.experiment.workers; }));
        return f;
    }();
    return table;
}

}  // namespace

std::string format_double(double v)
{
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return ec == std::errc{} ? std::string(buf.data(), ptr) : std::string("nan");
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h) noexcept
{
    for (const char ch : bytes) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ULL;
    }
    return h;
}

RunConfig parse_config(std::string_view text)
{
    RunConfig config;
    std::vector<std::string> errors;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            errors.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
            continue;
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        const auto& table = fields();
        const auto it = std::find_if(table.begin(), table.end(), [&](const Field& f) { return f.key == key; });
        if (it == table.end()) {
            errors.push_back("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
            continue;
        }
        try {
            it->set(config, value);
        } catch (const ConfigError& e) {
            errors.push_back("line " + std::to_string(line_no) + ": " + std::string(key) + ": " + e.what());
        }
    }
    for (const auto& problem : validate(config)) errors.push_back(problem);
    if (!errors.empty()) {
        std::string msg;
        for (const auto& e : errors) msg += e + "\n";
        msg.pop_back();
        throw ConfigError(msg);
    }
    return config;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config(ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ":\n" + e.what());
    }
}

std::vector<std::string> validate(const RunConfig& c)
{
    std::vector<std::string> out;
    auto check = [&out](bool ok, std::string_view key, std::string_view what) {
        if (!ok) out.push_back(std::string(key) + ": " + std::string(what));
    };
    for (Band b : kAllBands) {
        const auto& bp = c.radio.bands[index(b)];
        check(bp.carrier_ghz > 0, "radio.band.*.carrier_ghz", "must be > 0");
        check(bp.bandwidth_mhz == 20 || bp.bandwidth_mhz == 40 || bp.bandwidth_mhz == 80 || bp.bandwidth_mhz == 160,
              "radio.band.*.bandwidth_mhz", "must be one of 20, 40, 80, 160");
    }
    check(c.radio.spatial_streams >= 1, "radio.spatial_streams", "must be >= 1");
    check(c.radio.symbol_us > 0, "radio.symbol_us", "must be > 0");
    check(std::is_sorted(c.radio.mcs_thresholds_db.begin(), c.radio.mcs_thresholds_db.end()), "radio.mcs_thresholds_db",
          "must be non-decreasing");
    check(c.path_loss.ref_freq_ghz > 0, "path_loss.ref_freq_ghz", "must be > 0");
    check(c.path_loss.breakpoint_m > 0, "path_loss.breakpoint_m", "must be > 0");
    check(c.path_loss.near_slope_db >= 0 && c.path_loss.far_slope_db >= 0, "path_loss.*_slope_db", "must be >= 0");
    check(c.mac.mpdu_bytes > 0, "mac.mpdu_bytes", "must be > 0");
    check(!c.mac.efficiency || (*c.mac.efficiency > 0 && *c.mac.efficiency <= 1), "mac.efficiency", "must be in (0, 1] or 'mpdu'");
    check(c.mac.per >= 0 && c.mac.per < 1, "mac.per", "must be in [0, 1)");
    check(c.mac.cw_min >= 0, "mac.cw_min", "must be >= 0");
    check(c.traffic.t_on_s > 0, "traffic.t_on_s", "must be > 0");
    check(c.traffic.t_off_s > 0, "traffic.t_off_s", "must be > 0");
    check(c.traffic.video_load_mbps.lo >= 0 && c.traffic.video_load_mbps.lo <= c.traffic.video_load_mbps.hi,
          "traffic.video_load_*", "need 0 <= min <= max");
    check(c.traffic.data_load_mbps.lo >= 0 && c.traffic.data_load_mbps.lo <= c.traffic.data_load_mbps.hi,
          "traffic.data_load_*", "need 0 <= min <= max");
    check(c.scenario.n_bss >= 1, "scenario.n_bss", "must be >= 1");
    check(c.scenario.area_width_m > 0 && c.scenario.area_height_m > 0, "scenario.area_*", "must be > 0");
    check(c.scenario.station_distance_m.lo > 0 && c.scenario.station_distance_m.lo <= c.scenario.station_distance_m.hi,
          "scenario.station_distance_*", "need 0 < min <= max");
    check(c.scenario.neighbor_stations.lo >= 0 && c.scenario.neighbor_stations.lo <= c.scenario.neighbor_stations.hi,
          "scenario.neighbor_stations_*", "need 0 <= min <= max");
    check(c.scenario.central_video_stations >= 0 && c.scenario.central_data_stations >= 0, "scenario.central_*",
          "must be >= 0");
    check(c.scenario.max_attempts >= 1, "scenario.max_attempts", "must be >= 1");
    check(c.policy.mlo_fraction >= 0 && c.policy.mlo_fraction <= 1, "policy.mlo_fraction", "must be in [0, 1]");
    check(c.policy.mcab_delta_s > 0, "policy.mcab_delta_s", "must be > 0");
    check(c.sim.horizon_s > 0, "sim.horizon_s", "must be > 0");
    check(c.sim.congestion_resample_s >= 0, "sim.congestion_resample_s", "must be >= 0");
    check(c.experiment.ns_a >= 1 && c.experiment.ns_b >= 1, "experiment.ns_*", "must be >= 1");
    check(c.experiment.n_bss_b >= 1, "experiment.n_bss_b", "must be >= 1");
    check(c.experiment.workers >= 1, "experiment.workers", "must be >= 1");
    check(std::all_of(c.experiment.fractions.begin(), c.experiment.fractions.end(),
                      [](double f) { return f >= 0 && f <= 1; }) &&
              !c.experiment.fractions.empty(),
          "experiment.fractions", "must be a nonempty list within [0, 1]");
    return out;
}

std::string to_text(const RunConfig& config)
{
    std::string out;
    for (const auto& f : fields()) out += f.key + " = " + f.get(config) + "\n";
    return out;
}

std::vector<std::pair<std::string, std::string>> overrides(const RunConfig& config)
{
    const RunConfig defaults;
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& f : fields()) {
        auto value = f.get(config);
        if (value != f.get(defaults)) out.emplace_back(f.key, std::move(value));
    }
    return out;
}

std::string config_hash(const RunConfig& config)
{
    std::array<char, 17> buf{};
    const auto h = fnv1a64(to_text(config));
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + 16, h, 16);
    std::string hex(buf.data(), ptr);
    return std::string(16 - hex.size(), '0') + hex;
}

}  // namespace mlosim
