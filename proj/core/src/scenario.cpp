#include "mlosim/scenario.hpp"

#include "mlosim/error.hpp"
#include "mlosim/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace mlosim {

double distance(Position a, Position b) noexcept
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

std::size_t Scenario::station_count() const noexcept
{
    std::size_t n = 0;
    for (const auto& bss : bsses) n += bss.stations.size();
    return n;
}

namespace {

bool inside(Position p, double width, double height) noexcept
{
    return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
}

bool layout_ok(const std::vector<Position>& aps, double min_distance) noexcept
{
    for (std::size_t i = 0; i < aps.size(); ++i)
        for (std::size_t j = i + 1; j < aps.size(); ++j)
            if (distance(aps[i], aps[j]) < min_distance) return false;
    return true;
}

}  // namespace

Scenario generate_scenario(const ScenarioParams& params, const RadioParams& radio, const TrafficParams& traffic,
                           std::uint64_t seed)
{
    if (params.n_bss < 1 || params.area_width_m <= 0 || params.area_height_m <= 0)
        throw DomainError("generate_scenario: need n_bss >= 1 and a positive area");

    Rng rng(seed, Stream::Geometry);
    const Position center{params.area_width_m / 2.0, params.area_height_m / 2.0};
    const auto n = static_cast<std::size_t>(params.n_bss);

    std::vector<Position> aps(n, center);
    bool placed = n == 1;
    for (int attempt = 0; !placed && attempt < params.max_attempts; ++attempt) {
        for (std::size_t i = 1; i < n; ++i)
            aps[i] = {rng.uniform(0.0, params.area_width_m), rng.uniform(0.0, params.area_height_m)};
        placed = layout_ok(aps, params.min_ap_distance_m);
    }
    if (!placed)
        throw GenerationError("generate_scenario: no valid AP layout after " + std::to_string(params.max_attempts) +
                              " attempts (density too high for a " + std::to_string(params.min_ap_distance_m) +
                              " m minimum inter-AP distance)");

    Scenario scenario;
    scenario.area_width_m = params.area_width_m;
    scenario.area_height_m = params.area_height_m;
    scenario.seed = seed;
    scenario.bsses.resize(n);

    std::uint32_t next_node = static_cast<std::uint32_t>(n);
    for (std::size_t i = 0; i < n; ++i) {
        Bss& bss = scenario.bsses[i];
        bss.id = static_cast<BssId>(i);
        bss.ap = Node{static_cast<std::uint32_t>(i), NodeKind::AP, aps[i], radio.ap_tx_dbm, radio.noise_figure_db};

        std::vector<TrafficKind> kinds;
        if (i == 0) {
            kinds.assign(static_cast<std::size_t>(params.central_video_stations), TrafficKind::Video);
            kinds.insert(kinds.end(), static_cast<std::size_t>(params.central_data_stations), TrafficKind::Data);
        } else {
            const auto m = rng.uniform_int(params.neighbor_stations.lo, params.neighbor_stations.hi);
            kinds.assign(static_cast<std::size_t>(m), TrafficKind::Data);
        }

        for (const TrafficKind kind : kinds) {
            // Stations falling outside the area are redrawn around the same AP.
            Position pos{};
            bool ok = false;
            for (int attempt = 0; !ok && attempt < params.max_attempts; ++attempt) {
                const double d = rng.uniform(params.station_distance_m.lo, params.station_distance_m.hi);
                const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
                pos = {aps[i].x + d * std::cos(theta), aps[i].y + d * std::sin(theta)};
                ok = inside(pos, params.area_width_m, params.area_height_m);
            }
            if (!ok) throw GenerationError("generate_scenario: cannot place a station inside the area");

            const Range& load = kind == TrafficKind::Video ? traffic.video_load_mbps : traffic.data_load_mbps;
            StationProfile sta;
            sta.node = Node{next_node++, NodeKind::STA, pos, radio.sta_tx_dbm, radio.noise_figure_db};
            sta.traffic_kind = kind;
            sta.load_mbps = rng.uniform(load.lo, load.hi);
            bss.stations.push_back(sta);
        }
    }
    return scenario;
}

int mlo_neighbor_count(std::size_t n_bss, double mlo_fraction) noexcept
{
    if (n_bss <= 1) return 0;
    const double neighbors = static_cast<double>(n_bss - 1);
    return static_cast<int>(std::clamp(std::round(mlo_fraction * neighbors), 0.0, neighbors));
}

Scenario assign_policies(Scenario scenario, Policy central_policy, double mlo_fraction, std::uint64_t seed)
{
    Rng rng(seed, Stream::Policy);
    const std::size_t n = scenario.bsses.size();

    // Every draw below happens regardless of the outcome, so the central policy and
    // the MLO fraction never shift the random choices made for other BSSs.
    std::vector<std::size_t> order(n > 0 ? n - 1 : 0);
    std::iota(order.begin(), order.end(), std::size_t{1});
    for (std::size_t i = order.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i - 1)));
        std::swap(order[i - 1], order[j]);
    }
    std::vector<Policy> coin(n, Policy::SLCI);
    for (std::size_t i = 1; i < n; ++i) coin[i] = rng.bernoulli(0.5) ? Policy::MCAA : Policy::SLCI;
    for (auto& bss : scenario.bsses)
        for (auto& sta : bss.stations) sta.legacy_band_draw = kAllBands[static_cast<std::size_t>(rng.uniform_int(0, 2))];

    std::vector<bool> mlo(n, false);
    const int k = mlo_neighbor_count(n, mlo_fraction);
    for (int i = 0; i < k; ++i) mlo[order[static_cast<std::size_t>(i)]] = true;

    for (std::size_t i = 0; i < n; ++i) {
        Bss& bss = scenario.bsses[i];
        if (i == 0) {
            bss.policy = central_policy;
            bss.capability = central_policy == Policy::LegacySingle ? Capability::MBSL : Capability::MLO;
        } else if (mlo[i]) {
            bss.policy = coin[i];
            bss.capability = Capability::MLO;
        } else {
            bss.policy = Policy::LegacySingle;
            bss.capability = Capability::MBSL;
        }
        for (auto& sta : bss.stations)
            sta.assigned_band = bss.capability == Capability::MBSL ? std::optional<Band>(sta.legacy_band_draw) : std::nullopt;
    }
    return scenario;
}

std::vector<std::string> check_invariants(const Scenario& scenario, const ScenarioParams& params)
{
    std::vector<std::string> out;
    if (scenario.bsses.empty()) {
        out.emplace_back("no BSS");
        return out;
    }
    const Position center{scenario.area_width_m / 2.0, scenario.area_height_m / 2.0};
    if (scenario.bsses[0].ap.position != center) out.emplace_back("BSS 0 is not at the area center");

    for (std::size_t i = 0; i < scenario.bsses.size(); ++i) {
        const Bss& a = scenario.bsses[i];
        if (a.id != i) out.push_back("BSS " + std::to_string(i) + " has id " + std::to_string(a.id));
        if (!inside(a.ap.position, scenario.area_width_m, scenario.area_height_m))
            out.push_back("AP " + std::to_string(i) + " outside the area");
        for (std::size_t j = i + 1; j < scenario.bsses.size(); ++j)
            if (distance(a.ap.position, scenario.bsses[j].ap.position) < params.min_ap_distance_m)
                out.push_back("APs " + std::to_string(i) + " and " + std::to_string(j) + " too close");

        if (a.capability == Capability::MBSL && a.policy != Policy::LegacySingle)
            out.push_back("MB-SL BSS " + std::to_string(i) + " runs an MLO policy");
        if (a.capability == Capability::MLO && a.policy == Policy::LegacySingle)
            out.push_back("MLO BSS " + std::to_string(i) + " runs the legacy policy");
        if (i > 0) {
            const auto m = static_cast<int>(a.stations.size());
            if (m < params.neighbor_stations.lo || m > params.neighbor_stations.hi)
                out.push_back("BSS " + std::to_string(i) + " station count out of range");
        }
        for (const auto& sta : a.stations) {
            const double d = distance(sta.node.position, a.ap.position);
            const std::string tag = "station " + std::to_string(sta.node.id);
            if (d < params.station_distance_m.lo - 1e-9 || d > params.station_distance_m.hi + 1e-9)
                out.push_back(tag + " at " + std::to_string(d) + " m from its AP");
            if (!inside(sta.node.position, scenario.area_width_m, scenario.area_height_m))
                out.push_back(tag + " outside the area");
            if (sta.assigned_band.has_value() != (a.capability == Capability::MBSL))
                out.push_back(tag + " band assignment inconsistent with BSS capability");
        }
    }
    return out;
}

namespace {

using nlohmann::json;

json node_json(const Node& n)
{
    return {{"id", n.id},
            {"kind", n.kind == NodeKind::AP ? "AP" : "STA"},
            {"x", n.position.x},
            {"y", n.position.y},
            {"tx_power_dbm", n.tx_power_dbm},
            {"noise_figure_db", n.noise_figure_db}};
}

Node node_from(const json& j)
{
    Node n;
    n.id = j.at("id").get<std::uint32_t>();
    n.kind = j.at("kind").get<std::string>() == "AP" ? NodeKind::AP : NodeKind::STA;
    n.position = {j.at("x").get<double>(), j.at("y").get<double>()};
    n.tx_power_dbm = j.at("tx_power_dbm").get<double>();
    n.noise_figure_db = j.at("noise_figure_db").get<double>();
    return n;
}

}  // namespace

std::string scenario_to_json(const Scenario& scenario)
{
    json bsses = json::array();
    for (const auto& bss : scenario.bsses) {
        json stations = json::array();
        for (const auto& sta : bss.stations) {
            json s = node_json(sta.node);
            s["traffic"] = to_string(sta.traffic_kind);
            s["load_mbps"] = sta.load_mbps;
            s["assigned_band"] = sta.assigned_band ? json(band_name(*sta.assigned_band)) : json(nullptr);
            s["legacy_band_draw"] = band_name(sta.legacy_band_draw);
            stations.push_back(std::move(s));
        }
        bsses.push_back({{"id", bss.id},
                         {"capability", to_string(bss.capability)},
                         {"policy", to_string(bss.policy)},
                         {"ap", node_json(bss.ap)},
                         {"stations", std::move(stations)}});
    }
    const json doc{{"seed", scenario.seed},
                   {"area", {{"width_m", scenario.area_width_m}, {"height_m", scenario.area_height_m}}},
                   {"bsses", std::move(bsses)}};
    return doc.dump(2);
}

Scenario scenario_from_json(const std::string& text)
{
    try {
        const json doc = json::parse(text);
        Scenario s;
        s.seed = doc.at("seed").get<std::uint64_t>();
        s.area_width_m = doc.at("area").at("width_m").get<double>();
        s.area_height_m = doc.at("area").at("height_m").get<double>();
        for (const auto& jb : doc.at("bsses")) {
            Bss bss;
            bss.id = jb.at("id").get<BssId>();
            bss.capability = jb.at("capability").get<std::string>() == "MBSL" ? Capability::MBSL : Capability::MLO;
            const auto policy = parse_policy(jb.at("policy").get<std::string>());
            if (!policy) throw InvalidScenarioError("unknown policy in scenario JSON");
            bss.policy = *policy;
            bss.ap = node_from(jb.at("ap"));
            for (const auto& js : jb.at("stations")) {
                StationProfile sta;
                sta.node = node_from(js);
                sta.traffic_kind = js.at("traffic").get<std::string>() == "video" ? TrafficKind::Video : TrafficKind::Data;
                sta.load_mbps = js.at("load_mbps").get<double>();
                if (!js.at("assigned_band").is_null())
                    sta.assigned_band = parse_band(js.at("assigned_band").get<std::string>());
                if (const auto draw = parse_band(js.at("legacy_band_draw").get<std::string>())) sta.legacy_band_draw = *draw;
                bss.stations.push_back(sta);
            }
            s.bsses.push_back(std::move(bss));
        }
        return s;
    } catch (const json::exception& e) {
        throw InvalidScenarioError(std::string("malformed scenario JSON: ") + e.what());
    }
}

}  // namespace mlosim
