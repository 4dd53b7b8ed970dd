#include "mlosim/export.hpp"

#include "mlosim/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace mlosim {

namespace {

using nlohmann::json;

void write_file(const std::filesystem::path& path, const std::string& body)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << body;
}

json meta_json(const RunConfig& config, std::uint64_t seed)
{
    json over = json::object();
    for (const auto& [key, value] : overrides(config)) over[key] = value;
    return {{"tool", "mlosim"},
            {"tool_version", std::string(kToolVersion)},
            {"config_hash", config_hash(config)},
            {"seed", seed},
            {"overrides", std::move(over)}};
}

json weights_json(const Weights& w)
{
    return {w[0], w[1], w[2]};
}

std::string band_key(Band b)
{
    return std::string(band_name(b));
}

}  // namespace

std::string provenance_line(const RunConfig& config, std::uint64_t seed)
{
    return "# mlosim " + std::string(kToolVersion) + " config_hash=" + config_hash(config) + " seed=" + std::to_string(seed) + "\n";
}

std::string flows_csv(const RunConfig& config, const SimResult& result)
{
    std::ostringstream out;
    out << provenance_line(config, result.seed);
    out << "flow_id,bss,sta,kind,load_mbps,t_start,t_end,required_airtime,allocated_airtime,satisfaction,w_2g4,w_5g,w_6g\n";
    for (const auto& f : result.flows) {
        out << f.id << ',' << f.bss << ',' << f.sta << ',' << to_string(f.kind) << ',' << format_double(f.load_mbps) << ','
            << format_double(f.t_start) << ',' << format_double(f.t_end) << ',' << format_double(f.required_airtime) << ','
            << format_double(f.allocated_airtime) << ',' << format_double(f.satisfaction) << ','
            << format_double(f.weights[0]) << ',' << format_double(f.weights[1]) << ',' << format_double(f.weights[2])
            << '\n';
    }
    return out.str();
}

std::string congestion_csv(const RunConfig& config, const SimResult& result)
{
    std::ostringstream out;
    out << provenance_line(config, result.seed);
    out << "ap,band,time,occupancy\n";
    for (std::size_t ap = 0; ap < result.congestion.size(); ++ap) {
        for (const Band b : kAllBands) {
            const auto& raw = result.congestion[ap][index(b)];
            const auto series = config.sim.congestion_resample_s > 0.0
                                    ? resample(raw, config.sim.congestion_resample_s, result.horizon_s)
                                    : raw;
            for (const auto& s : series)
                out << ap << ',' << band_name(b) << ',' << format_double(s.time) << ',' << format_double(s.occupancy) << '\n';
        }
    }
    return out.str();
}

std::string result_json(const RunConfig& config, const SingleRun& run)
{
    const SimResult& r = run.result;
    json flows = json::array();
    for (const auto& f : r.flows) {
        flows.push_back({{"id", f.id},
                         {"bss", f.bss},
                         {"sta", f.sta},
                         {"kind", to_string(f.kind)},
                         {"load_mbps", f.load_mbps},
                         {"t_start", f.t_start},
                         {"t_end", f.t_end},
                         {"required_airtime", f.required_airtime},
                         {"allocated_airtime", f.allocated_airtime},
                         {"satisfaction", f.satisfaction},
                         {"weights", weights_json(f.weights)},
                         {"reallocations", f.reallocations}});
    }
    json bss = json::array();
    for (std::size_t a = 0; a < run.scenario.bsses.size(); ++a) {
        json occ = json::object();
        for (const Band b : kAllBands) occ[band_key(b)] = r.mean_occupancy[a][index(b)];
        bss.push_back({{"id", a},
                       {"policy", to_string(run.scenario.bsses[a].policy)},
                       {"capability", to_string(run.scenario.bsses[a].capability)},
                       {"avg_satisfaction", r.bss_avg_satisfaction[a]},
                       {"mean_occupancy", std::move(occ)}});
    }
    json congestion = json::array();
    for (std::size_t a = 0; a < r.congestion.size(); ++a) {
        for (const Band b : kAllBands) {
            json samples = json::array();
            for (const auto& s : r.congestion[a][index(b)]) samples.push_back({s.time, s.occupancy});
            congestion.push_back({{"ap", a}, {"band", band_key(b)}, {"samples", std::move(samples)}});
        }
    }
    const json doc{{"meta", meta_json(config, r.seed)},
                   {"horizon_s", r.horizon_s},
                   {"integrated_time_s", r.integrated_time_s},
                   {"schedule_hash", schedule_hash(run.schedule)},
                   {"events",
                    {{"arrivals", r.counts.arrivals},
                     {"departures", r.counts.departures},
                     {"mcab_ticks", r.counts.mcab_ticks},
                     {"mcab_reallocations", r.counts.mcab_reallocations}}},
                   {"bss", std::move(bss)},
                   {"flows", std::move(flows)},
                   {"congestion", std::move(congestion)}};
    return doc.dump(2) + "\n";
}

void write_run_outputs(const std::filesystem::path& dir, const RunConfig& config, std::uint64_t seed, const SingleRun& run)
{
    std::filesystem::create_directories(dir);
    write_file(dir / "flows.csv", flows_csv(config, run.result));
    write_file(dir / "congestion.csv", congestion_csv(config, run.result));
    write_file(dir / "result.json", result_json(config, run));
    json scenario = json::parse(scenario_to_json(run.scenario));
    scenario["meta"] = meta_json(config, seed);
    write_file(dir / "scenario.json", scenario.dump(2) + "\n");
    write_file(dir / "schedule.csv", provenance_line(config, seed) + schedule_to_csv(run.schedule));
}

namespace {

std::string percentile_header()
{
    std::string h;
    for (const double p : kSummaryPercentiles) h += ",p" + format_double(p);
    return h;
}

std::string percentile_cells(const BatchSummary& s)
{
    std::string out;
    for (const double p : kSummaryPercentiles) out += "," + format_double(s.percentiles.at(p));
    return out;
}

}  // namespace

void write_experiment_a(const std::filesystem::path& dir, const RunConfig& config, std::uint64_t base_seed,
                        const ExperimentAResult& result)
{
    std::filesystem::create_directories(dir);
    const auto header = provenance_line(config, base_seed);

    std::ostringstream summary;
    summary << header << "policy,scenario_id,seed,s_bar,schedule_hash\n";
    for (const auto& r : result.rows)
        summary << to_string(r.policy) << ',' << r.scenario << ',' << r.seed << ',' << format_double(r.s_bar) << ','
                << r.schedule_hash << '\n';
    write_file(dir / "summary.csv", summary.str());

    std::ostringstream cdf;
    cdf << header << "policy,value,cum_prob\n";
    for (const auto& [policy, s] : result.summaries)
        for (const auto& pt : s.cdf) cdf << s.label << ',' << format_double(pt.value) << ',' << format_double(pt.cum_prob) << '\n';
    write_file(dir / "cdf.csv", cdf.str());

    std::ostringstream pct;
    pct << header << "policy,n,mean" << percentile_header() << ",threshold,fraction_at_threshold\n";
    for (const auto& [policy, s] : result.summaries)
        pct << s.label << ',' << s.values.size() << ',' << format_double(s.mean) << percentile_cells(s) << ','
            << format_double(s.threshold) << ',' << format_double(s.fraction_at_threshold) << '\n';
    write_file(dir / "percentiles.csv", pct.str());
}

void write_experiment_b(const std::filesystem::path& dir, const RunConfig& config, std::uint64_t base_seed,
                        const ExperimentBResult& result)
{
    std::filesystem::create_directories(dir);
    const auto header = provenance_line(config, base_seed);

    std::ostringstream summary;
    summary << header << "mode,mlo_fraction,scenario_id,seed,s_bar\n";
    for (const auto& r : result.rows)
        summary << to_string(r.mode) << ',' << format_double(r.fraction) << ',' << r.scenario << ',' << r.seed << ','
                << format_double(r.s_bar) << '\n';
    write_file(dir / "summary.csv", summary.str());

    std::ostringstream cdf;
    cdf << header << "mode,mlo_fraction,value,cum_prob\n";
    for (const auto& [key, s] : result.summaries)
        for (const auto& pt : s.cdf)
            cdf << to_string(key.first) << ',' << format_double(key.second) << ',' << format_double(pt.value) << ','
                << format_double(pt.cum_prob) << '\n';
    write_file(dir / "cdf.csv", cdf.str());

    std::ostringstream pct;
    pct << header << "mode,mlo_fraction,n,mean" << percentile_header() << ",threshold,fraction_at_threshold\n";
    for (const auto& [key, s] : result.summaries)
        pct << to_string(key.first) << ',' << format_double(key.second) << ',' << s.values.size() << ','
            << format_double(s.mean) << percentile_cells(s) << ',' << format_double(s.threshold) << ','
            << format_double(s.fraction_at_threshold) << '\n';
    write_file(dir / "percentiles.csv", pct.str());

    std::ostringstream sweep;
    sweep << header << "mode";
    for (const double f : result.fractions) sweep << ",median@" << format_double(f);
    sweep << ",non_decreasing,total_change\n";
    for (const auto& check : sweep_report(result)) {
        sweep << to_string(check.mode);
        for (const double m : check.medians) sweep << ',' << format_double(m);
        sweep << ',' << (check.non_decreasing ? "true" : "false") << ',' << format_double(check.total_change) << '\n';
    }
    write_file(dir / "sweep.csv", sweep.str());
}

std::vector<PerBand<std::vector<OccupancySample>>> parse_congestion_csv(const std::string& text)
{
    std::vector<PerBand<std::vector<OccupancySample>>> out;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        std::string ap, band, time, occ;
        std::getline(row, ap, ',');
        std::getline(row, band, ',');
        std::getline(row, time, ',');
        std::getline(row, occ, ',');
        const auto b = parse_band(band);
        if (!b) throw Error("congestion.csv: bad band '" + band + "'");
        const auto a = static_cast<std::size_t>(std::stoul(ap));
        if (out.size() <= a) out.resize(a + 1);
        out[a][index(*b)].push_back({std::stod(time), std::stod(occ)});
    }
    return out;
}

}  // namespace mlosim
