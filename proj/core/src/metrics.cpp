#include "mlosim/metrics.hpp"

#include "mlosim/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mlosim {

std::vector<CdfPoint> build_cdf(std::span<const double> values)
{
    if (values.empty()) throw DomainError("build_cdf: empty input");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    std::vector<CdfPoint> cdf;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
        cdf.push_back({sorted[i], static_cast<double>(i + 1) / n});
    }
    return cdf;
}

double cdf_at(std::span<const CdfPoint> cdf, double x) noexcept
{
    double p = 0.0;
    for (const auto& pt : cdf) {
        if (pt.value > x) break;
        p = pt.cum_prob;
    }
    return p;
}

double quantile(std::span<const double> values, double p, QuantileRule rule)
{
    if (values.empty()) throw DomainError("quantile: empty input");
    if (!(p >= 0.0 && p <= 100.0)) throw DomainError("quantile: percentile outside [0, 100]");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    // Rounded rank guards against p * n landing a hair off an integer.
    const double rank = std::round(p * static_cast<double>(n) * 1e9 / 100.0) / 1e9;
    std::size_t idx = 0;
    if (rule == QuantileRule::NearestRankUpper) {
        idx = static_cast<std::size_t>(std::floor(rank));
    } else {
        const auto r = static_cast<std::size_t>(std::ceil(rank));
        idx = r == 0 ? 0 : r - 1;
    }
    return sorted[std::min(idx, n - 1)];
}

double fraction_at_threshold(std::span<const double> values, double threshold)
{
    if (values.empty()) return 0.0;
    const auto k = std::count_if(values.begin(), values.end(), [threshold](double v) { return v >= threshold; });
    return static_cast<double>(k) / static_cast<double>(values.size());
}

BatchSummary summarize(std::string label, std::vector<double> values, const MetricsParams& params)
{
    BatchSummary s;
    s.label = std::move(label);
    s.cdf = build_cdf(values);
    for (const double p : kSummaryPercentiles) s.percentiles[p] = quantile(values, p, params.quantile);
    s.threshold = params.satisfaction_threshold;
    s.fraction_at_threshold = fraction_at_threshold(values, params.satisfaction_threshold);
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    s.rule = params.quantile;
    s.values = std::move(values);
    return s;
}

double percentile_gain(const BatchSummary& a, const BatchSummary& b, double p)
{
    if (a.values.empty() || b.values.empty()) throw DomainError("percentile_gain: empty batch");
    const double qa = quantile(a.values, p, a.rule);
    const double qb = quantile(b.values, p, b.rule);
    if (qb == 0.0) throw UndefinedGainError("percentile_gain: reference quantile is zero");
    return (qa - qb) / qb;
}

}  // namespace mlosim
