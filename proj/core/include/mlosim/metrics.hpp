#pragma once

#include "mlosim/config.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace mlosim {

struct CdfPoint {
    double value = 0.0;
    double cum_prob = 0.0;
    friend bool operator==(const CdfPoint&, const CdfPoint&) = default;
};

/// Empirical CDF: one point per distinct value, ascending. Throws DomainError on empty input.
std::vector<CdfPoint> build_cdf(std::span<const double> values);

/// Empirical CDF evaluated at x.
double cdf_at(std::span<const CdfPoint> cdf, double x) noexcept;

/// Nearest-rank quantile, p in [0, 100]. Throws DomainError on empty input.
double quantile(std::span<const double> values, double p, QuantileRule rule = QuantileRule::NearestRankUpper);

/// Share of values >= threshold.
double fraction_at_threshold(std::span<const double> values, double threshold);

inline constexpr std::array<double, 4> kSummaryPercentiles{5.0, 25.0, 50.0, 95.0};

struct BatchSummary {
    std::string label;
    std::vector<double> values;
    std::vector<CdfPoint> cdf;
    std::map<double, double> percentiles;
    double threshold = 0.95;
    double fraction_at_threshold = 0.0;
    double mean = 0.0;
    QuantileRule rule = QuantileRule::NearestRankUpper;
};

BatchSummary summarize(std::string label, std::vector<double> values, const MetricsParams& params = {});

/// (q_a(p) - q_b(p)) / q_b(p). Throws UndefinedGainError when q_b(p) is zero.
double percentile_gain(const BatchSummary& a, const BatchSummary& b, double p);

}  // namespace mlosim
