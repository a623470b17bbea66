#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "uavsim/engine.hpp"
#include "uavsim/error.hpp"

namespace uavsim {

namespace detail {

// Sum in ascending order so the result does not depend on input order.
inline double ordered_sum(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return std::accumulate(v.begin(), v.end(), 0.0);
}

} // namespace detail

// Quantile of sorted data by linear interpolation between closest ranks:
// h = (n - 1) p, q = x[floor h] + (h - floor h) (x[floor h + 1] - x[floor h]).
inline double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw contract_violation("quantile of empty sample");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

struct SampleStats {
    double mean = 0.0;
    double stddev = 0.0; // sample standard deviation (n - 1); 0 for a single value
};

inline SampleStats sample_stats(std::vector<double> values) {
    if (values.empty()) return {};
    const double n = static_cast<double>(values.size());
    const double mean = detail::ordered_sum(values) / n;
    if (values.size() < 2) return {mean, 0.0};
    for (auto& v : values) v = (v - mean) * (v - mean);
    return {mean, std::sqrt(detail::ordered_sum(std::move(values)) / (n - 1.0))};
}

struct DelaySummary {
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0, mean = 0;
    std::size_t count = 0;
};

// Five-number summary and mean of delays pooled across runs; nullopt when no
// event was collected at all.
inline std::optional<DelaySummary> summarize_delays(std::span<const RunResult> results) {
    std::vector<double> d;
    for (const auto& r : results) d.insert(d.end(), r.delays.begin(), r.delays.end());
    if (d.empty()) return std::nullopt;
    std::sort(d.begin(), d.end());
    DelaySummary s;
    s.count = d.size();
    s.min = d.front();
    s.max = d.back();
    s.q1 = quantile_sorted(d, 0.25);
    s.median = quantile_sorted(d, 0.5);
    s.q3 = quantile_sorted(d, 0.75);
    s.mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(d.size());
    return s;
}

// Pointwise mean of cumulative VoI timelines.
inline std::vector<double> mean_voi_curve(std::span<const RunResult> results) {
    if (results.empty()) throw contract_violation("mean_voi_curve: no runs");
    const std::size_t len = results.front().voi_timeline.size();
    for (const auto& r : results) {
        if (r.voi_timeline.size() != len) throw contract_violation("mean_voi_curve: runs differ in length");
    }
    std::vector<double> curve(len);
    std::vector<double> column(results.size());
    for (std::size_t t = 0; t < len; ++t) {
        for (std::size_t i = 0; i < results.size(); ++i) column[i] = results[i].voi_timeline[t];
        curve[t] = detail::ordered_sum(column) / static_cast<double>(results.size());
    }
    // Guard against rounding making the mean dip where every run is flat.
    for (std::size_t t = 1; t < len; ++t) curve[t] = std::max(curve[t], curve[t - 1]);
    return curve;
}

inline SampleStats final_voi_stats(std::span<const RunResult> results) {
    std::vector<double> v;
    for (const auto& r : results) v.push_back(r.final_voi());
    return sample_stats(std::move(v));
}

inline SampleStats encounter_stats(std::span<const RunResult> results) {
    std::vector<double> v;
    for (const auto& r : results) v.push_back(static_cast<double>(r.encounters));
    return sample_stats(std::move(v));
}

struct PolicySummary {
    PolicyKind policy = PolicyKind::mdp;
    SampleStats final_voi;
    std::optional<DelaySummary> delays;
    SampleStats encounters;
};

inline PolicySummary summarize(PolicyKind policy, std::span<const RunResult> results) {
    return {policy, final_voi_stats(results), summarize_delays(results), encounter_stats(results)};
}

enum class SweepAxis { epsilon, grid };

struct SweepRow {
    double value = 0.0;
    double mean_final_voi = 0.0;
    double stddev_final_voi = 0.0;
};

// Applies one swept value to a copy of the config. Grid values are cells per side.
inline SimConfig with_axis_value(SimConfig cfg, SweepAxis axis, double value) {
    switch (axis) {
    case SweepAxis::epsilon:
        cfg.policy.epsilon = value;
        break;
    case SweepAxis::grid: {
        const int side = static_cast<int>(value);
        if (side < 1 || static_cast<double>(side) != value)
            throw config_error("sweep: grid values must be positive integers");
        cfg.grid.rows = side;
        cfg.grid.cols = side;
        break;
    }
    }
    return cfg;
}

inline std::vector<SweepRow> sweep(const SimConfig& cfg, const Dataset& data, SweepAxis axis,
                                   std::span<const double> values, unsigned workers = 1) {
    if (values.empty()) throw config_error("sweep: no values given");
    std::vector<SweepRow> rows;
    for (double v : values) {
        const auto results = run_many(with_axis_value(cfg, axis, v), data, workers);
        const auto stats = final_voi_stats(results);
        rows.push_back({v, stats.mean, stats.stddev});
    }
    return rows;
}

} // namespace uavsim
