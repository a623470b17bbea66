#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "uavsim/metrics.hpp"

using namespace uavsim;

namespace {

RunResult with_delays(std::vector<int> d) {
    RunResult r;
    r.delays = std::move(d);
    return r;
}

RunResult with_timeline(std::vector<double> t, std::size_t encounters = 0) {
    RunResult r;
    r.voi_timeline = std::move(t);
    r.encounters = encounters;
    return r;
}

TEST(Quantile, LinearBetweenClosestRanks) {
    const std::vector<double> x{1, 2, 3, 4};
    EXPECT_EQ(quantile_sorted(x, 0.0), 1.0);
    EXPECT_EQ(quantile_sorted(x, 1.0), 4.0);
    EXPECT_EQ(quantile_sorted(x, 0.5), 2.5);
    EXPECT_EQ(quantile_sorted(x, 0.25), 1.75);
    EXPECT_THROW(quantile_sorted(std::vector<double>{}, 0.5), contract_violation);
}

TEST(SummarizeDelays, OneToFive) {
    const std::vector<RunResult> rs{with_delays({4, 1, 5}), with_delays({3, 2})};
    const auto s = summarize_delays(rs);
    ASSERT_TRUE(s);
    EXPECT_EQ(s->min, 1);
    EXPECT_EQ(s->q1, 2);
    EXPECT_EQ(s->median, 3);
    EXPECT_EQ(s->q3, 4);
    EXPECT_EQ(s->max, 5);
    EXPECT_EQ(s->mean, 3);
    EXPECT_EQ(s->count, 5u);
}

TEST(SummarizeDelays, SingleZero) {
    const std::vector<RunResult> rs{with_delays({0})};
    const auto s = summarize_delays(rs);
    ASSERT_TRUE(s);
    EXPECT_EQ(s->min, 0);
    EXPECT_EQ(s->q1, 0);
    EXPECT_EQ(s->median, 0);
    EXPECT_EQ(s->q3, 0);
    EXPECT_EQ(s->max, 0);
    EXPECT_EQ(s->mean, 0);
}

TEST(SummarizeDelays, NothingCollected) {
    const std::vector<RunResult> rs{with_delays({}), with_delays({})};
    EXPECT_FALSE(summarize_delays(rs));
}

TEST(SummarizeDelays, OrderingAndPermutationInvariance) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<RunResult> rs;
        std::uniform_int_distribution<int> runs(1, 6), len(0, 40), d(0, 500);
        const int n = runs(rng);
        for (int i = 0; i < n; ++i) {
            std::vector<int> v(static_cast<std::size_t>(len(rng)));
            for (auto& x : v) x = d(rng);
            rs.push_back(with_delays(v));
            rs.back().voi_timeline = {0.0, static_cast<double>(d(rng))};
            rs.back().encounters = static_cast<std::size_t>(d(rng));
        }
        const auto s = summarize_delays(rs);
        if (s) {
            EXPECT_LE(s->min, s->q1);
            EXPECT_LE(s->q1, s->median);
            EXPECT_LE(s->median, s->q3);
            EXPECT_LE(s->q3, s->max);
        }
        auto shuffled = rs;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const auto a = summarize(PolicyKind::mdp, rs);
        const auto b = summarize(PolicyKind::mdp, shuffled);
        EXPECT_EQ(a.final_voi.mean, b.final_voi.mean);
        EXPECT_EQ(a.final_voi.stddev, b.final_voi.stddev);
        EXPECT_EQ(a.encounters.mean, b.encounters.mean);
        EXPECT_EQ(a.encounters.stddev, b.encounters.stddev);
        ASSERT_EQ(a.delays.has_value(), b.delays.has_value());
        if (a.delays) {
            EXPECT_EQ(a.delays->median, b.delays->median);
            EXPECT_EQ(a.delays->q1, b.delays->q1);
            EXPECT_EQ(a.delays->q3, b.delays->q3);
            EXPECT_EQ(a.delays->mean, b.delays->mean);
        }
        EXPECT_EQ(mean_voi_curve(rs), mean_voi_curve(shuffled));
    }
}

TEST(SampleStats, SampleStandardDeviation) {
    const auto s = sample_stats({2, 4, 4, 4, 5, 5, 7, 9});
    EXPECT_DOUBLE_EQ(s.mean, 5.0);
    EXPECT_DOUBLE_EQ(s.stddev, std::sqrt(32.0 / 7.0));
    EXPECT_EQ(sample_stats({3}).stddev, 0.0);
    EXPECT_EQ(sample_stats({}).mean, 0.0);
}

TEST(MeanVoiCurve, SingleRun) {
    const std::vector<RunResult> rs{with_timeline({0, 1, 1, 2.5})};
    EXPECT_EQ(mean_voi_curve(rs), (std::vector<double>{0, 1, 1, 2.5}));
}

TEST(MeanVoiCurve, Idempotent) {
    const std::vector<double> t{0, 0.1, 0.7, 0.7, 3.3};
    const std::vector<RunResult> rs{with_timeline(t), with_timeline(t)};
    EXPECT_EQ(mean_voi_curve(rs), t);
}

TEST(MeanVoiCurve, PointwiseMeanStaysMonotone) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> inc(0, 1);
    std::vector<RunResult> rs;
    for (int i = 0; i < 7; ++i) {
        std::vector<double> t{0};
        for (int k = 0; k < 300; ++k) t.push_back(t.back() + (rng() % 3 == 0 ? inc(rng) : 0.0));
        rs.push_back(with_timeline(t));
    }
    const auto c = mean_voi_curve(rs);
    for (std::size_t k = 1; k < c.size(); ++k) EXPECT_LE(c[k - 1], c[k]);
    double last = 0;
    for (const auto& r : rs) last += r.voi_timeline.back();
    EXPECT_NEAR(c.back(), last / 7, 1e-12);
}

TEST(MeanVoiCurve, Errors) {
    EXPECT_THROW(mean_voi_curve(std::vector<RunResult>{}), contract_violation);
    const std::vector<RunResult> rs{with_timeline({0, 1}), with_timeline({0, 1, 2})};
    EXPECT_THROW(mean_voi_curve(rs), contract_violation);
}

TEST(Sweep, SingleValueMatchesRunMany) {
    SimConfig cfg;
    cfg.total_rounds = 300;
    cfg.n_runs = 3;
    HotspotTraceParams p;
    p.hotspots = default_hotspots(2, 10000, 10000);
    p.total_rounds = cfg.total_rounds;
    const Dataset data{p};
    const std::vector<double> values{0.4};
    const auto rows = sweep(cfg, data, SweepAxis::epsilon, values);
    ASSERT_EQ(rows.size(), 1u);
    cfg.policy.epsilon = 0.4;
    const auto stats = final_voi_stats(run_many(cfg, data));
    EXPECT_EQ(rows[0].value, 0.4);
    EXPECT_EQ(rows[0].mean_final_voi, stats.mean);
    EXPECT_EQ(rows[0].stddev_final_voi, stats.stddev);
}

TEST(Sweep, GridAxis) {
    SimConfig cfg;
    EXPECT_EQ(with_axis_value(cfg, SweepAxis::grid, 6).grid.rows, 6);
    EXPECT_EQ(with_axis_value(cfg, SweepAxis::grid, 6).grid.cols, 6);
    EXPECT_THROW(with_axis_value(cfg, SweepAxis::grid, 2.5), config_error);
    EXPECT_THROW(with_axis_value(cfg, SweepAxis::grid, 0), config_error);
    EXPECT_THROW(sweep(cfg, Dataset{}, SweepAxis::grid, std::vector<double>{}), config_error);
}

} // namespace
